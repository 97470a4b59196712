#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "ppvac/ensemble.hpp"
#include "ppvac/errors.hpp"

using namespace ppvac;

namespace {

const Cylinder kSpot{70e-6, 6e-6};

PumpProbeSetup collinear_775()
{
    auto s = fixtures::desk_setup();
    s.pump.omega_0 = 2.4305181513662623;
    s.probe.omega_0 = s.pump.omega_0;
    s.vacuum = make_vacuum_params(s.probe, 400.0);
    return s;
}

// <exp(i q . r)> for r uniform in the cylinder.
std::complex<double> characteristic(const Vec3& q, const Cylinder& g)
{
    const double qt = std::hypot(q[0], q[1]) * 0.5 * g.diameter;
    const double radial = qt == 0.0 ? 1.0 : 2.0 * std::cyl_bessel_j(1.0, qt) / qt;
    const double h = 0.5 * q[2] * g.length;
    const double axial = h == 0.0 ? 1.0 : std::sin(h) / h;
    return radial * axial * std::polar(1.0, h);
}

}  // namespace

TEST_CASE("cylinder geometry")
{
    CHECK(kSpot.area() == doctest::Approx(M_PI * 35e-6 * 35e-6));
    CHECK(kSpot.volume() == doctest::Approx(kSpot.area() * 6e-6));
    CHECK(kSpot.contains({0.0, 0.0, 0.0}));
    CHECK_FALSE(kSpot.contains({36e-6, 0.0, 1e-6}));
    CHECK_FALSE(kSpot.contains({0.0, 0.0, -1e-6}));
    CHECK_THROWS_AS((Cylinder{0.0, 1.0}.validate()), PreconditionError);
}

TEST_CASE("sampling is deterministic and worker independent")
{
    const auto a = sample_positions(10000, kSpot, 42, 1);
    const auto b = sample_positions(10000, kSpot, 42, 4);
    const auto c = sample_positions(10000, kSpot, 43, 1);
    CHECK(a == b);
    CHECK(a != c);
    for (const auto& r : a) REQUIRE(kSpot.contains(r));

    const Vec3 kp = wavevector(fixtures::desk_pulse(1.0));
    PulseSpec crossed = fixtures::desk_pulse(1.0);
    crossed.direction = direction_at_angle(0.2);
    const Vec3 kq = wavevector(crossed);
    const auto stored = phase_sum(a, kp, kq, 3);
    const auto streamed = sampled_phase_sum(10000, kSpot, kp, kq, 42, 2);
    CHECK(stored.x == streamed.x);
    CHECK_FALSE(streamed.analytic);
}

TEST_CASE("positions are uniform: centroid and radial moments")
{
    const std::size_t n = 200000;
    const auto pos = sample_positions(n, kSpot, 7, 2);
    double mx = 0.0, my = 0.0, mz = 0.0, r2 = 0.0;
    for (const auto& r : pos) {
        mx += r[0];
        my += r[1];
        mz += r[2];
        r2 += r[0] * r[0] + r[1] * r[1];
    }
    mx /= n, my /= n, mz /= n, r2 /= n;
    const double radius = 0.5 * kSpot.diameter;
    const double sx = radius / 2.0 / std::sqrt(double(n));
    const double sz = kSpot.length / std::sqrt(12.0 * n);
    CHECK(std::abs(mx) < 5.0 * sx);
    CHECK(std::abs(my) < 5.0 * sx);
    CHECK(std::abs(mz - 0.5 * kSpot.length) < 5.0 * sz);
    CHECK(r2 == doctest::Approx(0.5 * radius * radius).epsilon(0.01));
}

TEST_CASE("collinear identical beams add coherently")
{
    const Vec3 k = wavevector(fixtures::desk_pulse(1.0));
    for (std::size_t n : {1u, 10u, 5000u}) {
        const auto ps = sampled_phase_sum(n, kSpot, k, k, 1);
        CHECK(ps.x_squared == double(n) * double(n));
    }
    const auto big = sampled_phase_sum(2'000'000, kSpot, k, k, 1);
    CHECK(big.x_squared == 4e12);
}

TEST_CASE("crossed beams: sample mean of |X|^2 matches its expectation")
{
    PulseSpec probe = fixtures::desk_pulse(1.0);
    probe.direction = direction_at_angle(0.2);
    const Vec3 kp = wavevector(fixtures::desk_pulse(1.0));
    const Vec3 kq = wavevector(probe);
    const Vec3 dk{kp[0] - kq[0], kp[1] - kq[1], kp[2] - kq[2]};
    const std::size_t n = 1000;
    const double phi2 = std::norm(characteristic(dk, kSpot));
    const double expect = n + double(n) * (n - 1) * phi2;

    const int seeds = 400;
    std::vector<double> x2(seeds);
    for (int s = 0; s < seeds; ++s) x2[s] = sampled_phase_sum(n, kSpot, kp, kq, 1000 + s).x_squared;
    const double mean = std::accumulate(x2.begin(), x2.end(), 0.0) / seeds;
    double var = 0.0;
    for (double v : x2) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (seeds - 1) / seeds);
    CHECK(std::abs(mean - expect) < 4.0 * se);

    const auto huge = sampled_phase_sum(3'000'000, kSpot, kp, kq, 1);
    CHECK(huge.analytic);
    CHECK(huge.x_squared == 3e6);
}

TEST_CASE("EnsembleSpec validation")
{
    EnsembleSpec spec;
    spec.n_mol = 2;
    spec.geometry = kSpot;
    spec.positions = {{0.0, 0.0, 1e-6}, {1e-6, 0.0, 2e-6}};
    spec.k_pump = {0.0, 0.0, 1e7};
    spec.k_probe = {1e6, 0.0, 1e7};
    CHECK_NOTHROW(phase_sum(spec));
    spec.positions[1][2] = 1.0;
    CHECK_THROWS_AS(phase_sum(spec), PreconditionError);
    spec.positions.pop_back();
    CHECK_THROWS_AS(phase_sum(spec), PreconditionError);
}

TEST_CASE("superradiance ratio scaling and crossover")
{
    const auto setup = collinear_775();
    const double r1 = superradiance_ratio(setup, 1.0, 1.0);
    CHECK(r1 > 0.0);
    // Collinear: |X|^2 = N^2 so the ratio grows linearly with N.
    double prev = 0.0;
    for (double n : {1.0, 10.0, 1e3, 1e6}) {
        const double r = superradiance_ratio(setup, n, n * n);
        CHECK(r == doctest::Approx(n * r1).epsilon(1e-12));
        CHECK(r > prev);
        prev = r;
    }
    // Crossed, incoherent: |X|^2 = N gives an N-independent ratio.
    CHECK(superradiance_ratio(setup, 1e4, 1e4) == doctest::Approx(r1).epsilon(1e-12));

    const double nc = collinear_crossover(setup);
    CHECK(superradiance_ratio(setup, nc, nc * nc) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(superradiance_ratio(setup, 0.5, 1.0), PreconditionError);
    auto degenerate = setup;
    auto d = fixtures::desk_dimer();
    d.omega_b = d.omega_a;
    d.coupling_j = 0.001;
    degenerate.basis = diagonalize_dimer(d);
    CHECK_THROWS_AS(superradiance_ratio(degenerate, 10.0, 100.0), UnsupportedRegimeError);
    auto dark = setup;
    d = fixtures::desk_dimer();
    d.mu_ag = d.mu_bg = 0.0;
    dark.basis = diagonalize_dimer(d);
    CHECK_THROWS_AS(superradiance_ratio(dark, 10.0, 100.0), DomainError);
}

TEST_CASE("beat visibility")
{
    const double period = 100.0;
    std::vector<double> T, s;
    for (int i = 0; i <= 400; ++i) {
        T.push_back(i * 1.0);
        s.push_back(2.0 + 0.5 * std::cos(2.0 * M_PI * i / period));
    }
    CHECK(beat_visibility(T, s, period) == doctest::Approx(0.25).epsilon(1e-9));
    std::vector<double> flat(T.size(), -3.0);
    CHECK(beat_visibility(T, flat, period) == 0.0);
    CHECK_THROWS_AS(beat_visibility(std::span(T).first(200), std::span(s).first(200), period), PreconditionError);
    std::vector<double> odd(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) odd[i] = std::cos(2.0 * M_PI * T[i] / period);
    CHECK_THROWS_AS(beat_visibility(T, odd, period), DomainError);
}

TEST_CASE("vacuum term washes out the beat as the ensemble grows")
{
    const auto setup = collinear_775();
    const double period = beat_period(setup.basis);
    std::vector<double> T;
    for (int i = 0; i <= 256; ++i) T.push_back(150.0 + 4.0 * period * i / 256.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double n : {1.0, 1e3, 1e5, 1e7}) {
        const auto with = ensemble_total_sweep(setup, T, n, n * n, true);
        const auto without = ensemble_total_sweep(setup, T, n, n * n, false);
        const double v = beat_visibility(T, with, period);
        const double v0 = beat_visibility(T, without, period);
        CHECK(v0 > 0.0);
        CHECK(v <= v0 * (1.0 + 1e-12));
        CHECK(v <= prev * (1.0 + 1e-12));
        prev = v;
    }
}

TEST_CASE("uncoupled dimer has no beat to see")
{
    auto d = fixtures::desk_dimer();
    d.coupling_j = 0.0;
    auto setup = collinear_775();
    setup.basis = diagonalize_dimer(d);
    const double period = beat_period(setup.basis);
    std::vector<double> T;
    for (int i = 0; i <= 200; ++i) T.push_back(150.0 + 4.0 * period * i / 200.0);
    const auto sig = ensemble_total_sweep(setup, T, 100.0, 1e4, true);
    CHECK(beat_visibility(T, sig, period) < 1e-10);
}
