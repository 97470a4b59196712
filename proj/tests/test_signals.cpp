#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "ppvac/errors.hpp"
#include "ppvac/signals.hpp"

using namespace ppvac;

namespace {

// Reference values from an independent numpy evaluation of the desk setup at T = 150 fs.
constexpr double kRefEsa = 0.12219462290459936;
constexpr double kRefSe = -0.23488781669885428;
constexpr double kRefVac = -1.7370937438341357e-06;
constexpr double kRefGsb = -0.33182999698278137;

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("desk setup reproduces frozen reference values")
{
    const auto s = s_total_single(fixtures::desk_setup(), 150.0);
    CHECK(rel_close(s.s_esa, kRefEsa, 1e-12));
    CHECK(rel_close(s.s_se_classical, kRefSe, 1e-12));
    CHECK(rel_close(s.s_se_vacuum, kRefVac, 1e-12));
    CHECK(rel_close(s.s_gsb, kRefGsb, 1e-12));
    CHECK(s.s_total == doctest::Approx(s.s_esa + s.s_se_classical + s.s_se_vacuum + s.s_gsb));
}

TEST_CASE("delta window boundaries")
{
    const double gamma = 400.0;
    const double edge = M_PI / (2.0 * gamma);
    CHECK(delta_window(2.4 + edge * 0.999, 2.4, gamma) == 1);
    CHECK(delta_window(2.4 + edge * 1.001, 2.4, gamma) == 0);
    CHECK(delta_window(2.4, 2.4 + edge * 0.5, gamma) == 1);
    CHECK_THROWS_AS(delta_window(2.4, 2.4, 0.0), PreconditionError);
}

TEST_CASE("overlapping pulses are rejected")
{
    const auto setup = fixtures::desk_setup();
    const double min_t = min_waiting_time(setup.pump, setup.probe);
    CHECK(min_t == doctest::Approx(100.0));
    CHECK_NOTHROW(s_total_single(setup, min_t));
    CHECK_THROWS_AS(s_total_single(setup, 0.99 * min_t), PreconditionError);
    const auto c = compute_couplings(setup);
    CHECK_THROWS_AS(ensemble_signal_rows(c, setup.basis, 50.0, 1.0, 1.0), PreconditionError);
}

TEST_CASE("photon-number scaling")
{
    const auto base = fixtures::desk_setup();
    auto scaled = base;
    scaled.pump.photon_number *= 3.0;
    scaled.probe.photon_number *= 5.0;
    scaled.vacuum = make_vacuum_params(scaled.probe, base.vacuum.gamma);
    const auto a = s_total_single(base, 180.0);
    const auto b = s_total_single(scaled, 180.0);
    CHECK(b.s_esa == doctest::Approx(15.0 * a.s_esa).epsilon(1e-12));
    CHECK(b.s_se_classical == doctest::Approx(15.0 * a.s_se_classical).epsilon(1e-12));
    CHECK(b.s_gsb == doctest::Approx(15.0 * a.s_gsb).epsilon(1e-12));
    // The vacuum term is linear in the pump and blind to the probe intensity.
    CHECK(b.s_se_vacuum == doctest::Approx(3.0 * a.s_se_vacuum).epsilon(1e-12));
}

TEST_CASE("vacuum term grows linearly with the lifetime outside the window")
{
    auto setup = fixtures::desk_setup();
    const auto a = s_total_single(setup, 150.0);
    setup.vacuum = make_vacuum_params(setup.probe, 800.0);
    const auto b = s_total_single(setup, 150.0);
    REQUIRE(compute_couplings(setup).delta_window == 0);
    CHECK(b.s_se_vacuum == doctest::Approx(2.0 * a.s_se_vacuum).epsilon(1e-12));
    CHECK(b.s_esa == a.s_esa);
}

TEST_CASE("dipole scaling is quartic")
{
    auto d = fixtures::desk_dimer();
    const auto a = s_total_single(fixtures::desk_setup(d), 220.0);
    d.mu_ag *= 1.5;
    d.mu_bg *= 1.5;
    const auto b = s_total_single(fixtures::desk_setup(d), 220.0);
    const double f = std::pow(1.5, 4);
    CHECK(b.s_esa == doctest::Approx(f * a.s_esa).epsilon(1e-12));
    CHECK(b.s_se_classical == doctest::Approx(f * a.s_se_classical).epsilon(1e-12));
    CHECK(b.s_se_vacuum == doctest::Approx(f * a.s_se_vacuum).epsilon(1e-12));
    CHECK(b.s_gsb == doctest::Approx(f * a.s_gsb).epsilon(1e-12));
}

TEST_CASE("signs: bleach and emission reduce absorption, excited-state absorption adds")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto setup = fixtures::random_setup(rng);
        const auto s = s_total_single(setup, 200.0 + 10.0 * i);
        CHECK(s.s_esa >= 0.0);
        CHECK(s.s_se_classical <= 0.0);
        CHECK(s.s_gsb <= 0.0);
        if (compute_couplings(setup).delta_window == 0) CHECK(s.s_se_vacuum <= 0.0);
    }
}

TEST_CASE("uncoupled dimer shows no quantum beat")
{
    auto d = fixtures::desk_dimer();
    d.coupling_j = 0.0;
    const auto setup = fixtures::desk_setup(d);
    const double ref = s_total_single(setup, 150.0).s_total;
    for (double T : {173.0, 260.0, 511.0}) CHECK(s_total_single(setup, T).s_total == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("beat has the exciton splitting as period")
{
    const auto setup = fixtures::desk_setup();
    const double period = 2.0 * M_PI / setup.basis.splitting();
    for (double T : {150.0, 222.0, 407.0}) {
        const auto a = s_total_single(setup, T);
        const auto b = s_total_single(setup, T + period);
        CHECK(b.s_total == doctest::Approx(a.s_total).epsilon(1e-10));
    }
}

TEST_CASE("many-molecule rows agree with the separate expansions")
{
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 60; ++i) {
        const auto setup = fixtures::random_setup(rng);
        const auto c = compute_couplings(setup);
        if (c.delta_window != 0) continue;
        ++checked;
        const double n = std::uniform_real_distribution<double>(1.0, 1e4)(rng);
        const double x2 = std::uniform_real_distribution<double>(0.0, n * n)(rng);
        const double T = 150.0 + 7.0 * i;
        const double rows = ensemble_signal_rows(c, setup.basis, T, x2, n);
        const auto exp = ensemble_expansion(c, setup.basis, T, x2, n);
        const double scale = std::abs(exp.esa) + std::abs(exp.se) + std::abs(exp.gsb);
        CHECK(std::abs(rows - exp.total) <= 1e-11 * scale);
        const auto ens = s_total_ensemble(setup, T, x2, n);
        CHECK(std::abs(ens.s_total - rows) <= 1e-11 * (std::abs(rows) + n * std::abs(ens.s_gsb / n)));
    }
    CHECK(checked >= 30);
}

TEST_CASE("one molecule ensemble equals the single-dimer signal")
{
    const auto setup = fixtures::desk_setup();
    const auto single = s_total_single(setup, 190.0);
    const auto ens = s_total_ensemble(setup, 190.0, 1.0, 1.0);
    CHECK(ens.s_total == doctest::Approx(single.s_total).epsilon(1e-13));
    CHECK(ens.s_se_vacuum == doctest::Approx(single.s_se_vacuum).epsilon(1e-13));
}

TEST_CASE("many-molecule signal refuses quasi-degenerate excitons")
{
    auto d = fixtures::desk_dimer();
    d.omega_b = d.omega_a;
    d.coupling_j = 0.001;
    const auto setup = fixtures::desk_setup(d);
    REQUIRE(compute_couplings(setup).delta_window == 1);
    CHECK_THROWS_AS(s_total_ensemble(setup, 150.0, 4.0, 2.0), UnsupportedRegimeError);
    CHECK_THROWS_AS(s_total_ensemble(fixtures::desk_setup(), 150.0, 1.0, 0.5), PreconditionError);
}

TEST_CASE("inside the window the vacuum cross term appears")
{
    auto d = fixtures::desk_dimer();
    d.omega_b = d.omega_a;
    d.coupling_j = 0.001;
    auto setup = fixtures::desk_setup(d);
    const auto c = compute_couplings(setup);
    REQUIRE(c.delta_window == 1);
    const auto se = s_se(c, setup.basis, 150.0);
    const auto va = std::conj(c.vac[0]) * c.pump_up(Transition::alpha_g);
    const auto vb = std::conj(c.vac[1]) * c.pump_up(Transition::beta_g);
    CHECK(se.vacuum == doctest::Approx(-std::norm(va + vb)).epsilon(1e-12));
}
