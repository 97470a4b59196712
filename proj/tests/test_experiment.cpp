#include <cmath>

#include "doctest.h"
#include "ppvac/ensemble.hpp"
#include "ppvac/errors.hpp"
#include "ppvac/experiment.hpp"

using namespace ppvac;

namespace {

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("derived laboratory quantities match independent reference values")
{
    const ExperimentParams p;
    CHECK(rel_close(photon_number(p.pulse_energy, p.wavelength), 19507201699.228, 1e-12));
    const auto cv = coherent_volume(p.spot_diameter, p.sigma);
    CHECK(rel_close(cv.area, 3.8484510006474967e-9, 1e-14));
    CHECK(rel_close(cv.length, 5.99584916e-6, 1e-14));
    CHECK(rel_close(cv.volume, cv.area * cv.length, 1e-15));
    CHECK(rel_close(n_mol_from_concentration(p.concentration, cv.volume), 19454299521.135427, 1e-12));

    const auto w = spectral_width_report(p.sigma, p.wavelength);
    CHECK(rel_close(w.half_width_1e, 1.5943102493687422e-8, 1e-10));
    CHECK(rel_close(w.field_fwhm, 3.7543137332118057e-8, 1e-10));
    CHECK(rel_close(w.intensity_fwhm, 2.6547006994558507e-8, 1e-10));
    CHECK(rel_close(w.intensity_full_1e2, 4.5093903545754129e-8, 1e-10));
}

TEST_CASE("published feasibility figures are reproduced")
{
    const auto r = proposal_report(ExperimentParams{}, 400.0);
    CHECK(r.entry("photon_number").relative_gap().value() < 0.05);
    CHECK(r.entry("coherence_length").relative_gap().value() < 0.01);
    CHECK(r.entry("n_mol").relative_gap().value() < 0.05);
    CHECK(r.entry("width_intensity_full_1e2").relative_gap().value() < 0.05);
    CHECK(r.ratio_within_factor_two);
    CHECK(rel_close(r.ratio_resonant, 11.253190810527258, 1e-10));
    // The quoted 20 omits the sqrt(pi) carried by the pulse amplitude.
    CHECK(rel_close(r.ratio_resonant * std::sqrt(M_PI), 400.0 / 20.0 * 19454299521.135427 / 19507201699.228, 1e-10));
    REQUIRE(r.ratio_dimer.has_value());
    CHECK(*r.ratio_dimer > 1.0);
    CHECK_FALSE(r.entry("spot_area").relative_gap().has_value());
    CHECK_THROWS(r.entry("no_such_entry"));
}

TEST_CASE("field amplitudes in the report")
{
    const auto r = proposal_report(ExperimentParams{}, 400.0);
    CHECK(rel_close(r.entry("eta_probe").value, 4.165429332281148e-6, 1e-10));
    CHECK(rel_close(r.entry("eta_vacuum").value, 1.0018202671334902e-10, 1e-10));
}

TEST_CASE("concentration and molecule number are inverse")
{
    const double v = coherent_volume(70e-6, 20.0).volume;
    for (double c : {1e-6, 1.4e-3, 0.5}) CHECK(rel_close(concentration_from_n_mol(n_mol_from_concentration(c, v), v), c, 1e-14));
}

TEST_CASE("ratio scales with concentration and lifetime")
{
    ExperimentParams p;
    const double base = proposal_report(p, 400.0, std::nullopt).ratio_resonant;
    p.concentration *= 0.1;
    CHECK(rel_close(proposal_report(p, 400.0, std::nullopt).ratio_resonant, 0.1 * base, 1e-12));
    p.concentration = ExperimentParams{}.concentration;
    CHECK(rel_close(proposal_report(p, 200.0, std::nullopt).ratio_resonant, 0.5 * base, 1e-12));
    p.pulse_energy *= 2.0;
    CHECK(rel_close(proposal_report(p, 400.0, std::nullopt).ratio_resonant, 0.5 * base, 1e-12));
}

TEST_CASE("proposal dimer and setup")
{
    const auto d = proposal_dimer();
    CHECK(d.omega_a > d.omega_b);
    CHECK(d.coupling_j == doctest::Approx(0.15 * (d.omega_a - d.omega_b)));
    const auto s = proposal_setup(ExperimentParams{}, 400.0, d);
    CHECK(s.pump.omega_0 == doctest::Approx(2.4305181513662623).epsilon(1e-14));
    CHECK(s.probe.area == doctest::Approx(3.8484510006474967e-9));
    CHECK(compute_couplings(s).delta_window == 0);
}

TEST_CASE("wavelength span converts bandwidth to nm")
{
    // Small intervals follow d lambda = lambda^2 d omega / (2 pi c).
    const double lam = 775e-9, dw = 1e-5;
    const double expect = lam * lam * dw * 1e15 / (2.0 * M_PI * 299792458.0);
    CHECK(rel_close(wavelength_span(dw, lam), expect, 1e-4));
}

TEST_CASE("invalid inputs")
{
    ExperimentParams p;
    p.pulse_energy = 0.0;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
    CHECK_THROWS_AS(proposal_report(ExperimentParams{}, -1.0), PreconditionError);
    CHECK_THROWS_AS(photon_number(1e-9, 0.0), PreconditionError);
}
