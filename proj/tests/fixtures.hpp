#ifndef PPVAC_TEST_FIXTURES_HPP
#define PPVAC_TEST_FIXTURES_HPP

#include <cmath>
#include <random>

#include "ppvac/constants.hpp"
#include "ppvac/exciton.hpp"
#include "ppvac/signals.hpp"

namespace fixtures {

inline ppvac::DimerSpec desk_dimer()
{
    ppvac::DimerSpec d;
    d.omega_a = 2.45;
    d.omega_b = 2.40;
    d.coupling_j = 0.01;
    d.mu_ag = 10.0 * ppvac::si::debye;
    d.mu_bg = 7.0 * ppvac::si::debye;
    return d;
}

inline ppvac::PulseSpec desk_pulse(double photons)
{
    ppvac::PulseSpec p;
    p.omega_0 = 2.43;
    p.sigma = 20.0;
    p.photon_number = photons;
    p.area = 1e-12;
    return p;
}

/// Dimer, pulses and vacuum used throughout the unit tests.
inline ppvac::PumpProbeSetup desk_setup(const ppvac::DimerSpec& d = desk_dimer())
{
    ppvac::PumpProbeSetup s;
    s.basis = ppvac::diagonalize_dimer(d);
    s.pump = desk_pulse(1e6);
    s.probe = desk_pulse(2e6);
    s.vacuum = ppvac::make_vacuum_params(s.probe, 400.0);
    return s;
}

/// Random non-degenerate dimer and carrier with transitions within +-2 bandwidths.
inline ppvac::PumpProbeSetup random_setup(std::mt19937_64& rng)
{
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    const double sigma = u(15.0, 30.0);
    const double b = 1.0 / sigma;
    const double w0 = 2.43;
    ppvac::DimerSpec d;
    d.omega_a = w0 + u(-0.9, 0.9) * b;
    d.omega_b = w0 + u(-0.9, 0.9) * b;
    d.coupling_j = u(-0.4, 0.4) * b;
    d.mu_ag = u(2.0, 12.0) * ppvac::si::debye;
    d.mu_bg = u(2.0, 12.0) * ppvac::si::debye;

    ppvac::PumpProbeSetup s;
    s.basis = ppvac::diagonalize_dimer(d);
    s.pump = desk_pulse(u(1e5, 1e7));
    s.pump.sigma = sigma;
    s.probe = desk_pulse(u(1e5, 1e7));
    s.probe.sigma = sigma;
    s.probe.omega_0 = w0 + u(-0.1, 0.1) * b;
    s.vacuum = ppvac::make_vacuum_params(s.probe, 400.0);
    return s;
}

}  // namespace fixtures

#endif
