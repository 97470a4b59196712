#include "ppvac/photon_field.hpp"

#include <cmath>
#include <string>

#include "ppvac/constants.hpp"
#include "ppvac/errors.hpp"

namespace ppvac {

namespace {

// omega in rad/fs -> rad/s
constexpr double to_si_freq(double omega) { return omega / si::femtosecond; }

}  // namespace

void PulseSpec::validate() const
{
    if (!(omega_0 > 0.0)) throw PreconditionError("pulse carrier frequency must be positive");
    if (!(sigma > 0.0)) throw PreconditionError("pulse duration sigma must be positive");
    if (!(photon_number >= 0.0)) throw PreconditionError("pulse photon number must be non-negative");
    if (!(area > 0.0)) throw PreconditionError("pulse transverse area must be positive");
    if (!std::isfinite(arrival_time)) throw PreconditionError("pulse arrival time must be finite");
    const double norm = std::hypot(direction[0], direction[1], direction[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw PreconditionError("pulse direction must be a unit vector (|k| = " + std::to_string(norm) + ")");
}

void VacuumParams::validate() const
{
    if (!(gamma > 0.0)) throw PreconditionError("vacuum coherence lifetime gamma must be positive");
    if (!(eta_vac >= 0.0)) throw PreconditionError("vacuum amplitude must be non-negative");
}

double CoherentAmplitudes::photon_number() const
{
    double total = 0.0;
    for (const auto& a : amplitudes) total += std::norm(a);
    return total * mode_spacing;
}

std::complex<double> CoherentAmplitudes::boson_amplitude(std::size_t k) const
{
    return amplitudes.at(k) * std::sqrt(mode_spacing);
}

CoherentAmplitudes gaussian_amplitudes(const PulseSpec& pulse, double grid_span, std::size_t modes)
{
    pulse.validate();
    if (grid_span < 3.0)
        throw PreconditionError("mode grid span must be at least 3 bandwidths, got " + std::to_string(grid_span));
    if (modes < 16)
        throw PreconditionError("mode grid needs at least 16 modes, got " + std::to_string(modes));

    const double b = pulse.bandwidth();
    const double lo = pulse.omega_0 - grid_span * b;
    CoherentAmplitudes out;
    out.mode_spacing = 2.0 * grid_span * b / static_cast<double>(modes - 1);
    out.mode_freqs.resize(modes);
    out.amplitudes.resize(modes);

    const double peak = std::sqrt(pulse.photon_number / (std::sqrt(pi) * b));
    for (std::size_t k = 0; k < modes; ++k) {
        const double w = lo + static_cast<double>(k) * out.mode_spacing;
        const double x = (w - pulse.omega_0) / b;
        out.mode_freqs[k] = w;
        out.amplitudes[k] = peak * std::exp(-0.5 * x * x);
    }
    return out;
}

double pulse_eta(const PulseSpec& pulse)
{
    pulse.validate();
    const double sigma_s = pulse.sigma * si::femtosecond;
    return std::sqrt(si::hbar * to_si_freq(pulse.omega_0) * pulse.photon_number * std::sqrt(pi) * sigma_s
                     / (si::epsilon0 * si::c * pulse.area));
}

double vacuum_eta(double omega_0, double gamma, double area)
{
    if (!(gamma > 0.0)) throw PreconditionError("vacuum coherence lifetime gamma must be positive");
    if (!(area > 0.0)) throw PreconditionError("transverse area must be positive");
    const double gamma_s = gamma * si::femtosecond;
    return std::sqrt(si::hbar * to_si_freq(omega_0) * gamma_s / (si::epsilon0 * si::c * area));
}

VacuumParams make_vacuum_params(const PulseSpec& probe, double gamma)
{
    return VacuumParams{gamma, vacuum_eta(probe.omega_0, gamma, probe.area)};
}

std::complex<double> temporal_envelope(const PulseSpec& pulse, double t)
{
    const double tau = t - pulse.arrival_time;
    const double sigma_s = pulse.sigma * si::femtosecond;
    const double peak = pulse_eta(pulse) / (std::sqrt(2.0 * pi) * sigma_s);
    const double x = tau / pulse.sigma;
    return peak * std::exp(-0.5 * x * x) * std::polar(1.0, -pulse.omega_0 * tau);
}

double mode_field_amplitude(const PulseSpec& pulse, double mode_spacing)
{
    return std::sqrt(si::hbar * to_si_freq(pulse.omega_0) * to_si_freq(mode_spacing)
                     / (4.0 * pi * si::epsilon0 * si::c * pulse.area));
}

std::complex<double> synthesize_field(const PulseSpec& pulse, const CoherentAmplitudes& amps, double t)
{
    const double g = mode_field_amplitude(pulse, amps.mode_spacing);
    const double tau = t - pulse.arrival_time;
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < amps.size(); ++k)
        sum += amps.boson_amplitude(k) * std::polar(1.0, -amps.mode_freqs[k] * tau);
    return g * sum;
}

}  // namespace ppvac
