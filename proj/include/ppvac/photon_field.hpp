#ifndef PPVAC_PHOTON_FIELD_HPP
#define PPVAC_PHOTON_FIELD_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace ppvac {

using Vec3 = std::array<double, 3>;

/// A transform-limited Gaussian pulse described as a multimode coherent state.
///
/// Time is in fs and angular frequency in rad/fs throughout. The spectral
/// bandwidth is fixed to 1/sigma. `area` is the effective transverse area in m^2.
struct PulseSpec {
    double omega_0 = 0.0;
    double sigma = 0.0;
    double photon_number = 0.0;
    double arrival_time = 0.0;
    Vec3 direction{0.0, 0.0, 1.0};
    double area = 0.0;

    double bandwidth() const { return 1.0 / sigma; }

    void validate() const;
};

/// Coherent-state amplitudes on a uniform frequency grid.
///
/// `amplitudes` holds the continuum-normalized alpha(omega) in (rad/fs)^-1/2,
/// so that sum_k |alpha_k|^2 * mode_spacing is the photon number. The
/// dimensionless amplitude of the k-th discrete boson mode is
/// alpha_k * sqrt(mode_spacing).
struct CoherentAmplitudes {
    std::vector<double> mode_freqs;
    std::vector<std::complex<double>> amplitudes;
    double mode_spacing = 0.0;

    std::size_t size() const { return mode_freqs.size(); }
    double photon_number() const;
    std::complex<double> boson_amplitude(std::size_t k) const;
};

/// Lifetime and vacuum field amplitude entering the stimulated-emission correction.
struct VacuumParams {
    double gamma = 0.0;    // fs
    double eta_vac = 0.0;  // V s / m

    void validate() const;
};

inline constexpr double kDefaultModeSpan = 5.0;
inline constexpr std::size_t kDefaultModeCount = 512;

/// Samples the Gaussian amplitude profile on `modes` points spanning
/// omega_0 +- grid_span * bandwidth (end points included).
///
/// Throws PreconditionError for grid_span < 3 or fewer than 16 modes.
CoherentAmplitudes gaussian_amplitudes(const PulseSpec& pulse,
                                       double grid_span = kDefaultModeSpan,
                                       std::size_t modes = kDefaultModeCount);

/// Pulse amplitude eta = sqrt(hbar w0 N sqrt(pi) sigma / (eps0 c A)) in V s / m.
double pulse_eta(const PulseSpec& pulse);

/// Single-photon vacuum amplitude sqrt(hbar w0 Gamma / (eps0 c A)) in V s / m.
double vacuum_eta(double omega_0, double gamma, double area);

/// Vacuum parameters for a given probe pulse and coherence lifetime.
VacuumParams make_vacuum_params(const PulseSpec& probe, double gamma);

/// Closed-form electric-field envelope (V/m) including the optical carrier.
///
/// Peak magnitude is eta / (sqrt(2 pi) sigma), with sigma converted to seconds.
std::complex<double> temporal_envelope(const PulseSpec& pulse, double t);

/// Field per unit boson amplitude for one grid mode, V/m. Uses the
/// narrowband approximation omega_k ~ omega_0 for the zero-point factor.
double mode_field_amplitude(const PulseSpec& pulse, double mode_spacing);

/// Field (V/m) at time t synthesized by summing the discrete modes.
std::complex<double> synthesize_field(const PulseSpec& pulse,
                                      const CoherentAmplitudes& amps,
                                      double t);

}  // namespace ppvac

#endif
