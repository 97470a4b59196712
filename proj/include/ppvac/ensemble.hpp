#ifndef PPVAC_ENSEMBLE_HPP
#define PPVAC_ENSEMBLE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ppvac/photon_field.hpp"
#include "ppvac/signals.hpp"

namespace ppvac {

/// Sample volume: a cylinder along z with its base disc at z = 0. Meters.
struct Cylinder {
    double diameter = 0.0;
    double length = 0.0;

    double area() const;
    double volume() const;
    bool contains(const Vec3& r, double slack = 1e-12) const;
    void validate() const;
};

struct EnsembleSpec {
    std::size_t n_mol = 0;
    std::vector<Vec3> positions;  // m
    Vec3 k_pump{};                // rad/m
    Vec3 k_probe{};
    Cylinder geometry;
    std::uint64_t seed = 0;

    /// Checks |positions| == n_mol and that every position lies in the cylinder.
    void validate() const;
};

/// Positions are summed one by one only up to this count.
inline constexpr std::size_t kMaxDirectPositions = 1'000'000;

/// Fixed chunk size of the sampler; chunk c draws from its own stream seeded by (seed, c).
inline constexpr std::size_t kSampleChunk = 4096;

/// Wavevector of a pulse: direction * omega_0 / c, rad/m.
Vec3 wavevector(const PulseSpec& pulse);

/// Unit vector in the x-z plane at `angle` (rad) from the z axis.
Vec3 direction_at_angle(double angle);

/// Uniform i.i.d. positions in the cylinder; identical for identical seeds
/// whatever the worker count.
std::vector<Vec3> sample_positions(std::size_t n_mol, const Cylinder& geometry, std::uint64_t seed, unsigned workers = 1);

struct PhaseSum {
    std::complex<double> x{0.0, 0.0};
    double x_squared = 0.0;
    bool analytic = false;  // true when the large-N closed form was used
};

/// X = sum_j exp(i (k_P - k_P') . r_j) over explicit positions.
PhaseSum phase_sum(std::span<const Vec3> positions, const Vec3& k_pump, const Vec3& k_probe, unsigned workers = 1);

PhaseSum phase_sum(const EnsembleSpec& spec, unsigned workers = 1);

/// Samples positions chunk by chunk without storing them. Beyond
/// kMaxDirectPositions returns the expectation instead: N^2 for collinear
/// beams, N otherwise.
PhaseSum sampled_phase_sum(std::size_t n_mol,
                           const Cylinder& geometry,
                           const Vec3& k_pump,
                           const Vec3& k_probe,
                           std::uint64_t seed,
                           unsigned workers = 1);

/// Vacuum term over the non-oscillating classical SE term of the many-molecule signal:
/// |X|^2 sum_n |Omega_ng^vac Omega_ng^P|^2 / (N_mol sum_n |Omega_ng^P|^2 |Omega_ng^P'|^2).
///
/// Throws UnsupportedRegimeError outside Delta_alpha_beta = 0 and DomainError
/// when the classical term vanishes.
double superradiance_ratio(const PumpProbeSetup& setup, double n_mol, double x_squared);

/// N_mol at which the collinear ratio reaches 1.
double collinear_crossover(const PumpProbeSetup& setup);

/// 2 pi / |omega_alpha - omega_beta| in fs; infinite for degenerate excitons.
double beat_period(const ExcitonBasis& basis);

/// Many-molecule s_total over a T grid, optionally with the vacuum term removed.
std::vector<double> ensemble_total_sweep(const PumpProbeSetup& setup,
                                         std::span<const double> waiting_times,
                                         double n_mol,
                                         double x_squared,
                                         bool include_vacuum = true);

/// (max - min) / |max + min| of a signal sampled over T.
///
/// Throws PreconditionError unless the samples span at least three beat
/// periods and DomainError when max + min vanishes.
double beat_visibility(std::span<const double> waiting_times, std::span<const double> signal, double period);

}  // namespace ppvac

#endif
