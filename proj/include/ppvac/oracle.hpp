#ifndef PPVAC_ORACLE_HPP
#define PPVAC_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppvac/operator_algebra.hpp"
#include "ppvac/photon_field.hpp"
#include "ppvac/quadrature.hpp"
#include "ppvac/signals.hpp"

namespace ppvac {

/// Discretization of the brute-force perturbation-theory integrals.
struct QuadratureConfig {
    std::size_t time_points = 256;    // per pulse axis
    double time_span = 8.0;           // half width, in units of the pulse sigma
    std::size_t mode_count = kDefaultModeCount;
    double mode_span = kDefaultModeSpan;
    double regularization_gamma = 0.0;  // fs; 0 means "use the vacuum lifetime"

    /// Hard floor is 16 time points so that deliberately coarse grids can
    /// still run and be reported as unconverged; 64+ is the working range.
    static constexpr std::size_t kMinTimePoints = 16;

    void validate() const;
    double gamma_for(const VacuumParams& vac) const;
};

inline constexpr double kConvergenceTolerance = 1e-3;

/// Regularized lifetime integral  int dt exp(-i dw t) exp(-|t|/gamma),
/// by composite Simpson on each side of the cusp over |t| <= 40 gamma.
std::complex<double> regularized_integral(double detuning, double gamma, std::size_t points_per_side = 8192);

/// Time-domain quadrature of one pulse's field correlations.
///
/// Fields are carried in rate units (E * fs / hbar), so multiplying an
/// integral by the matching transition dipoles (C m) gives a dimensionless
/// amplitude. Integrals run in the frame rotating at the carrier; only the
/// detunings are resolved by the grid and the carrier phase is applied exactly.
class PulseQuadrature {
public:
    PulseQuadrature(const PulseSpec& pulse, const QuadratureConfig& cfg, std::size_t time_points, unsigned workers);

    const PulseSpec& pulse() const { return pulse_; }
    const UniformGrid& grid() const { return grid_; }

    /// int int dt dt' e^{i w1 t} e^{-i w2 t'} <E^-(t') E^+(t)>, over the full
    /// plane or over t' <= t when `time_ordered`.
    std::complex<double> absorption_pair(double w1, double w2, bool time_ordered) const;

    /// Classical part of int int dt dt' e^{-i w1 t} e^{i w2 t'} <E^+(t') E^-(t)>.
    std::complex<double> emission_pair_classical(double w1, double w2) const;

    /// Vacuum part of the same correlation, as the explicit sum over the
    /// discrete modes, each regularized by exp(-|t - center| / (2 gamma)) on
    /// both time arguments.
    std::complex<double> emission_pair_vacuum_modes(double w1, double w2, double center, double gamma) const;

    /// The same for every pair drawn from `freqs`, row-major, sharing the per-mode integrals.
    std::vector<std::complex<double>> vacuum_mode_matrix(const std::vector<double>& freqs,
                                                         double center,
                                                         double gamma) const;

    /// Vacuum part using the continuum delta-function kernel and the
    /// exp(-|t - center| / gamma) regularization on the surviving time integral.
    std::complex<double> emission_pair_vacuum_delta(double w1, double w2, double center, double gamma) const;

private:
    std::complex<double> contract(const std::vector<std::complex<double>>& outer,
                                  const std::vector<std::complex<double>>& inner,
                                  bool emission,
                                  bool time_ordered) const;

    PulseSpec pulse_;
    CoherentAmplitudes amps_;
    UniformGrid grid_;
    std::vector<double> weights_;
    std::vector<std::complex<double>> envelope_;  // rotating-frame field, rate units
    TwoPointKernel absorb_kernel_;
    TwoPointKernel emit_kernel_;
    double mode_rate_ = 0.0;  // per-mode field, rate units
    unsigned workers_ = 1;
};

/// One fixed-resolution evaluation of every signal component.
struct OracleSample {
    std::size_t time_points = 0;
    double esa = 0.0;
    double se_classical = 0.0;
    double se_vacuum_modes = 0.0;
    double se_vacuum_delta = 0.0;
    double gsb = 0.0;
};

OracleSample oracle_sample(const PumpProbeSetup& setup,
                           const QuadratureConfig& cfg,
                           double T,
                           std::size_t time_points,
                           unsigned workers = 1);

/// A component evaluated at time_points (coarse) and 2 * time_points (value).
struct ConvergedValue {
    double value = 0.0;
    double coarse = 0.0;
    double drift = 0.0;
    bool converged = true;
};

struct OracleComponents {
    double T = 0.0;
    std::size_t time_points = 0;
    ConvergedValue esa;
    ConvergedValue se_classical;
    ConvergedValue se_vacuum_modes;
    ConvergedValue se_vacuum_delta;
    ConvergedValue gsb;

    bool converged() const;
};

/// Evaluates all components with the step-doubling convergence check. Never throws on drift.
OracleComponents oracle_evaluate(const PumpProbeSetup& setup,
                                 const QuadratureConfig& cfg,
                                 double T,
                                 unsigned workers = 1);

/// Single-component entry points; these throw ConvergenceError when
/// doubling time_points moves the result by more than 1e-3 relative.
double oracle_esa(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers = 1);

struct OracleSE {
    double classical = 0.0;
    double vacuum_modes = 0.0;
    double vacuum_delta = 0.0;
    double mode_delta_discrepancy = 0.0;  // |modes - delta| / |delta|
};

OracleSE oracle_se(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers = 1);

double oracle_gsb(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers = 1);

/// Stimulated emission of 2-3 molecules at explicit positions, summed pair by
/// pair with position phases exp(i (k_P - k_P') . r). Returns the classical
/// and vacuum parts.
StimulatedEmission oracle_se_molecules(const PumpProbeSetup& setup,
                                       const QuadratureConfig& cfg,
                                       double T,
                                       const std::vector<Vec3>& positions,
                                       const Vec3& k_pump,
                                       const Vec3& k_probe,
                                       unsigned workers = 1);

struct ComponentDeviation {
    std::string name;
    double analytic = 0.0;
    double oracle = 0.0;
    double abs_dev = 0.0;
    double rel_dev = 0.0;
    double tolerance = 0.0;
    double drift = 0.0;
    bool converged = true;
    bool within = true;
};

/// Agreement gates for the oracle comparison.
struct ComparisonTolerances {
    double classical = 1e-3;
    double vacuum = 0.10;
    double convergence = kConvergenceTolerance;
};

struct ComparisonRecord {
    double T = 0.0;
    QuadratureConfig config;
    std::vector<ComponentDeviation> components;
    double mode_delta_discrepancy = 0.0;
    bool converged = true;
    bool passed = true;
};

/// |a - b| / |a|, with 0 for a == b == 0 and +inf when only a vanishes.
double relative_deviation(double reference, double value);

ComparisonRecord compare_report(const SignalComponents& analytic,
                                const OracleComponents& oracle,
                                const QuadratureConfig& cfg,
                                const ComparisonTolerances& tol = {});

nlohmann::json to_json(const QuadratureConfig& cfg);
nlohmann::json to_json(const ComparisonRecord& record);

}  // namespace ppvac

#endif
