#ifndef PPVAC_SIGNALS_HPP
#define PPVAC_SIGNALS_HPP

#include <array>
#include <complex>
#include <cstddef>

#include "ppvac/exciton.hpp"
#include "ppvac/photon_field.hpp"

namespace ppvac {

/// Optically allowed transitions, named upper-lower.
enum class Transition : std::size_t { alpha_g = 0, beta_g = 1, f_alpha = 2, f_beta = 3 };

/// omega_q - omega_n for transition (q, n), rad/fs.
double transition_frequency(const ExcitonBasis& basis, Transition t);

/// Dimer, both pulses and vacuum parameters: everything a signal needs.
struct PumpProbeSetup {
    ExcitonBasis basis;
    PulseSpec pump;
    PulseSpec probe;
    VacuumParams vacuum;

    void validate() const;
};

/// Dimensionless light-matter couplings Omega_qn^j for the upward transitions.
///
/// The downward partners follow from Omega_nq^{jbar} = conj(Omega_qn^j).
/// `vac` holds Omega_ng^{vac,P'} for n = alpha, beta; they carry no spectral
/// filter factor.
struct CouplingSet {
    std::array<std::complex<double>, 4> pump{};
    std::array<std::complex<double>, 4> probe{};
    std::array<std::complex<double>, 2> vac{};
    int delta_window = 0;
    double min_waiting_time = 0.0;  // fs; shortest T the closed forms accept

    std::complex<double> pump_up(Transition t) const { return pump[static_cast<std::size_t>(t)]; }
    std::complex<double> probe_up(Transition t) const { return probe[static_cast<std::size_t>(t)]; }
    std::complex<double> pump_down(Transition t) const { return std::conj(pump_up(t)); }
    std::complex<double> probe_down(Transition t) const { return std::conj(probe_up(t)); }
};

/// Decomposed pump-probe signal at one waiting time.
struct SignalComponents {
    double T = 0.0;
    double s_esa = 0.0;
    double s_se_classical = 0.0;
    double s_se_vacuum = 0.0;
    double s_gsb = 0.0;
    double s_total = 0.0;
};

struct StimulatedEmission {
    double classical = 0.0;
    double vacuum = 0.0;
};

/// Pulses count as separated once their envelopes overlap by less than
/// exp(-6.25): T >= 2.5 (sigma_P + sigma_P').
inline constexpr double kSeparationFactor = 2.5;

double min_waiting_time(const PulseSpec& pump, const PulseSpec& probe);

/// Throws PreconditionError naming the minimum T when the pulses overlap.
void require_separated(double T, double min_T);

CouplingSet compute_couplings(const ExcitonBasis& basis,
                              const PulseSpec& pump,
                              const PulseSpec& probe,
                              const VacuumParams& vac);

CouplingSet compute_couplings(const PumpProbeSetup& setup);

/// 1 iff |omega_alpha - omega_beta| <= pi / (2 gamma).
int delta_window(double omega_alpha, double omega_beta, double gamma);

double s_esa(const CouplingSet& c, const ExcitonBasis& basis, double T);
StimulatedEmission s_se(const CouplingSet& c, const ExcitonBasis& basis, double T);
double s_gsb(const CouplingSet& c);

SignalComponents s_total_single(const PumpProbeSetup& setup, double T);

/// Many-molecule signal for N_mol identical dimers with phase sum |X|^2.
///
/// Classical components are N_mol times the single-dimer ones; the vacuum
/// term scales with |X|^2. Only defined for Delta_alpha_beta = 0; throws
/// UnsupportedRegimeError otherwise.
SignalComponents s_total_ensemble(const PumpProbeSetup& setup, double T, double x_squared, double n_mol);

/// Row-by-row evaluation of the closed-form many-molecule signal
/// (population rows, ESA and SE coherence rows, vacuum row). Total only.
double ensemble_signal_rows(const CouplingSet& c, const ExcitonBasis& basis, double T, double x_squared, double n_mol);

/// The same signal assembled from the separate many-molecule ESA, SE and GSB
/// expansions. Used as an independent algebraic cross-check of the rows.
struct EnsembleExpansion {
    double esa = 0.0;
    double se = 0.0;
    double gsb = 0.0;
    double total = 0.0;
};

EnsembleExpansion ensemble_expansion(const CouplingSet& c,
                                     const ExcitonBasis& basis,
                                     double T,
                                     double x_squared,
                                     double n_mol);

}  // namespace ppvac

#endif
