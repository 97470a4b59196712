#ifndef PPVAC_EXPERIMENT_HPP
#define PPVAC_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ppvac/exciton.hpp"
#include "ppvac/signals.hpp"

namespace ppvac {

/// Laboratory-scale inputs of a pump-probe measurement, SI except sigma (fs).
struct ExperimentParams {
    double pulse_energy = 5e-9;      // J
    double wavelength = 775e-9;      // m
    double spot_diameter = 70e-6;    // m
    double sigma = 20.0;             // fs
    double concentration = 1.4e-3;   // mol/L

    void validate() const;
};

/// N = E lambda / (h c).
double photon_number(double pulse_energy, double wavelength);

struct CoherentVolume {
    double area = 0.0;    // m^2, pi D^2 / 4
    double length = 0.0;  // m, c sigma
    double volume = 0.0;  // m^3
};

CoherentVolume coherent_volume(double spot_diameter, double sigma);

/// Molecules in `volume` (m^3) at molar concentration `concentration` (mol/L).
double n_mol_from_concentration(double concentration, double volume);
double concentration_from_n_mol(double n_mol, double volume);

/// Wavelength interval (m) covered by the angular-frequency interval
/// `delta_omega` (rad/fs) around `wavelength`.
double wavelength_span(double delta_omega, double wavelength);

/// Spectral widths of a Gaussian pulse with field bandwidth B = 1/sigma,
/// expressed in wavelength (m) under several conventions.
struct SpectralWidths {
    double half_width_1e = 0.0;       // B: field falls to 1/e
    double field_fwhm = 0.0;          // 2 sqrt(2 ln 2) B
    double intensity_fwhm = 0.0;      // 2 sqrt(ln 2) B
    double intensity_full_1e2 = 0.0;  // 2 sqrt(2) B: intensity falls to 1/e^2
};

SpectralWidths spectral_width_report(double sigma, double wavelength);

/// One line of the feasibility table. `quoted` holds the published figure it
/// should reproduce, when there is one.
struct ReportEntry {
    std::string name;
    double value = 0.0;
    std::string unit;
    std::optional<double> quoted;
    std::string note;

    /// |value / quoted - 1|, or nullopt without a quoted figure.
    std::optional<double> relative_gap() const;
};

struct ProposalReport {
    ExperimentParams params;
    double gamma = 400.0;  // fs
    std::vector<ReportEntry> entries;
    double ratio_resonant = 0.0;
    double ratio_quoted = 20.0;
    std::optional<double> ratio_dimer;
    bool ratio_within_factor_two = false;

    const ReportEntry& entry(const std::string& name) const;
};

/// Default heterodimer for the spectrally weighted ratio: sites at 750 and
/// 800 nm, J = 0.3 (omega_a - omega_b) / 2, equal 10 D dipoles.
DimerSpec proposal_dimer();

/// Builds the feasibility table: photon and molecule numbers, coherent
/// volume, bandwidths, field amplitudes and the collinear superradiance ratio.
///
/// `ratio_resonant` is N_mol (eta_vac / eta_P')^2, the ratio for a transition
/// sitting on the probe carrier; `ratio_dimer` weights the same ratio by the
/// dimer's exciton dipoles and spectral filters.
ProposalReport proposal_report(const ExperimentParams& params,
                               double gamma,
                               const std::optional<DimerSpec>& dimer = proposal_dimer());

/// Pump and probe at the experiment's carrier, duration and spot size.
PumpProbeSetup proposal_setup(const ExperimentParams& params, double gamma, const DimerSpec& dimer);

}  // namespace ppvac

#endif
