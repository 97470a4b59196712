#include "ppvac/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "ppvac/constants.hpp"
#include "ppvac/ensemble.hpp"
#include "ppvac/errors.hpp"

namespace ppvac {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionError(std::string(what) + " must be positive");
}

}  // namespace

void ExperimentParams::validate() const
{
    require_positive(pulse_energy, "pulse energy");
    require_positive(wavelength, "wavelength");
    require_positive(spot_diameter, "spot diameter");
    require_positive(sigma, "pulse duration sigma");
    require_positive(concentration, "concentration");
}

double photon_number(double pulse_energy, double wavelength)
{
    require_positive(pulse_energy, "pulse energy");
    require_positive(wavelength, "wavelength");
    return pulse_energy * wavelength / (si::planck * si::c);
}

CoherentVolume coherent_volume(double spot_diameter, double sigma)
{
    require_positive(spot_diameter, "spot diameter");
    require_positive(sigma, "pulse duration sigma");
    CoherentVolume v;
    v.area = pi * spot_diameter * spot_diameter / 4.0;
    v.length = si::c * sigma * si::femtosecond;
    v.volume = v.area * v.length;
    return v;
}

double n_mol_from_concentration(double concentration, double volume)
{
    if (!(concentration >= 0.0)) throw PreconditionError("concentration must be non-negative");
    require_positive(volume, "volume");
    return concentration * si::avogadro * volume / si::liter;
}

double concentration_from_n_mol(double n_mol, double volume)
{
    if (!(n_mol >= 0.0)) throw PreconditionError("molecule count must be non-negative");
    require_positive(volume, "volume");
    return n_mol * si::liter / (si::avogadro * volume);
}

double wavelength_span(double delta_omega, double wavelength)
{
    return wavelength * wavelength * (delta_omega / si::femtosecond) / (2.0 * pi * si::c);
}

SpectralWidths spectral_width_report(double sigma, double wavelength)
{
    require_positive(sigma, "pulse duration sigma");
    require_positive(wavelength, "wavelength");
    const double b = 1.0 / sigma;
    SpectralWidths w;
    w.half_width_1e = wavelength_span(b, wavelength);
    w.field_fwhm = wavelength_span(2.0 * std::sqrt(2.0 * std::log(2.0)) * b, wavelength);
    w.intensity_fwhm = wavelength_span(2.0 * std::sqrt(std::log(2.0)) * b, wavelength);
    w.intensity_full_1e2 = wavelength_span(2.0 * std::sqrt(2.0) * b, wavelength);
    return w;
}

std::optional<double> ReportEntry::relative_gap() const
{
    if (!quoted) return std::nullopt;
    return std::abs(value / *quoted - 1.0);
}

const ReportEntry& ProposalReport::entry(const std::string& name) const
{
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("no report entry named " + name);
}

DimerSpec proposal_dimer()
{
    DimerSpec d;
    d.omega_a = omega_from_wavelength(750e-9);
    d.omega_b = omega_from_wavelength(800e-9);
    d.coupling_j = 0.3 * (d.omega_a - d.omega_b) / 2.0;
    d.mu_ag = 10.0 * si::debye;
    d.mu_bg = 10.0 * si::debye;
    return d;
}

PumpProbeSetup proposal_setup(const ExperimentParams& params, double gamma, const DimerSpec& dimer)
{
    params.validate();
    const CoherentVolume cv = coherent_volume(params.spot_diameter, params.sigma);
    PulseSpec pulse;
    pulse.omega_0 = omega_from_wavelength(params.wavelength);
    pulse.sigma = params.sigma;
    pulse.photon_number = photon_number(params.pulse_energy, params.wavelength);
    pulse.area = cv.area;

    PumpProbeSetup setup;
    setup.basis = diagonalize_dimer(dimer);
    setup.pump = pulse;
    setup.probe = pulse;
    setup.vacuum = make_vacuum_params(pulse, gamma);
    return setup;
}

ProposalReport proposal_report(const ExperimentParams& params, double gamma, const std::optional<DimerSpec>& dimer)
{
    params.validate();
    require_positive(gamma, "vacuum lifetime gamma");

    ProposalReport r;
    r.params = params;
    r.gamma = gamma;

    const double n_photons = photon_number(params.pulse_energy, params.wavelength);
    const CoherentVolume cv = coherent_volume(params.spot_diameter, params.sigma);
    const double n_mol = n_mol_from_concentration(params.concentration, cv.volume);
    const SpectralWidths w = spectral_width_report(params.sigma, params.wavelength);

    const PulseSpec pulse = proposal_setup(params, gamma, dimer.value_or(proposal_dimer())).probe;
    const double eta_p = pulse_eta(pulse);
    const double eta_vac = vacuum_eta(pulse.omega_0, gamma, pulse.area);

    r.ratio_resonant = n_mol * (eta_vac * eta_vac) / (eta_p * eta_p);
    r.ratio_within_factor_two = r.ratio_resonant >= r.ratio_quoted / 2.0 && r.ratio_resonant <= r.ratio_quoted * 2.0;

    r.entries = {
        {"photon_number", n_photons, "photons", 1.9e10, "E lambda / (h c)"},
        {"spot_area", cv.area, "m^2", std::nullopt, "pi D^2 / 4"},
        {"coherence_length", cv.length, "m", 6e-6, "c sigma"},
        {"coherent_volume", cv.volume, "m^3", std::nullopt, "A L"},
        {"n_mol", n_mol, "molecules", 1.9e10, "C N_A V"},
        {"width_half_1e", w.half_width_1e, "m", std::nullopt, "field 1/e half width, B = 1/sigma"},
        {"width_field_fwhm", w.field_fwhm, "m", std::nullopt, "field FWHM, 2 sqrt(2 ln 2) B"},
        {"width_intensity_fwhm", w.intensity_fwhm, "m", std::nullopt, "intensity FWHM, 2 sqrt(ln 2) B"},
        {"width_intensity_full_1e2", w.intensity_full_1e2, "m", 44e-9, "intensity 1/e^2 full width, 2 sqrt(2) B"},
        {"eta_probe", eta_p, "V s/m", std::nullopt, "pulse field amplitude"},
        {"eta_vacuum", eta_vac, "V s/m", std::nullopt, "single-photon vacuum amplitude"},
        {"gamma_over_sigma", gamma / params.sigma, "", 20.0, "crossover estimate without the sqrt(pi) of eta^2"},
        {"ratio_resonant", r.ratio_resonant, "", r.ratio_quoted,
         "N_mol (eta_vac / eta_P')^2 = N_mol Gamma / (N_P' sqrt(pi) sigma)"},
    };

    if (dimer) {
        const PumpProbeSetup setup = proposal_setup(params, gamma, *dimer);
        r.ratio_dimer = superradiance_ratio(setup, n_mol, n_mol * n_mol);
        r.entries.push_back({"ratio_dimer", *r.ratio_dimer, "", std::nullopt,
                             "same ratio weighted by exciton dipoles and spectral filters"});
    }
    return r;
}

}  // namespace ppvac
