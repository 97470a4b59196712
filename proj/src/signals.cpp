#include "ppvac/signals.hpp"

#include <cmath>
#include <string>

#include "ppvac/constants.hpp"
#include "ppvac/errors.hpp"

namespace ppvac {

namespace {

using cplx = std::complex<double>;

constexpr Transition kAlpha = Transition::alpha_g;
constexpr Transition kBeta = Transition::beta_g;
constexpr Transition kFAlpha = Transition::f_alpha;
constexpr Transition kFBeta = Transition::f_beta;

double dipole(const ExcitonBasis& basis, Transition t)
{
    switch (t) {
    case Transition::alpha_g: return basis.mu.alpha_g;
    case Transition::beta_g: return basis.mu.beta_g;
    case Transition::f_alpha: return basis.mu.f_alpha;
    case Transition::f_beta: return basis.mu.f_beta;
    }
    return 0.0;
}

cplx phase(double omega, double T) { return std::polar(1.0, -omega * T); }

}  // namespace

double transition_frequency(const ExcitonBasis& basis, Transition t)
{
    switch (t) {
    case Transition::alpha_g: return basis.omega_alpha - basis.omega_g;
    case Transition::beta_g: return basis.omega_beta - basis.omega_g;
    case Transition::f_alpha: return basis.omega_f - basis.omega_alpha;
    case Transition::f_beta: return basis.omega_f - basis.omega_beta;
    }
    return 0.0;
}

void PumpProbeSetup::validate() const
{
    pump.validate();
    probe.validate();
    vacuum.validate();
}

double min_waiting_time(const PulseSpec& pump, const PulseSpec& probe)
{
    return kSeparationFactor * (pump.sigma + probe.sigma);
}

void require_separated(double T, double min_T)
{
    if (!(T >= min_T))
        throw PreconditionError("waiting time T = " + std::to_string(T) + " fs overlaps the pulses; need T >= "
                                + std::to_string(min_T) + " fs");
}

int delta_window(double omega_alpha, double omega_beta, double gamma)
{
    if (!(gamma > 0.0)) throw PreconditionError("gamma must be positive");
    return std::abs(omega_alpha - omega_beta) <= pi / (2.0 * gamma) ? 1 : 0;
}

CouplingSet compute_couplings(const ExcitonBasis& basis,
                              const PulseSpec& pump,
                              const PulseSpec& probe,
                              const VacuumParams& vac)
{
    pump.validate();
    probe.validate();
    vac.validate();

    const double eta_pump = pulse_eta(pump);
    const double eta_probe = pulse_eta(probe);

    const auto coupling = [&](Transition t, const PulseSpec& pulse, double eta) {
        const double detuning = transition_frequency(basis, t) - pulse.omega_0;
        const double filter = std::exp(-0.5 * pulse.sigma * pulse.sigma * detuning * detuning);
        return cplx{dipole(basis, t) / si::hbar * eta * filter, 0.0};
    };

    CouplingSet c;
    for (auto t : {kAlpha, kBeta, kFAlpha, kFBeta}) {
        c.pump[static_cast<std::size_t>(t)] = coupling(t, pump, eta_pump);
        c.probe[static_cast<std::size_t>(t)] = coupling(t, probe, eta_probe);
    }
    c.vac[0] = dipole(basis, kAlpha) / si::hbar * vac.eta_vac;
    c.vac[1] = dipole(basis, kBeta) / si::hbar * vac.eta_vac;
    c.delta_window = delta_window(basis.omega_alpha, basis.omega_beta, vac.gamma);
    c.min_waiting_time = min_waiting_time(pump, probe);
    return c;
}

CouplingSet compute_couplings(const PumpProbeSetup& setup)
{
    return compute_couplings(setup.basis, setup.pump, setup.probe, setup.vacuum);
}

double s_esa(const CouplingSet& c, const ExcitonBasis& basis, double T)
{
    require_separated(T, c.min_waiting_time);
    const cplx amp = c.probe_up(kFAlpha) * c.pump_up(kAlpha) * phase(basis.omega_alpha, T)
                     + c.probe_up(kFBeta) * c.pump_up(kBeta) * phase(basis.omega_beta, T);
    return std::norm(amp);
}

StimulatedEmission s_se(const CouplingSet& c, const ExcitonBasis& basis, double T)
{
    require_separated(T, c.min_waiting_time);
    const cplx amp = c.probe_down(kAlpha) * c.pump_up(kAlpha) * phase(basis.omega_alpha, T)
                     + c.probe_down(kBeta) * c.pump_up(kBeta) * phase(basis.omega_beta, T);

    // Omega_gn^{vac,P'bar} Omega_ng^P for n = alpha, beta
    const cplx va = std::conj(c.vac[0]) * c.pump_up(kAlpha);
    const cplx vb = std::conj(c.vac[1]) * c.pump_up(kBeta);
    const cplx cross = std::conj(c.vac[0]) * c.pump_up(kAlpha) * c.pump_down(kBeta) * c.vac[1];

    StimulatedEmission se;
    se.classical = -std::norm(amp);
    se.vacuum = -(std::norm(va) + std::norm(vb) + 2.0 * c.delta_window * cross.real());
    return se;
}

double s_gsb(const CouplingSet& c)
{
    const double pump = std::norm(c.pump_up(kAlpha)) + std::norm(c.pump_up(kBeta));
    const double probe = std::norm(c.probe_up(kAlpha)) + std::norm(c.probe_up(kBeta));
    return -pump * probe;
}

SignalComponents s_total_single(const PumpProbeSetup& setup, double T)
{
    const CouplingSet c = compute_couplings(setup);
    SignalComponents out;
    out.T = T;
    out.s_esa = s_esa(c, setup.basis, T);
    const auto se = s_se(c, setup.basis, T);
    out.s_se_classical = se.classical;
    out.s_se_vacuum = se.vacuum;
    out.s_gsb = s_gsb(c);
    out.s_total = out.s_esa + out.s_se_classical + out.s_se_vacuum + out.s_gsb;
    return out;
}

SignalComponents s_total_ensemble(const PumpProbeSetup& setup, double T, double x_squared, double n_mol)
{
    if (!(n_mol >= 1.0)) throw PreconditionError("ensemble needs n_mol >= 1");
    if (!(x_squared >= 0.0)) throw PreconditionError("|X|^2 must be non-negative");
    const CouplingSet c = compute_couplings(setup);
    if (c.delta_window != 0)
        throw UnsupportedRegimeError("many-molecule signal is only available for non-degenerate excitons "
                                     "(Delta_alpha_beta = 0)");

    SignalComponents out;
    out.T = T;
    out.s_esa = n_mol * s_esa(c, setup.basis, T);
    const auto se = s_se(c, setup.basis, T);
    out.s_se_classical = n_mol * se.classical;
    out.s_se_vacuum = x_squared * se.vacuum;
    out.s_gsb = n_mol * s_gsb(c);
    out.s_total = out.s_esa + out.s_se_classical + out.s_se_vacuum + out.s_gsb;
    return out;
}

double ensemble_signal_rows(const CouplingSet& c, const ExcitonBasis& basis, double T, double x_squared, double n_mol)
{
    require_separated(T, c.min_waiting_time);
    const cplx pa = c.pump_up(kAlpha), pb = c.pump_up(kBeta);
    const cplx qa = c.probe_up(kAlpha), qb = c.probe_up(kBeta);
    const cplx fa = c.probe_up(kFAlpha), fb = c.probe_up(kFBeta);
    const cplx beat = phase(basis.omega_alpha - basis.omega_beta, T);

    const double populations = std::norm(pa) * (std::norm(fa) - 2.0 * std::norm(qa))
                               + std::norm(pb) * (std::norm(fb) - 2.0 * std::norm(qb))
                               - std::norm(pa) * std::norm(qb) - std::norm(pb) * std::norm(qa);
    const cplx esa_coherence = pa * std::conj(pb) * fa * std::conj(fb) * beat;
    const cplx se_coherence = pa * std::conj(pb) * std::conj(qa) * qb * beat;
    const double vacuum = std::norm(std::conj(c.vac[0]) * pa) + std::norm(std::conj(c.vac[1]) * pb);

    return n_mol * populations + n_mol * 2.0 * esa_coherence.real() - n_mol * 2.0 * se_coherence.real()
           - x_squared * vacuum;
}

EnsembleExpansion ensemble_expansion(const CouplingSet& c,
                                     const ExcitonBasis& basis,
                                     double T,
                                     double x_squared,
                                     double n_mol)
{
    require_separated(T, c.min_waiting_time);
    const cplx pa = c.pump_up(kAlpha), pb = c.pump_up(kBeta);
    const cplx qa = c.probe_up(kAlpha), qb = c.probe_up(kBeta);
    const double n = n_mol, x2 = x_squared;
    const double w_ab = basis.omega_alpha - basis.omega_beta;

    const double aa = std::norm(pa) * std::norm(qa);
    const double bb = std::norm(pb) * std::norm(qb);
    const double ab = std::norm(pa) * std::norm(qb);
    const double ba = std::norm(pb) * std::norm(qa);
    // Omega_ga^Pbar Omega_gb^P'bar Omega_bg^P Omega_ag^P' e^{i w_ab T} and its partner
    const cplx coh = std::conj(pa) * std::conj(qb) * pb * qa * std::polar(1.0, w_ab * T);
    const cplx coh_partner = std::conj(pb) * std::conj(qa) * pa * qb * std::polar(1.0, -w_ab * T);

    // Same-molecule ESA: sum_{m,n} Omega_gn^Pbar Omega_nf^P'bar Omega_fm^P' Omega_mg^P e^{-i w_mn T}
    const std::array<cplx, 2> up{c.probe_up(Transition::f_alpha) * pa * phase(basis.omega_alpha, T),
                                 c.probe_up(Transition::f_beta) * pb * phase(basis.omega_beta, T)};
    cplx same_molecule{0.0, 0.0};
    for (const auto& m : up)
        for (const auto& k : up) same_molecule += std::conj(k) * m;

    EnsembleExpansion e;
    e.esa = aa * (n * (n - 2.0) + x2) + bb * (n * (n - 2.0) + x2) + ab * n * (n - 1.0) + ba * n * (n - 1.0)
            + (coh.real() + coh_partner.real()) * (x2 - n) + n * same_molecule.real();

    const cplx va = std::conj(c.vac[0]) * pa;
    const cplx vb = std::conj(c.vac[1]) * pb;
    const cplx vcross = std::conj(c.vac[0]) * pa * std::conj(pb) * c.vac[1];
    const double vacuum = std::norm(va) + std::norm(vb) + 2.0 * c.delta_window * vcross.real();
    e.se = -x2 * (aa + bb + coh.real() + coh_partner.real() + vacuum);

    e.gsb = -n * n * (aa + bb + ab + ba);
    e.total = e.esa + e.se + e.gsb;
    return e;
}

}  // namespace ppvac
