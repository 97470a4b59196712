#include "ppvac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppvac/constants.hpp"
#include "ppvac/errors.hpp"
#include "ppvac/parallel.hpp"

namespace ppvac {

namespace {

using cplx = std::complex<double>;

constexpr std::size_t kRowChunk = 32;
constexpr double kLifetimeWindow = 40.0;  // integrate |t| <= 40 gamma

// Rotating-phase table exp(i * rate * tau_j) on a uniform grid, by recurrence
// with periodic re-anchoring to keep the phase error at rounding level.
std::vector<cplx> phase_table(const UniformGrid& grid, double rate)
{
    std::vector<cplx> out(grid.points);
    const cplx step = std::polar(1.0, rate * grid.step);
    cplx cur{0.0, 0.0};
    for (std::size_t j = 0; j < grid.points; ++j) {
        if (j % 64 == 0)
            cur = std::polar(1.0, rate * grid.at(j));
        else
            cur *= step;
        out[j] = cur;
    }
    return out;
}

// Composite Simpson on [0, width] of cos(x s) exp(-s / decay) with `n` (even) intervals.
double damped_cosine_half(double x, double decay, double width, std::size_t n)
{
    const double h = width / static_cast<double>(n);
    const cplx rot = std::polar(std::exp(-h / decay), x * h);
    std::vector<double> terms(n + 1);
    cplx cur{1.0, 0.0};
    for (std::size_t j = 0; j <= n; ++j) {
        if (j % 256 == 0) {
            const double s = static_cast<double>(j) * h;
            cur = std::polar(std::exp(-s / decay), x * s);
        }
        const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        terms[j] = w * cur.real();
        cur *= rot;
    }
    return pairwise_sum(terms) * h / 3.0;
}

std::size_t even_at_least(double x)
{
    auto n = static_cast<std::size_t>(std::ceil(x));
    if (n < 2) n = 2;
    return n + (n % 2);
}

}  // namespace

void QuadratureConfig::validate() const
{
    if (time_points < kMinTimePoints)
        throw PreconditionError("quadrature needs at least " + std::to_string(kMinTimePoints)
                                + " time points per axis, got " + std::to_string(time_points));
    if (!(time_span >= 4.0))
        throw PreconditionError("quadrature time span must be at least 4 sigma, got " + std::to_string(time_span));
    if (mode_count < 16) throw PreconditionError("quadrature needs at least 16 modes");
    if (!(mode_span >= 3.0)) throw PreconditionError("mode grid span must be at least 3 bandwidths");
    if (!(regularization_gamma >= 0.0) || !std::isfinite(regularization_gamma))
        throw PreconditionError("regularization gamma must be positive (or 0 for the vacuum lifetime)");
}

double QuadratureConfig::gamma_for(const VacuumParams& vac) const
{
    return regularization_gamma > 0.0 ? regularization_gamma : vac.gamma;
}

cplx regularized_integral(double detuning, double gamma, std::size_t points_per_side)
{
    if (!(gamma > 0.0)) throw PreconditionError("regularization gamma must be positive");
    const std::size_t n = even_at_least(static_cast<double>(points_per_side));
    const double width = kLifetimeWindow * gamma;
    const double h = width / static_cast<double>(n);

    // Each half separately, so the cusp at t = 0 sits on a node.
    const auto half = [&](double sign) {
        const cplx rot = std::polar(std::exp(-h / gamma), -sign * detuning * h);
        std::vector<cplx> terms(n + 1);
        cplx cur{1.0, 0.0};
        for (std::size_t j = 0; j <= n; ++j) {
            if (j % 256 == 0) {
                const double s = static_cast<double>(j) * h;
                cur = std::polar(std::exp(-s / gamma), -sign * detuning * s);
            }
            const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            terms[j] = w * cur;
            cur *= rot;
        }
        return pairwise_sum(terms) * (h / 3.0);
    };
    return half(1.0) + half(-1.0);
}

PulseQuadrature::PulseQuadrature(const PulseSpec& pulse,
                                 const QuadratureConfig& cfg,
                                 std::size_t time_points,
                                 unsigned workers)
    : pulse_(pulse), workers_(std::max(1u, workers))
{
    cfg.validate();
    pulse.validate();
    if (time_points < QuadratureConfig::kMinTimePoints)
        throw PreconditionError("too few time points: " + std::to_string(time_points));

    amps_ = gaussian_amplitudes(pulse, cfg.mode_span, cfg.mode_count);
    grid_ = UniformGrid::centered(0.0, cfg.time_span * pulse.sigma, time_points);
    weights_ = grid_.trapezoid_weights();
    absorb_kernel_ = two_point_kernel(FieldOrdering::minus_plus);
    emit_kernel_ = two_point_kernel(FieldOrdering::plus_minus);

    const double to_rate = si::femtosecond / si::hbar;
    mode_rate_ = mode_field_amplitude(pulse, amps_.mode_spacing) * to_rate;

    // Rotating-frame envelope from the explicit mode sum.
    envelope_.assign(grid_.points, cplx{});
    parallel_for(grid_.points, workers_, [&](std::size_t j) {
        const double tau = grid_.at(j);
        std::vector<cplx> terms(amps_.size());
        for (std::size_t k = 0; k < amps_.size(); ++k)
            terms[k] = amps_.boson_amplitude(k) * std::polar(1.0, -(amps_.mode_freqs[k] - pulse_.omega_0) * tau);
        envelope_[j] = mode_rate_ * pairwise_sum(terms);
    });
}

cplx PulseQuadrature::contract(const std::vector<cplx>& outer,
                               const std::vector<cplx>& inner,
                               bool emission,
                               bool time_ordered) const
{
    const std::size_t n = grid_.points;
    const std::size_t chunks = (n + kRowChunk - 1) / kRowChunk;
    const cplx coeff = emission ? emit_kernel_.product : absorb_kernel_.product;
    std::vector<cplx> rows(n);

    parallel_for(chunks, workers_, [&](std::size_t c) {
        std::vector<cplx> terms(n);
        const std::size_t end = std::min(n, (c + 1) * kRowChunk);
        for (std::size_t a = c * kRowChunk; a < end; ++a) {
            // absorption: <E^-(t'_b) E^+(t_a)>; emission: <E^+(t'_b) E^-(t_a)>
            const cplx ea = emission ? std::conj(envelope_[a]) : envelope_[a];
            const std::size_t last = time_ordered ? a + 1 : n;
            for (std::size_t b = 0; b < last; ++b) {
                const cplx eb = emission ? envelope_[b] : std::conj(envelope_[b]);
                terms[b] = inner[b] * eb;
            }
            if (time_ordered) terms[a] *= 0.5;
            rows[a] = outer[a] * ea * pairwise_sum(std::span<const cplx>(terms.data(), last));
        }
    });
    return coeff * pairwise_sum(rows);
}

cplx PulseQuadrature::absorption_pair(double w1, double w2, bool time_ordered) const
{
    auto outer = phase_table(grid_, w1 - pulse_.omega_0);
    auto inner = phase_table(grid_, -(w2 - pulse_.omega_0));
    for (std::size_t j = 0; j < grid_.points; ++j) {
        outer[j] *= weights_[j];
        inner[j] *= weights_[j];
    }
    const cplx carrier = std::polar(1.0, (w1 - w2) * pulse_.arrival_time);
    return carrier * contract(outer, inner, false, time_ordered);
}

cplx PulseQuadrature::emission_pair_classical(double w1, double w2) const
{
    auto outer = phase_table(grid_, -(w1 - pulse_.omega_0));
    auto inner = phase_table(grid_, w2 - pulse_.omega_0);
    for (std::size_t j = 0; j < grid_.points; ++j) {
        outer[j] *= weights_[j];
        inner[j] *= weights_[j];
    }
    const cplx carrier = std::polar(1.0, -(w1 - w2) * pulse_.arrival_time);
    return carrier * contract(outer, inner, true, false);
}

cplx PulseQuadrature::emission_pair_vacuum_modes(double w1, double w2, double center, double gamma) const
{
    return vacuum_mode_matrix({w1, w2}, center, gamma)[1];
}

std::vector<cplx> PulseQuadrature::vacuum_mode_matrix(const std::vector<double>& freqs,
                                                      double center,
                                                      double gamma) const
{
    if (!(gamma > 0.0)) throw PreconditionError("regularization gamma must be positive");
    // Half-lifetime damping on each time argument; same step as the pulse grid.
    const double width = kLifetimeWindow * gamma;
    const std::size_t n = even_at_least(width / grid_.step);
    const double decay = 2.0 * gamma;
    const std::size_t m = amps_.size();
    const std::size_t f = freqs.size();

    // profile[i * m + k] = int ds exp(-i (w_i - w_k) s) exp(-|s| / (2 gamma)), real by symmetry
    std::vector<double> profile(f * m);
    parallel_for(f * m, workers_, [&](std::size_t idx) {
        const std::size_t i = idx / m, k = idx % m;
        profile[idx] = 2.0 * damped_cosine_half(freqs[i] - amps_.mode_freqs[k], decay, width, n);
    });

    const cplx scale = emit_kernel_.same_mode_extra * mode_rate_ * mode_rate_;
    std::vector<cplx> out(f * f);
    std::vector<double> terms(m);
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < f; ++j) {
            for (std::size_t k = 0; k < m; ++k) terms[k] = profile[i * m + k] * profile[j * m + k];
            out[i * f + j] = scale * std::polar(1.0, -(freqs[i] - freqs[j]) * center) * pairwise_sum(terms);
        }
    return out;
}

cplx PulseQuadrature::emission_pair_vacuum_delta(double w1, double w2, double center, double gamma) const
{
    // sum_k g_k^2 e^{-i w_k s} -> kappa delta(s) in the continuum limit
    const double kappa = si::hbar * (pulse_.omega_0 / si::femtosecond) / (2.0 * si::epsilon0 * si::c * pulse_.area);
    const double kappa_rate = kappa * si::femtosecond / (si::hbar * si::hbar);
    const cplx extra = emit_kernel_.same_mode_extra;
    return extra * kappa_rate * std::polar(1.0, -(w1 - w2) * center) * regularized_integral(w1 - w2, gamma);
}

namespace {

struct Selection {
    bool esa = true;
    bool se = true;
    bool vacuum = true;
    bool gsb = true;
};

OracleSample sample_components(const PumpProbeSetup& setup,
                               const QuadratureConfig& cfg,
                               double T,
                               std::size_t time_points,
                               unsigned workers,
                               Selection sel)
{
    setup.validate();
    cfg.validate();
    require_separated(T, min_waiting_time(setup.pump, setup.probe));

    PulseSpec probe = setup.probe;
    probe.arrival_time = setup.pump.arrival_time + T;
    const PulseQuadrature pump_q(setup.pump, cfg, time_points, workers);
    const PulseQuadrature probe_q(probe, cfg, time_points, workers);

    const ExcitonBasis& b = setup.basis;
    const double w[2] = {transition_frequency(b, Transition::alpha_g), transition_frequency(b, Transition::beta_g)};
    const double wf[2] = {transition_frequency(b, Transition::f_alpha), transition_frequency(b, Transition::f_beta)};
    const double mu[2] = {b.mu.alpha_g, b.mu.beta_g};
    const double muf[2] = {b.mu.f_alpha, b.mu.f_beta};

    OracleSample s;
    s.time_points = time_points;

    cplx pump_pair[2][2];
    if (sel.esa || sel.se || sel.vacuum)
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) pump_pair[m][n] = pump_q.absorption_pair(w[m], w[n], false);

    if (sel.esa) {
        cplx esa{0.0, 0.0};
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n)
                esa += muf[m] * mu[m] * muf[n] * mu[n] * pump_pair[m][n]
                       * probe_q.absorption_pair(wf[m], wf[n], false);
        s.esa = esa.real();
    }

    if (sel.se || sel.vacuum) {
        const double gamma = cfg.gamma_for(setup.vacuum);
        const double center = setup.pump.arrival_time;
        cplx cl{0.0, 0.0}, modes{0.0, 0.0}, delta{0.0, 0.0};
        std::vector<cplx> vac;
        if (sel.vacuum) vac = probe_q.vacuum_mode_matrix({w[0], w[1]}, center, gamma);
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) {
                const double dip = mu[m] * mu[m] * mu[n] * mu[n];
                if (sel.se) cl += dip * pump_pair[m][n] * probe_q.emission_pair_classical(w[m], w[n]);
                if (sel.vacuum) {
                    modes += dip * pump_pair[m][n] * vac[2 * m + n];
                    delta += dip * pump_pair[m][n] * probe_q.emission_pair_vacuum_delta(w[m], w[n], center, gamma);
                }
            }
        s.se_classical = -cl.real();
        s.se_vacuum_modes = -modes.real();
        s.se_vacuum_delta = -delta.real();
    }

    if (sel.gsb) {
        cplx probe_sum{0.0, 0.0}, pump_sum{0.0, 0.0};
        for (int m = 0; m < 2; ++m) {
            probe_sum += mu[m] * mu[m] * probe_q.absorption_pair(w[m], w[m], false);
            pump_sum += mu[m] * mu[m] * pump_q.absorption_pair(w[m], w[m], true);
        }
        s.gsb = 2.0 * (-(probe_sum * pump_sum)).real();
    }
    return s;
}

ConvergedValue converge(double coarse, double fine, double scale)
{
    ConvergedValue v;
    v.value = fine;
    v.coarse = coarse;
    const double denom = std::max({std::abs(fine), std::abs(coarse), 1e-12 * scale});
    v.drift = denom > 0.0 ? std::abs(fine - coarse) / denom : 0.0;
    v.converged = v.drift <= kConvergenceTolerance;
    return v;
}

OracleComponents evaluate(const PumpProbeSetup& setup,
                          const QuadratureConfig& cfg,
                          double T,
                          unsigned workers,
                          Selection sel)
{
    const OracleSample lo = sample_components(setup, cfg, T, cfg.time_points, workers, sel);
    const OracleSample hi = sample_components(setup, cfg, T, 2 * cfg.time_points, workers, sel);
    const double scale = std::max(
        {std::abs(hi.esa), std::abs(hi.se_classical), std::abs(hi.se_vacuum_modes), std::abs(hi.gsb)});

    OracleComponents out;
    out.T = T;
    out.time_points = 2 * cfg.time_points;
    out.esa = converge(lo.esa, hi.esa, scale);
    out.se_classical = converge(lo.se_classical, hi.se_classical, scale);
    out.se_vacuum_modes = converge(lo.se_vacuum_modes, hi.se_vacuum_modes, scale);
    out.se_vacuum_delta = converge(lo.se_vacuum_delta, hi.se_vacuum_delta, scale);
    out.gsb = converge(lo.gsb, hi.gsb, scale);
    return out;
}

void require_converged(const ConvergedValue& v, const char* name, std::size_t points)
{
    if (v.converged) return;
    throw ConvergenceError(std::string(name) + " quadrature not converged: " + std::to_string(points)
                               + " vs " + std::to_string(2 * points) + " time points give "
                               + std::to_string(v.coarse) + " vs " + std::to_string(v.value)
                               + " (relative drift " + std::to_string(v.drift) + ")",
                           v.coarse,
                           v.value);
}

}  // namespace

OracleSample oracle_sample(const PumpProbeSetup& setup,
                           const QuadratureConfig& cfg,
                           double T,
                           std::size_t time_points,
                           unsigned workers)
{
    return sample_components(setup, cfg, T, time_points, workers, Selection{});
}

bool OracleComponents::converged() const
{
    return esa.converged && se_classical.converged && se_vacuum_modes.converged && se_vacuum_delta.converged
           && gsb.converged;
}

OracleComponents oracle_evaluate(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers)
{
    return evaluate(setup, cfg, T, workers, Selection{});
}

double oracle_esa(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers)
{
    const auto r = evaluate(setup, cfg, T, workers, Selection{true, false, false, false});
    require_converged(r.esa, "ESA", cfg.time_points);
    return r.esa.value;
}

OracleSE oracle_se(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers)
{
    const auto r = evaluate(setup, cfg, T, workers, Selection{false, true, true, false});
    require_converged(r.se_classical, "classical SE", cfg.time_points);
    require_converged(r.se_vacuum_modes, "vacuum SE (mode sum)", cfg.time_points);
    OracleSE se;
    se.classical = r.se_classical.value;
    se.vacuum_modes = r.se_vacuum_modes.value;
    se.vacuum_delta = r.se_vacuum_delta.value;
    se.mode_delta_discrepancy = relative_deviation(se.vacuum_delta, se.vacuum_modes);
    return se;
}

double oracle_gsb(const PumpProbeSetup& setup, const QuadratureConfig& cfg, double T, unsigned workers)
{
    const auto r = evaluate(setup, cfg, T, workers, Selection{false, false, false, true});
    require_converged(r.gsb, "GSB", cfg.time_points);
    return r.gsb.value;
}

StimulatedEmission oracle_se_molecules(const PumpProbeSetup& setup,
                                       const QuadratureConfig& cfg,
                                       double T,
                                       const std::vector<Vec3>& positions,
                                       const Vec3& k_pump,
                                       const Vec3& k_probe,
                                       unsigned workers)
{
    if (positions.empty() || positions.size() > 3)
        throw PreconditionError("the direct ensemble oracle handles 1 to 3 molecules, got "
                                + std::to_string(positions.size()));
    const OracleSE single = oracle_se(setup, cfg, T, workers);

    // Each molecule's emission amplitude picks up exp(i (k_P - k_P') . r_j);
    // the signal is the full overlap sum over molecule pairs.
    std::vector<cplx> phases;
    for (const auto& r : positions) {
        double arg = 0.0;
        for (int d = 0; d < 3; ++d) arg += (k_pump[d] - k_probe[d]) * r[d];
        phases.push_back(std::polar(1.0, arg));
    }
    cplx overlap{0.0, 0.0};
    for (const auto& pi_ : phases)
        for (const auto& pj : phases) overlap += std::conj(pi_) * pj;

    return StimulatedEmission{overlap.real() * single.classical, overlap.real() * single.vacuum_modes};
}

double relative_deviation(double reference, double value)
{
    const double diff = std::abs(value - reference);
    if (reference == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / std::abs(reference);
}

ComparisonRecord compare_report(const SignalComponents& analytic,
                                const OracleComponents& oracle,
                                const QuadratureConfig& cfg,
                                const ComparisonTolerances& tol)
{
    ComparisonRecord rec;
    rec.T = analytic.T;
    rec.config = cfg;

    const auto add = [&](const char* name, double a, const ConvergedValue& o, double tolerance) {
        ComponentDeviation d;
        d.name = name;
        d.analytic = a;
        d.oracle = o.value;
        d.abs_dev = std::abs(o.value - a);
        d.rel_dev = relative_deviation(a, o.value);
        d.tolerance = tolerance;
        d.drift = o.drift;
        d.converged = o.drift <= tol.convergence;
        d.within = d.rel_dev <= tolerance;
        rec.converged = rec.converged && d.converged;
        rec.passed = rec.passed && d.within && d.converged;
        rec.components.push_back(d);
    };
    add("s_esa", analytic.s_esa, oracle.esa, tol.classical);
    add("s_se_classical", analytic.s_se_classical, oracle.se_classical, tol.classical);
    add("s_se_vacuum", analytic.s_se_vacuum, oracle.se_vacuum_modes, tol.vacuum);
    add("s_gsb", analytic.s_gsb, oracle.gsb, tol.classical);
    rec.mode_delta_discrepancy = relative_deviation(oracle.se_vacuum_delta.value, oracle.se_vacuum_modes.value);
    return rec;
}

nlohmann::json to_json(const QuadratureConfig& cfg)
{
    return nlohmann::json{{"time_points", cfg.time_points},
                          {"time_span", cfg.time_span},
                          {"mode_count", cfg.mode_count},
                          {"mode_span", cfg.mode_span},
                          {"regularization_gamma", cfg.regularization_gamma}};
}

nlohmann::json to_json(const ComparisonRecord& record)
{
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : record.components) {
        comps.push_back({{"name", c.name},
                         {"analytic", c.analytic},
                         {"oracle", c.oracle},
                         {"abs_dev", c.abs_dev},
                         {"rel_dev", c.rel_dev},
                         {"tolerance", c.tolerance},
                         {"drift", c.drift},
                         {"converged", c.converged},
                         {"within_tolerance", c.within}});
    }
    return nlohmann::json{{"T", record.T},
                          {"quadrature", to_json(record.config)},
                          {"components", comps},
                          {"mode_delta_discrepancy", record.mode_delta_discrepancy},
                          {"converged", record.converged},
                          {"passed", record.passed}};
}

}  // namespace ppvac
