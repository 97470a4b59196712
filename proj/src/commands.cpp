#include "ppvac/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "ppvac/constants.hpp"
#include "ppvac/errors.hpp"
#include "ppvac/parallel.hpp"

namespace ppvac {

namespace {

std::string num(double v)
{
    return fmt::format("{:.17g}", v);
}

std::string csv_header(const RunConfig& cfg, const std::string& command)
{
    std::string h = "# ppvac " + command + "\n";
    h += "# config_sha256: " + config_hash(cfg) + "\n";
    return h;
}

bool same_vector(const Vec3& a, const Vec3& b)
{
    return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

std::vector<double> waiting_time_grid(double start, double span, std::size_t points)
{
    std::vector<double> t(points);
    for (std::size_t i = 0; i < points; ++i)
        t[i] = start + span * static_cast<double>(i) / static_cast<double>(points - 1);
    return t;
}

void write_output(const std::string& content, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + path + "' for writing");
    f << content;
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

nlohmann::json json_or_null(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

double ensemble_x_squared(const RunConfig& cfg, std::size_t n_mol, const Vec3& probe_direction)
{
    cfg.require({"pump", "probe"}, "phase sum");
    PulseSpec probe = *cfg.probe;
    probe.direction = probe_direction;
    const std::uint64_t seed = cfg.ensemble ? cfg.ensemble->seed : 0;
    return sampled_phase_sum(n_mol, cfg.geometry(), wavevector(*cfg.pump), wavevector(probe), seed, 1).x_squared;
}

std::vector<SignalRow> compute_signal_rows(const RunConfig& cfg, unsigned workers)
{
    cfg.require({"dimer", "pump", "probe", "vacuum", "sweep"}, "signal");
    const PumpProbeSetup base = cfg.setup();
    const SweepSpec& sweep = *cfg.sweep;
    const auto values = sweep.values();
    const bool many = cfg.ensemble.has_value() || sweep.axis == SweepAxis::n_mol || sweep.axis == SweepAxis::angle;

    std::vector<SignalRow> rows(values.size());
    parallel_for(values.size(), workers, [&](std::size_t i) {
        PumpProbeSetup s = base;
        double v = values[i];
        double T = sweep.waiting_time;
        std::size_t n = cfg.ensemble ? cfg.ensemble->n_mol : 1;
        switch (sweep.axis) {
        case SweepAxis::T: T = v; break;
        case SweepAxis::n_mol:
            n = static_cast<std::size_t>(std::llround(v));
            v = static_cast<double>(n);
            break;
        case SweepAxis::photon_number:
            if (sweep.target != PulseTarget::probe) s.pump.photon_number = v;
            if (sweep.target != PulseTarget::pump) s.probe.photon_number = v;
            break;
        case SweepAxis::angle: s.probe.direction = direction_at_angle(v); break;
        }
        rows[i].sweep_value = v;
        if (many) {
            const double x2 = ensemble_x_squared(cfg, n, s.probe.direction);
            rows[i].signal = s_total_ensemble(s, T, x2, static_cast<double>(n));
        } else {
            rows[i].signal = s_total_single(s, T);
        }
    });
    return rows;
}

ValidationResult run_validation(const RunConfig& cfg, unsigned workers)
{
    cfg.require({"dimer", "pump", "probe", "vacuum", "oracle"}, "validate");
    const PumpProbeSetup setup = cfg.setup();
    const OracleConfig& oc = *cfg.oracle;

    std::vector<double> times;
    if (cfg.sweep && cfg.sweep->axis == SweepAxis::T)
        times = cfg.sweep->values();
    else if (oc.waiting_time)
        times = {*oc.waiting_time};
    else
        throw ConfigError("validate needs a T sweep or oracle.waiting_time");

    ValidationResult result;
    for (double T : times) {
        const SignalComponents analytic = s_total_single(setup, T);
        OracleComponents oracle = oracle_evaluate(setup, oc.quadrature, T, workers);
        if (!cfg.vacuum_enabled) {
            oracle.se_vacuum_modes = ConvergedValue{};
            oracle.se_vacuum_delta = ConvergedValue{};
        }
        result.records.push_back(compare_report(analytic, oracle, oc.quadrature, oc.tolerances));
        result.passed = result.passed && result.records.back().passed;
    }
    return result;
}

EnsembleSummary run_ensemble(const RunConfig& cfg, unsigned workers)
{
    cfg.require({"dimer", "pump", "probe", "vacuum", "ensemble"}, "ensemble");
    const PumpProbeSetup setup = cfg.setup();
    const EnsembleConfig& ec = *cfg.ensemble;
    const Cylinder geometry = cfg.geometry();
    const Vec3 k_pump = wavevector(*cfg.pump);
    const Vec3 k_probe = wavevector(*cfg.probe);

    EnsembleSummary s;
    s.n_mol = ec.n_mol;
    s.collinear = same_vector(k_pump, k_probe);
    s.seeds.resize(ec.seeds);
    s.x_squared.resize(ec.seeds);
    parallel_for(ec.seeds, workers, [&](std::size_t i) {
        s.seeds[i] = ec.seed + i;
        s.x_squared[i] = sampled_phase_sum(ec.n_mol, geometry, k_pump, k_probe, s.seeds[i], 1).x_squared;
    });

    s.mean = pairwise_sum(s.x_squared) / static_cast<double>(ec.seeds);
    if (ec.seeds > 1) {
        std::vector<double> dev(ec.seeds);
        for (std::size_t i = 0; i < ec.seeds; ++i) dev[i] = (s.x_squared[i] - s.mean) * (s.x_squared[i] - s.mean);
        s.std_dev = std::sqrt(pairwise_sum(dev) / static_cast<double>(ec.seeds - 1));
        s.standard_error = s.std_dev / std::sqrt(static_cast<double>(ec.seeds));
    }

    try {
        s.superradiance_ratio = superradiance_ratio(setup, static_cast<double>(ec.n_mol), s.mean);
        s.ratio_note = "collinear-resonant crossover estimate Gamma/sigma omits the sqrt(pi) of eta^2";
    } catch (const UnsupportedRegimeError& e) {
        s.ratio_note = e.what();
    } catch (const DomainError& e) {
        s.ratio_note = e.what();
    }

    const double period = beat_period(setup.basis);
    if (!std::isfinite(period)) {
        s.visibility_note = "degenerate excitons: no quantum beats";
        return s;
    }
    const double t0 = min_waiting_time(setup.pump, setup.probe);
    const auto times = waiting_time_grid(t0, 4.0 * period, 257);
    std::vector<std::size_t> counts = ec.visibility_n_mol;
    if (counts.empty()) counts.push_back(ec.n_mol);
    try {
        for (std::size_t n : counts) {
            VisibilityPoint p;
            p.n_mol = n;
            p.x_squared = ensemble_x_squared(cfg, n, cfg.probe->direction);
            const double nm = static_cast<double>(n);
            const auto with = ensemble_total_sweep(setup, times, nm, p.x_squared, true);
            const auto without = ensemble_total_sweep(setup, times, nm, p.x_squared, false);
            p.visibility = beat_visibility(times, with, period);
            p.visibility_without_vacuum = beat_visibility(times, without, period);
            s.visibility.push_back(p);
        }
    } catch (const UnsupportedRegimeError& e) {
        s.visibility.clear();
        s.visibility_note = e.what();
    }
    return s;
}

std::string render_signal(const RunConfig& cfg, const std::vector<SignalRow>& rows, OutputFormat format)
{
    const std::string axis = to_string(cfg.sweep->axis);
    if (format == OutputFormat::json) {
        nlohmann::json j;
        j["command"] = "signal";
        j["config_sha256"] = config_hash(cfg);
        j["axis"] = axis;
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"sweep_value", r.sweep_value},
                                 {"s_esa", r.signal.s_esa},
                                 {"s_se_classical", r.signal.s_se_classical},
                                 {"s_se_vacuum", r.signal.s_se_vacuum},
                                 {"s_gsb", r.signal.s_gsb},
                                 {"s_total", r.signal.s_total}});
        return j.dump(2) + "\n";
    }
    std::string s = csv_header(cfg, "signal");
    s += "# axis: " + axis + "\n";
    s += "sweep_value,s_esa,s_se_classical,s_se_vacuum,s_gsb,s_total\n";
    for (const auto& r : rows)
        s += fmt::format("{},{},{},{},{},{}\n", num(r.sweep_value), num(r.signal.s_esa),
                         num(r.signal.s_se_classical), num(r.signal.s_se_vacuum), num(r.signal.s_gsb),
                         num(r.signal.s_total));
    return s;
}

nlohmann::json validation_json(const RunConfig& cfg, const ValidationResult& result)
{
    nlohmann::json j;
    j["command"] = "validate";
    j["config_sha256"] = config_hash(cfg);
    j["parameters"] = serialize_config(cfg, false);
    j["passed"] = result.passed;
    j["records"] = nlohmann::json::array();
    for (const auto& r : result.records) j["records"].push_back(to_json(r));
    return j;
}

std::string render_validation(const RunConfig& cfg, const ValidationResult& result, OutputFormat format)
{
    if (format == OutputFormat::json) return validation_json(cfg, result).dump(2) + "\n";
    std::string s = csv_header(cfg, "validate");
    s += "T,component,analytic,oracle,abs_dev,rel_dev,tolerance,drift,converged,within_tolerance\n";
    for (const auto& r : result.records)
        for (const auto& c : r.components)
            s += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", num(r.T), c.name, num(c.analytic), num(c.oracle),
                             num(c.abs_dev), num(c.rel_dev), num(c.tolerance), num(c.drift), c.converged ? 1 : 0,
                             c.within ? 1 : 0);
    return s;
}

nlohmann::json ensemble_json(const RunConfig& cfg, const EnsembleSummary& s)
{
    nlohmann::json j;
    j["command"] = "ensemble";
    j["config_sha256"] = config_hash(cfg);
    j["n_mol"] = s.n_mol;
    j["collinear"] = s.collinear;
    j["seeds"] = s.seeds;
    j["x_squared"] = s.x_squared;
    const double n = static_cast<double>(s.n_mol);
    j["x_squared_mean"] = s.mean;
    j["x_squared_std"] = s.std_dev;
    j["x_squared_standard_error"] = s.standard_error;
    j["mean_over_n_mol"] = s.mean / n;
    j["mean_over_n_mol_squared"] = s.mean / (n * n);
    j["superradiance_ratio"] = json_or_null(s.superradiance_ratio);
    j["superradiance_note"] = s.ratio_note;
    j["visibility"] = nlohmann::json::array();
    for (const auto& p : s.visibility)
        j["visibility"].push_back({{"n_mol", p.n_mol},
                                   {"x_squared", p.x_squared},
                                   {"visibility", p.visibility},
                                   {"visibility_without_vacuum", p.visibility_without_vacuum}});
    if (!s.visibility_note.empty()) j["visibility_note"] = s.visibility_note;
    return j;
}

std::string render_ensemble(const RunConfig& cfg, const EnsembleSummary& summary, OutputFormat format)
{
    if (format == OutputFormat::json) return ensemble_json(cfg, summary).dump(2) + "\n";
    std::string s = csv_header(cfg, "ensemble");
    s += "seed,x_squared,x_squared_over_n_mol\n";
    const double n = static_cast<double>(summary.n_mol);
    for (std::size_t i = 0; i < summary.seeds.size(); ++i)
        s += fmt::format("{},{},{}\n", summary.seeds[i], num(summary.x_squared[i]), num(summary.x_squared[i] / n));
    return s;
}

nlohmann::json proposal_json(const ProposalReport& r)
{
    nlohmann::json j;
    j["command"] = "proposal-report";
    j["parameters"] = {{"pulse_energy_J", r.params.pulse_energy},
                       {"wavelength_m", r.params.wavelength},
                       {"spot_diameter_m", r.params.spot_diameter},
                       {"sigma_fs", r.params.sigma},
                       {"concentration_mol_per_L", r.params.concentration},
                       {"gamma_fs", r.gamma}};
    j["entries"] = nlohmann::json::array();
    for (const auto& e : r.entries)
        j["entries"].push_back({{"name", e.name},
                                {"value", e.value},
                                {"unit", e.unit},
                                {"quoted", json_or_null(e.quoted)},
                                {"relative_gap", json_or_null(e.relative_gap())},
                                {"note", e.note}});
    j["superradiance"] = {
        {"ratio_resonant", r.ratio_resonant},
        {"ratio_quoted", r.ratio_quoted},
        {"within_factor_two", r.ratio_within_factor_two},
        {"ratio_dimer", json_or_null(r.ratio_dimer)},
        {"convention_note",
         "the quoted ~20 is Gamma/sigma; the implemented ratio carries eta^2 proportional to sqrt(pi) sigma, "
         "so the resonant value is Gamma/(sqrt(pi) sigma) times N_mol/N_P'"}};
    return j;
}

std::string proposal_text(const ProposalReport& r)
{
    std::string s = "Pump-probe feasibility estimate\n";
    s += fmt::format("{:<26} {:>14} {:<10} {:>10} {:>8}  {}\n", "quantity", "value", "unit", "quoted", "gap", "note");
    for (const auto& e : r.entries) {
        const auto gap = e.relative_gap();
        s += fmt::format("{:<26} {:>14.5g} {:<10} {:>10} {:>8}  {}\n", e.name, e.value, e.unit,
                         e.quoted ? fmt::format("{:.3g}", *e.quoted) : std::string("-"),
                         gap ? fmt::format("{:.1f}%", 100.0 * *gap) : std::string("-"), e.note);
    }
    s += fmt::format("\nsuperradiance ratio (resonant) {:.4g} vs quoted ~{:.0f}: {}\n", r.ratio_resonant,
                     r.ratio_quoted, r.ratio_within_factor_two ? "within a factor of 2" : "NOT within a factor of 2");
    s += "the quoted figure equals Gamma/sigma; the computed ratio carries the sqrt(pi) from eta^2\n";
    return s;
}

std::string proposal_csv(const ProposalReport& r)
{
    std::string s = "# ppvac proposal-report\nname,value,unit,quoted,relative_gap\n";
    for (const auto& e : r.entries) {
        const auto gap = e.relative_gap();
        s += fmt::format("{},{},{},{},{}\n", e.name, num(e.value), e.unit, e.quoted ? num(*e.quoted) : "",
                         gap ? num(*gap) : "");
    }
    return s;
}

int run_command(const std::string& command, const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        RunConfig cfg;
        if (options.config_path)
            cfg = load_config(*options.config_path);
        else if (command != "proposal-report")
            throw ConfigError("--config is required for '" + command + "'");

        if (options.seed && cfg.ensemble) cfg.ensemble->seed = *options.seed;
        const std::string path = options.output_path.value_or(cfg.output.path);
        std::optional<OutputFormat> format;
        if (options.format)
            format = parse_format(*options.format);
        else if (cfg.output.format_given)
            format = cfg.output.format;
        const unsigned workers = std::max(1u, options.workers);

        if (command == "signal") {
            const auto rows = compute_signal_rows(cfg, workers);
            write_output(render_signal(cfg, rows, format.value_or(OutputFormat::csv)), path, out);
            return kExitOk;
        }
        if (command == "validate") {
            const auto result = run_validation(cfg, workers);
            write_output(render_validation(cfg, result, format.value_or(OutputFormat::json)), path, out);
            for (const auto& r : result.records)
                for (const auto& c : r.components)
                    if (!c.within || !c.converged)
                        err << fmt::format("FAIL T={} {}: analytic {} oracle {} rel_dev {:.3g} (tol {:.3g}) drift "
                                           "{:.3g}{}\n",
                                           r.T, c.name, c.analytic, c.oracle, c.rel_dev, c.tolerance, c.drift,
                                           c.converged ? "" : " [not converged]");
            return result.passed ? kExitOk : kExitValidationFailure;
        }
        if (command == "ensemble") {
            const auto summary = run_ensemble(cfg, workers);
            write_output(render_ensemble(cfg, summary, format.value_or(OutputFormat::json)), path, out);
            return kExitOk;
        }
        if (command == "proposal-report") {
            ExperimentConfig exp = cfg.experiment.value_or(ExperimentConfig{});
            const auto report = proposal_report(exp.params, exp.gamma, cfg.dimer.value_or(proposal_dimer()));
            if (!path.empty()) {
                write_output(format == OutputFormat::csv ? proposal_csv(report) : proposal_json(report).dump(2) + "\n",
                             path, out);
                out << proposal_text(report);
            } else if (format == OutputFormat::json) {
                out << proposal_json(report).dump(2) << "\n";
            } else if (format == OutputFormat::csv) {
                out << proposal_csv(report);
            } else {
                out << proposal_text(report);
            }
            return kExitOk;
        }
        throw ConfigError("unknown command '" + command + "'");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
    } catch (const PreconditionError& e) {
        err << "invalid parameters: " << e.what() << "\n";
    } catch (const UnsupportedRegimeError& e) {
        err << "unsupported regime: " << e.what() << "\n";
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
    }
    return kExitConfigError;
}

}  // namespace ppvac
