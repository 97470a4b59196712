#include "ppvac/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "ppvac/constants.hpp"
#include "ppvac/errors.hpp"

namespace ppvac {

namespace {

std::string line_of(const YAML::Node& node)
{
    const auto mark = node.Mark();
    if (mark.line < 0) return "";
    return " (line " + std::to_string(mark.line + 1) + ")";
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Splits "<number> <unit>" and parses the number strictly.
std::pair<double, std::string> split_quantity(const std::string& text)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr == t.data()) throw ConfigError("cannot read a number from '" + text + "'");
    return {value, trim(std::string(ptr, t.data() + t.size()))};
}

std::string num(double v)
{
    return fmt::format("{:.17g}", v);
}

/// One mapping section; tracks which keys were consumed so leftovers can be rejected.
class Section {
public:
    Section(YAML::Node node, std::string name) : node_(std::move(node)), name_(std::move(name))
    {
        if (!node_.IsMap()) throw ConfigError("section '" + name_ + "' must be a mapping" + line_of(node_));
    }

    bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

    YAML::Node get(const std::string& key)
    {
        used_.insert(key);
        const YAML::Node n = node_[key];
        if (!n) throw ConfigError("section '" + name_ + "' is missing required key '" + key + "'" + line_of(node_));
        return n;
    }

    double number(const std::string& key)
    {
        const YAML::Node n = get(key);
        if (!n.IsScalar()) throw error(key, n, "expected a number");
        try {
            const auto [v, unit] = split_quantity(n.Scalar());
            if (!unit.empty()) throw error(key, n, "unexpected unit '" + unit + "'");
            return v;
        } catch (const ConfigError& e) {
            throw error(key, n, e.what());
        }
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::uint64_t integer(const std::string& key)
    {
        const YAML::Node n = get(key);
        try {
            const std::string s = trim(n.Scalar());
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (!n.IsScalar() || ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("");
            return v;
        } catch (const std::exception&) {
            throw error(key, n, "expected a non-negative integer");
        }
    }

    std::string text(const std::string& key)
    {
        const YAML::Node n = get(key);
        if (!n.IsScalar()) throw error(key, n, "expected a string");
        return n.Scalar();
    }

    bool boolean(const std::string& key)
    {
        const YAML::Node n = get(key);
        try {
            return n.as<bool>();
        } catch (const YAML::Exception&) {
            throw error(key, n, "expected true or false");
        }
    }

    double frequency(const std::string& key)
    {
        const YAML::Node n = get(key);
        try {
            return parse_frequency(n.Scalar());
        } catch (const ConfigError& e) {
            throw error(key, n, e.what());
        }
    }

    double dipole(const std::string& key)
    {
        const YAML::Node n = get(key);
        try {
            return parse_dipole(n.Scalar());
        } catch (const ConfigError& e) {
            throw error(key, n, e.what());
        }
    }

    double length_quantity(const std::string& key)
    {
        const YAML::Node n = get(key);
        try {
            const auto [v, unit] = split_quantity(n.Scalar());
            if (unit == "nm") return v * 1e-9;
            if (unit == "m") return v;
            throw ConfigError("length needs a unit suffix 'nm' or 'm'");
        } catch (const ConfigError& e) {
            throw error(key, n, e.what());
        }
    }

    ConfigError error(const std::string& key, const YAML::Node& n, const std::string& what) const
    {
        return ConfigError(name_ + "." + key + ": " + what + line_of(n));
    }

    /// Rejects any key that no accessor asked for.
    void finish() const
    {
        for (const auto& kv : node_) {
            const std::string key = kv.first.Scalar();
            if (!used_.count(key))
                throw ConfigError("unknown key '" + key + "' in section '" + name_ + "'" + line_of(kv.first));
        }
    }

    const YAML::Node& node() const { return node_; }

private:
    YAML::Node node_;
    std::string name_;
    std::set<std::string> used_;
};

DimerSpec parse_dimer(Section s)
{
    DimerSpec d;
    d.omega_a = s.frequency("omega_a");
    d.omega_b = s.frequency("omega_b");
    d.coupling_j = s.has("coupling_j") ? s.frequency("coupling_j") : 0.0;
    d.mu_ag = s.dipole("mu_ag");
    d.mu_bg = s.dipole("mu_bg");
    s.finish();
    d.validate();
    return d;
}

PulseSpec parse_pulse(Section s, const std::string& name)
{
    PulseSpec p;
    p.omega_0 = s.frequency("omega_0");
    p.sigma = s.number("sigma");
    p.photon_number = s.number("photon_number");
    p.arrival_time = s.number_or("arrival_time", 0.0);

    if (s.has("direction") && s.has("angle"))
        throw ConfigError("section '" + name + "' gives both 'direction' and 'angle'" + line_of(s.node()));
    if (s.has("direction")) {
        const YAML::Node n = s.get("direction");
        if (!n.IsSequence() || n.size() != 3) throw s.error("direction", n, "expected a list of 3 numbers");
        Vec3 v{};
        for (std::size_t i = 0; i < 3; ++i) {
            try {
                v[i] = n[i].as<double>();
            } catch (const YAML::Exception&) {
                throw s.error("direction", n, "expected a list of 3 numbers");
            }
        }
        const double norm = std::hypot(v[0], v[1], v[2]);
        if (!(norm > 0.0)) throw s.error("direction", n, "direction must be non-zero");
        if (std::abs(norm - 1.0) > 1e-12)
            for (auto& x : v) x /= norm;
        p.direction = v;
    } else if (s.has("angle")) {
        p.direction = direction_at_angle(s.number("angle"));
    }

    if (s.has("area") && s.has("spot_diameter"))
        throw ConfigError("section '" + name + "' gives both 'area' and 'spot_diameter'" + line_of(s.node()));
    if (s.has("spot_diameter")) {
        const double d = s.number("spot_diameter");
        p.area = pi * d * d / 4.0;
    } else {
        p.area = s.number("area");
    }
    s.finish();
    try {
        p.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError("section '" + name + "': " + e.what());
    }
    return p;
}

SweepSpec parse_sweep(Section s)
{
    SweepSpec sw;
    const std::string axis = s.text("axis");
    if (axis == "T")
        sw.axis = SweepAxis::T;
    else if (axis == "n_mol")
        sw.axis = SweepAxis::n_mol;
    else if (axis == "photon_number")
        sw.axis = SweepAxis::photon_number;
    else if (axis == "angle")
        sw.axis = SweepAxis::angle;
    else
        throw s.error("axis", s.node()["axis"], "expected one of T, n_mol, photon_number, angle");
    sw.start = s.number("start");
    sw.stop = s.number("stop");
    sw.points = static_cast<std::size_t>(s.integer("points"));
    if (s.has("spacing")) {
        const std::string sp = s.text("spacing");
        if (sp != "linear" && sp != "log") throw s.error("spacing", s.node()["spacing"], "expected linear or log");
        sw.log_spacing = sp == "log";
    }
    if (sw.axis != SweepAxis::T) sw.waiting_time = s.number("waiting_time");
    if (s.has("target")) {
        const std::string t = s.text("target");
        if (t == "pump")
            sw.target = PulseTarget::pump;
        else if (t == "probe")
            sw.target = PulseTarget::probe;
        else if (t == "both")
            sw.target = PulseTarget::both;
        else
            throw s.error("target", s.node()["target"], "expected pump, probe or both");
    }
    s.finish();
    try {
        sw.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("section 'sweep': ") + e.what());
    }
    return sw;
}

EnsembleConfig parse_ensemble(Section s)
{
    EnsembleConfig e;
    e.n_mol = static_cast<std::size_t>(s.integer("n_mol"));
    if (s.has("diameter") || s.has("length")) {
        Cylinder c;
        c.diameter = s.number("diameter");
        c.length = s.number("length");
        e.geometry = c;
    }
    if (s.has("seed")) e.seed = s.integer("seed");
    if (s.has("seeds")) e.seeds = static_cast<std::size_t>(s.integer("seeds"));
    if (s.has("visibility_n_mol")) {
        const YAML::Node n = s.get("visibility_n_mol");
        if (!n.IsSequence()) throw s.error("visibility_n_mol", n, "expected a list of molecule counts");
        for (const auto& item : n) {
            try {
                e.visibility_n_mol.push_back(item.as<std::size_t>());
            } catch (const YAML::Exception&) {
                throw s.error("visibility_n_mol", item, "expected a positive integer");
            }
        }
    }
    s.finish();
    try {
        e.validate();
    } catch (const PreconditionError& err) {
        throw ConfigError(std::string("section 'ensemble': ") + err.what());
    }
    return e;
}

OracleConfig parse_oracle(Section s)
{
    OracleConfig o;
    auto& q = o.quadrature;
    if (s.has("time_points")) q.time_points = static_cast<std::size_t>(s.integer("time_points"));
    q.time_span = s.number_or("time_span", q.time_span);
    if (s.has("mode_count")) q.mode_count = static_cast<std::size_t>(s.integer("mode_count"));
    q.mode_span = s.number_or("mode_span", q.mode_span);
    q.regularization_gamma = s.number_or("regularization_gamma", q.regularization_gamma);
    o.tolerances.classical = s.number_or("classical_tolerance", o.tolerances.classical);
    o.tolerances.vacuum = s.number_or("vacuum_tolerance", o.tolerances.vacuum);
    if (s.has("waiting_time")) o.waiting_time = s.number("waiting_time");
    s.finish();
    try {
        q.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("section 'oracle': ") + e.what());
    }
    if (!(o.tolerances.classical > 0.0) || !(o.tolerances.vacuum > 0.0))
        throw ConfigError("section 'oracle': tolerances must be positive");
    return o;
}

ExperimentConfig parse_experiment(Section s)
{
    ExperimentConfig e;
    auto& p = e.params;
    p.pulse_energy = s.number_or("pulse_energy", p.pulse_energy);
    if (s.has("wavelength")) p.wavelength = s.length_quantity("wavelength");
    p.spot_diameter = s.number_or("spot_diameter", p.spot_diameter);
    p.sigma = s.number_or("sigma", p.sigma);
    p.concentration = s.number_or("concentration", p.concentration);
    e.gamma = s.number_or("gamma", e.gamma);
    s.finish();
    try {
        p.validate();
    } catch (const PreconditionError& err) {
        throw ConfigError(std::string("section 'experiment': ") + err.what());
    }
    if (!(e.gamma > 0.0)) throw ConfigError("section 'experiment': gamma must be positive");
    return e;
}

void emit_pulse(std::ostringstream& os, const char* name, const PulseSpec& p)
{
    os << name << ":\n";
    os << "  omega_0: \"" << num(p.omega_0) << " rad/fs\"\n";
    os << "  sigma: " << num(p.sigma) << "\n";
    os << "  photon_number: " << num(p.photon_number) << "\n";
    os << "  arrival_time: " << num(p.arrival_time) << "\n";
    os << "  direction: [" << num(p.direction[0]) << ", " << num(p.direction[1]) << ", " << num(p.direction[2])
       << "]\n";
    os << "  area: " << num(p.area) << "\n";
}

}  // namespace

std::string to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::T: return "T";
    case SweepAxis::n_mol: return "n_mol";
    case SweepAxis::photon_number: return "photon_number";
    case SweepAxis::angle: return "angle";
    }
    return "?";
}

std::string to_string(PulseTarget target)
{
    switch (target) {
    case PulseTarget::pump: return "pump";
    case PulseTarget::probe: return "probe";
    case PulseTarget::both: return "both";
    }
    return "?";
}

std::string to_string(OutputFormat format)
{
    return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + text + "' (expected csv or json)");
}

std::vector<double> SweepSpec::values() const
{
    std::vector<double> v(points);
    if (points == 1) {
        v[0] = start;
        return v;
    }
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        v[i] = log_spacing ? start * std::pow(stop / start, f) : start + f * (stop - start);
    }
    v.back() = stop;
    return v;
}

void SweepSpec::validate() const
{
    if (points < 1) throw PreconditionError("sweep needs at least one point");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw PreconditionError("sweep range must be finite");
    if (points > 1 && start == stop) throw PreconditionError("sweep range is empty (start == stop)");
    if (log_spacing && !(start > 0.0 && stop > 0.0)) throw PreconditionError("log spacing needs a positive range");
    if ((axis == SweepAxis::n_mol) && !(std::min(start, stop) >= 1.0))
        throw PreconditionError("n_mol sweep values must be >= 1");
    if (axis == SweepAxis::photon_number && !(std::min(start, stop) >= 0.0))
        throw PreconditionError("photon number sweep values must be >= 0");
}

void EnsembleConfig::validate() const
{
    if (n_mol < 1) throw PreconditionError("n_mol must be at least 1");
    if (seeds < 1) throw PreconditionError("seeds must be at least 1");
    if (geometry) geometry->validate();
    for (auto n : visibility_n_mol)
        if (n < 1) throw PreconditionError("visibility_n_mol entries must be at least 1");
}

void RunConfig::require(const std::vector<std::string>& sections, const std::string& command) const
{
    for (const auto& s : sections) {
        bool present = true;
        if (s == "dimer") present = dimer.has_value();
        else if (s == "pump") present = pump.has_value();
        else if (s == "probe") present = probe.has_value();
        else if (s == "vacuum") present = vacuum_gamma.has_value();
        else if (s == "ensemble") present = ensemble.has_value();
        else if (s == "sweep") present = sweep.has_value();
        else if (s == "oracle") present = oracle.has_value();
        else if (s == "experiment") present = experiment.has_value();
        if (!present) throw ConfigError("missing section '" + s + "' required by '" + command + "'");
    }
}

PumpProbeSetup RunConfig::setup() const
{
    require({"dimer", "pump", "probe", "vacuum"}, "signal setup");
    PumpProbeSetup s;
    s.basis = diagonalize_dimer(*dimer);
    s.pump = *pump;
    s.probe = *probe;
    s.vacuum = make_vacuum_params(*probe, *vacuum_gamma);
    if (!vacuum_enabled) s.vacuum.eta_vac = 0.0;
    return s;
}

Cylinder RunConfig::geometry() const
{
    if (ensemble && ensemble->geometry) return *ensemble->geometry;
    require({"pump"}, "ensemble geometry");
    Cylinder c;
    c.diameter = std::sqrt(4.0 * pump->area / pi);
    c.length = si::c * pump->sigma * si::femtosecond;
    return c;
}

double parse_frequency(const std::string& text)
{
    const auto [v, unit] = split_quantity(text);
    if (unit == "rad/fs") {
        if (!(v >= 0.0)) throw ConfigError("frequency must be non-negative");
        return v;
    }
    if (unit == "nm") {
        if (!(v > 0.0)) throw ConfigError("wavelength must be positive");
        return omega_from_wavelength(v * 1e-9);
    }
    if (unit.empty()) throw ConfigError("frequency '" + text + "' needs a unit suffix ('rad/fs' or 'nm')");
    throw ConfigError("unknown frequency unit '" + unit + "' (expected 'rad/fs' or 'nm')");
}

double parse_dipole(const std::string& text)
{
    const auto [v, unit] = split_quantity(text);
    if (unit == "D") return v * si::debye;
    if (unit == "C*m") return v;
    if (unit.empty()) throw ConfigError("dipole '" + text + "' needs a unit suffix ('D' or 'C*m')");
    throw ConfigError("unknown dipole unit '" + unit + "' (expected 'D' or 'C*m')");
}

RunConfig parse_config(const std::string& text, const std::string& source)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    RunConfig cfg;
    if (root.IsNull()) return cfg;
    if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping of sections");

    try {
        for (const auto& kv : root) {
            const std::string key = kv.first.Scalar();
            const YAML::Node& node = kv.second;
            if (key == "dimer")
                cfg.dimer = parse_dimer(Section(node, key));
            else if (key == "pump" || key == "probe")
                (key == "pump" ? cfg.pump : cfg.probe) = parse_pulse(Section(node, key), key);
            else if (key == "vacuum") {
                Section s(node, key);
                cfg.vacuum_gamma = s.number("gamma");
                if (s.has("enabled")) cfg.vacuum_enabled = s.boolean("enabled");
                s.finish();
                if (!(*cfg.vacuum_gamma > 0.0)) throw ConfigError("vacuum.gamma must be positive" + line_of(node));
            } else if (key == "ensemble")
                cfg.ensemble = parse_ensemble(Section(node, key));
            else if (key == "sweep")
                cfg.sweep = parse_sweep(Section(node, key));
            else if (key == "oracle")
                cfg.oracle = parse_oracle(Section(node, key));
            else if (key == "experiment")
                cfg.experiment = parse_experiment(Section(node, key));
            else if (key == "output") {
                Section s(node, key);
                if (s.has("path")) cfg.output.path = s.text("path");
                if (s.has("format")) {
                    const YAML::Node f = s.get("format");
                    try {
                        cfg.output.format = parse_format(f.Scalar());
                    } catch (const ConfigError& e) {
                        throw s.error("format", f, e.what());
                    }
                    cfg.output.format_given = true;
                }
                s.finish();
            } else
                throw ConfigError("unknown section '" + key + "'" + line_of(kv.first));
        }
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    } catch (const YAML::Exception& e) {
        throw ConfigError(source + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::string serialize_config(const RunConfig& cfg, bool include_output)
{
    std::ostringstream os;
    if (cfg.dimer) {
        const auto& d = *cfg.dimer;
        os << "dimer:\n";
        os << "  omega_a: \"" << num(d.omega_a) << " rad/fs\"\n";
        os << "  omega_b: \"" << num(d.omega_b) << " rad/fs\"\n";
        os << "  coupling_j: \"" << num(d.coupling_j) << " rad/fs\"\n";
        os << "  mu_ag: \"" << num(d.mu_ag) << " C*m\"\n";
        os << "  mu_bg: \"" << num(d.mu_bg) << " C*m\"\n";
    }
    if (cfg.pump) emit_pulse(os, "pump", *cfg.pump);
    if (cfg.probe) emit_pulse(os, "probe", *cfg.probe);
    if (cfg.vacuum_gamma) {
        os << "vacuum:\n";
        os << "  gamma: " << num(*cfg.vacuum_gamma) << "\n";
        os << "  enabled: " << (cfg.vacuum_enabled ? "true" : "false") << "\n";
    }
    if (cfg.ensemble) {
        const auto& e = *cfg.ensemble;
        os << "ensemble:\n";
        os << "  n_mol: " << e.n_mol << "\n";
        if (e.geometry) {
            os << "  diameter: " << num(e.geometry->diameter) << "\n";
            os << "  length: " << num(e.geometry->length) << "\n";
        }
        os << "  seed: " << e.seed << "\n";
        os << "  seeds: " << e.seeds << "\n";
        if (!e.visibility_n_mol.empty()) {
            os << "  visibility_n_mol: [";
            for (std::size_t i = 0; i < e.visibility_n_mol.size(); ++i)
                os << (i ? ", " : "") << e.visibility_n_mol[i];
            os << "]\n";
        }
    }
    if (cfg.sweep) {
        const auto& s = *cfg.sweep;
        os << "sweep:\n";
        os << "  axis: " << to_string(s.axis) << "\n";
        os << "  start: " << num(s.start) << "\n";
        os << "  stop: " << num(s.stop) << "\n";
        os << "  points: " << s.points << "\n";
        os << "  spacing: " << (s.log_spacing ? "log" : "linear") << "\n";
        if (s.axis != SweepAxis::T) os << "  waiting_time: " << num(s.waiting_time) << "\n";
        os << "  target: " << to_string(s.target) << "\n";
    }
    if (cfg.oracle) {
        const auto& o = *cfg.oracle;
        os << "oracle:\n";
        os << "  time_points: " << o.quadrature.time_points << "\n";
        os << "  time_span: " << num(o.quadrature.time_span) << "\n";
        os << "  mode_count: " << o.quadrature.mode_count << "\n";
        os << "  mode_span: " << num(o.quadrature.mode_span) << "\n";
        os << "  regularization_gamma: " << num(o.quadrature.regularization_gamma) << "\n";
        os << "  classical_tolerance: " << num(o.tolerances.classical) << "\n";
        os << "  vacuum_tolerance: " << num(o.tolerances.vacuum) << "\n";
        if (o.waiting_time) os << "  waiting_time: " << num(*o.waiting_time) << "\n";
    }
    if (cfg.experiment) {
        const auto& e = *cfg.experiment;
        os << "experiment:\n";
        os << "  pulse_energy: " << num(e.params.pulse_energy) << "\n";
        os << "  wavelength: \"" << num(e.params.wavelength) << " m\"\n";
        os << "  spot_diameter: " << num(e.params.spot_diameter) << "\n";
        os << "  sigma: " << num(e.params.sigma) << "\n";
        os << "  concentration: " << num(e.params.concentration) << "\n";
        os << "  gamma: " << num(e.gamma) << "\n";
    }
    if (include_output) {
        std::string path;
        for (char ch : cfg.output.path) {
            if (ch == '"' || ch == '\\') path += '\\';
            path += ch;
        }
        os << "output:\n";
        os << "  path: \"" << path << "\"\n";
        os << "  format: " << to_string(cfg.output.format) << "\n";
    }
    return os.str();
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string config_hash(const RunConfig& cfg)
{
    return sha256_hex(serialize_config(cfg, false));
}

}  // namespace ppvac
