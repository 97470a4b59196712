#ifndef PPVAC_CONFIG_HPP
#define PPVAC_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppvac/ensemble.hpp"
#include "ppvac/exciton.hpp"
#include "ppvac/experiment.hpp"
#include "ppvac/oracle.hpp"
#include "ppvac/photon_field.hpp"
#include "ppvac/signals.hpp"

namespace ppvac {

enum class SweepAxis { T, n_mol, photon_number, angle };
enum class PulseTarget { pump, probe, both };
enum class OutputFormat { csv, json };

std::string to_string(SweepAxis axis);
std::string to_string(PulseTarget target);
std::string to_string(OutputFormat format);
OutputFormat parse_format(const std::string& text);

struct SweepSpec {
    SweepAxis axis = SweepAxis::T;
    double start = 0.0;
    double stop = 0.0;
    std::size_t points = 1;
    bool log_spacing = false;
    double waiting_time = 0.0;           // fs; fixed T for non-T axes
    PulseTarget target = PulseTarget::probe;  // photon_number axis only

    std::vector<double> values() const;
    void validate() const;
};

struct EnsembleConfig {
    std::size_t n_mol = 1;
    std::optional<Cylinder> geometry;  // defaults to the pump's coherent volume
    std::uint64_t seed = 0;
    std::size_t seeds = 1;
    std::vector<std::size_t> visibility_n_mol;

    void validate() const;
};

struct OracleConfig {
    QuadratureConfig quadrature;
    ComparisonTolerances tolerances;
    std::optional<double> waiting_time;  // used when the sweep is not over T
};

struct ExperimentConfig {
    ExperimentParams params;
    double gamma = 400.0;
};

struct OutputSpec {
    std::string path;  // empty means stdout
    OutputFormat format = OutputFormat::csv;
    bool format_given = false;
};

/// Fully resolved run configuration. Sections that were absent stay empty.
struct RunConfig {
    std::optional<DimerSpec> dimer;
    std::optional<PulseSpec> pump;
    std::optional<PulseSpec> probe;
    std::optional<double> vacuum_gamma;  // fs
    bool vacuum_enabled = true;
    std::optional<EnsembleConfig> ensemble;
    std::optional<SweepSpec> sweep;
    std::optional<OracleConfig> oracle;
    std::optional<ExperimentConfig> experiment;
    OutputSpec output;

    /// Throws ConfigError naming the first missing section needed by `command`.
    void require(const std::vector<std::string>& sections, const std::string& command) const;

    /// Dimer, pulses and vacuum assembled into a signal setup.
    PumpProbeSetup setup() const;

    /// Geometry of the ensemble section, or the pump's coherent volume.
    Cylinder geometry() const;
};

/// Parses YAML text. Unknown keys, missing units and malformed values raise
/// ConfigError with the offending key and line number.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Canonical YAML form: every resolved value, fixed key order, 17 significant digits.
std::string serialize_config(const RunConfig& cfg, bool include_output = true);

/// SHA-256 (hex) of the canonical form without the output section, so the
/// hash names the physics rather than where results were written.
std::string config_hash(const RunConfig& cfg);

std::string sha256_hex(const std::string& data);

/// "<number> rad/fs" or "<number> nm" -> rad/fs.
double parse_frequency(const std::string& text);

/// "<number> D" or "<number> C*m" -> C m.
double parse_dipole(const std::string& text);

}  // namespace ppvac

#endif
