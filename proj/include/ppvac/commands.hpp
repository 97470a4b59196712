#ifndef PPVAC_COMMANDS_HPP
#define PPVAC_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppvac/config.hpp"

namespace ppvac {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CommandOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> output_path;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

struct SignalRow {
    double sweep_value = 0.0;
    SignalComponents signal;
};

/// One row per sweep value, in sweep order. Uses the many-molecule signal
/// when the sweep needs it or an ensemble section is present.
std::vector<SignalRow> compute_signal_rows(const RunConfig& cfg, unsigned workers);

/// |X|^2 for `n_mol` molecules with the given probe direction.
double ensemble_x_squared(const RunConfig& cfg, std::size_t n_mol, const Vec3& probe_direction);

struct ValidationResult {
    std::vector<ComparisonRecord> records;
    bool passed = true;
};

ValidationResult run_validation(const RunConfig& cfg, unsigned workers);

struct VisibilityPoint {
    std::size_t n_mol = 0;
    double x_squared = 0.0;
    double visibility = 0.0;
    double visibility_without_vacuum = 0.0;
};

struct EnsembleSummary {
    std::size_t n_mol = 0;
    bool collinear = false;
    std::vector<std::uint64_t> seeds;
    std::vector<double> x_squared;
    double mean = 0.0;
    double std_dev = 0.0;
    double standard_error = 0.0;
    std::optional<double> superradiance_ratio;
    std::string ratio_note;
    std::vector<VisibilityPoint> visibility;
    std::string visibility_note;
};

EnsembleSummary run_ensemble(const RunConfig& cfg, unsigned workers);

std::string render_signal(const RunConfig& cfg, const std::vector<SignalRow>& rows, OutputFormat format);
nlohmann::json validation_json(const RunConfig& cfg, const ValidationResult& result);
std::string render_validation(const RunConfig& cfg, const ValidationResult& result, OutputFormat format);
nlohmann::json ensemble_json(const RunConfig& cfg, const EnsembleSummary& summary);
std::string render_ensemble(const RunConfig& cfg, const EnsembleSummary& summary, OutputFormat format);
nlohmann::json proposal_json(const ProposalReport& report);
std::string proposal_text(const ProposalReport& report);
std::string proposal_csv(const ProposalReport& report);

/// Runs one CLI subcommand end to end and returns its exit code. Normal
/// output goes to `out` (or the output file), diagnostics to `err`.
int run_command(const std::string& command, const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ppvac

#endif
