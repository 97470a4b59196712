#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ppvac/commands.hpp"
#include "ppvac/parallel.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Pump-probe signals of a molecular dimer with vacuum-fluctuation corrections"};
    app.require_subcommand(1);

    struct Parsed {
        std::string config, output, format;
        std::uint64_t seed = 0;
        unsigned workers = ppvac::default_workers();
    };
    Parsed p;

    const auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", p.config, "YAML run configuration");
        sub->add_option("--output", p.output, "write results to this file instead of stdout");
        sub->add_option("--format", p.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", p.seed, "base RNG seed for position sampling");
        sub->add_option("--workers", p.workers, "worker threads")->check(CLI::PositiveNumber);
        return sub;
    };
    add("signal", "evaluate the signal components over a parameter sweep");
    add("validate", "compare closed forms against the brute-force quadrature oracle");
    add("ensemble", "phase-sum statistics, superradiance ratio and beat visibility");
    add("proposal-report", "feasibility numbers for the laboratory parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ppvac::kExitConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    ppvac::CommandOptions opts;
    if (sub->count("--config")) opts.config_path = p.config;
    if (sub->count("--output")) opts.output_path = p.output;
    if (sub->count("--format")) opts.format = p.format;
    if (sub->count("--seed")) opts.seed = p.seed;
    opts.workers = p.workers;
    return ppvac::run_command(sub->get_name(), opts, std::cout, std::cerr);
}
