// pplab: analyze a periodically forced delay difference equation from a JSON scenario.
//
//   pplab <analyze|simulate|orbit|verify|full> --scenario <path> [--out <dir>]
//
// Exit status: 0 all checks passed, 2 some check failed, 1 usage or input error.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "pplab/pipeline.hpp"

int main(int argc, char** argv) {
    namespace cli = pplab::cli;

    CLI::App app{"Periodic delay difference equation lab"};
    std::string command;
    std::string scenario_path;
    std::string out_dir = ".";
    app.add_option("command", command, "analyze | simulate | orbit | verify | full")
        ->required()
        ->check(CLI::IsMember({"analyze", "simulate", "orbit", "verify", "full"}));
    app.add_option("--scenario", scenario_path, "scenario JSON file")->required();
    app.add_option("--out", out_dir, "directory for the report and CSV outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    try {
        auto scenario = cli::load_scenario(scenario_path);
        cli::apply_seed_override(scenario, std::getenv("PPLAB_SEED"));
        const auto result = cli::run(*cli::parse_command(command), scenario, out_dir);
        const auto& rep = result.report;
        std::cout << command << ": " << rep.classification.kind
                  << " (P0 = " << rep.classification.product_at_zero
                  << ", c = " << rep.classification.limit_product << ")\n";
        for (const auto& note : rep.notes) std::cout << "  " << note << '\n';
        for (const auto& p : result.written) std::cout << "  wrote " << p.string() << '\n';
        std::cout << (rep.checks_passed ? "checks passed" : "checks FAILED") << '\n';
        return result.exit_code;
    } catch (const cli::ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitUsage;
    }
}
