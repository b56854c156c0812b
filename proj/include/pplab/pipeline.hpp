#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pplab/report.hpp"
#include "pplab/scenario.hpp"

namespace pplab::cli {

enum class Command { Analyze, Simulate, Orbit, Verify, Full };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c) noexcept;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitChecksFailed = 2;

struct RunResult {
    Report report;
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> written;
};

/// Runs `command` on the scenario and builds the report. Files are written only when
/// `out_dir` is set; relative output paths are resolved against it.
RunResult run(Command command, const Scenario& scenario,
              const std::optional<std::filesystem::path>& out_dir);

/// Applies the PPLAB_SEED override (if set) to the scenario. Throws ScenarioError if malformed.
void apply_seed_override(Scenario& scenario, const char* env_value);

}  // namespace pplab::cli
