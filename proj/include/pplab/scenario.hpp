#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pplab/analysis.hpp"
#include "pplab/dynamics.hpp"
#include "pplab/models.hpp"

namespace pplab::cli {

/// Malformed scenario: bad JSON or a field that fails validation. The message
/// names the offending field path (e.g. `coefficients[1].beta`) or the JSON line.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double root_tol = kDefaultRootTol;
    double orbit_tol = kDefaultOrbitTol;
    double verify_tol = 1e-8;
    double lemma_tol = 1e-9;

    bool operator==(const Tolerances&) const = default;
};

struct VerifySettings {
    int n_initials = 32;
    std::uint64_t seed = 1;
    std::int64_t steps = 0;  // 0 selects 20000 k

    bool operator==(const VerifySettings&) const = default;
};

struct Outputs {
    std::string report_path = "report.json";
    std::optional<std::string> trajectory_csv_path;
    std::optional<std::string> plot_csv_path;

    bool operator==(const Outputs&) const = default;
};

struct Scenario {
    std::vector<CoefficientFamily> coefficients;
    double x0 = 1.0;
    double xm1 = 1.0;
    std::int64_t steps = 10000;
    std::int64_t burn_in = 0;     // 0 selects default_burn_in(k)
    std::int64_t sim_steps = 0;   // 0 selects default_sim_steps(k)
    std::optional<GridSpec> grid; // unset selects default_grid(system)
    Tolerances tolerances;
    VerifySettings verify;
    Outputs outputs;

    [[nodiscard]] std::size_t period() const noexcept { return coefficients.size(); }
    [[nodiscard]] PeriodicSystem system() const { return PeriodicSystem(coefficients); }
};

/// Parses a family record such as {"family":"pielou","beta":2.0}. `where` prefixes diagnostics.
CoefficientFamily parse_family(const nlohmann::json& record, const std::string& where);
nlohmann::json family_to_json(const CoefficientFamily& family);

Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace pplab::cli
