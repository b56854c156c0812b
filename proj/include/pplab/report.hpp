#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace pplab::cli {

struct Settings {
    std::int64_t period = 0;
    std::vector<nlohmann::json> coefficients;
    double x0 = 0.0;
    double xm1 = 0.0;
    std::int64_t steps = 0;
    std::int64_t burn_in = 0;
    std::int64_t sim_steps = 0;
    double root_tol = 0.0;
    double orbit_tol = 0.0;
    double verify_tol = 0.0;
    double lemma_tol = 0.0;
    int n_initials = 0;
    std::uint64_t seed = 0;
    std::int64_t verify_steps = 0;
    double grid_x_max = 0.0;
    int grid_points = 0;
    double grid_margin = 0.0;

    bool operator==(const Settings&) const = default;
};

struct ClassificationEntry {
    std::string kind;
    double product_at_zero = 0.0;
    double limit_product = 0.0;

    bool operator==(const ClassificationEntry&) const = default;
};

struct HypothesisEntry {
    bool passed = false;
    std::vector<bool> decreasing_ok;
    std::vector<bool> xf_increasing_ok;
    double worst_violation = 0.0;

    bool operator==(const HypothesisEntry&) const = default;
};

struct BoundsEntry {
    double x_tilde = 0.0;
    double x_bar = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double root_residual = 0.0;

    bool operator==(const BoundsEntry&) const = default;
};

struct OrbitEntry {
    std::vector<double> values;
    double closure_residual = 0.0;
    double product_identity_residual = 0.0;
    bool refined = false;
    int newton_iterations = 0;

    bool operator==(const OrbitEntry&) const = default;
};

struct LemmaEntry {
    std::string relation;
    double max_abs = 0.0;
    std::vector<double> per_residue;

    bool operator==(const LemmaEntry&) const = default;
};

struct VerifyOutcomeEntry {
    double x0 = 0.0;
    double xm1 = 0.0;
    double max_deviation = 0.0;
    bool converged = false;
    bool contained = false;

    bool operator==(const VerifyOutcomeEntry&) const = default;
};

struct VerificationEntry {
    bool passed = false;
    bool converged = false;
    bool contained = false;
    double max_deviation = 0.0;
    std::int64_t steps = 0;
    std::int64_t burn_in = 0;
    std::vector<VerifyOutcomeEntry> outcomes;

    bool operator==(const VerificationEntry&) const = default;
};

struct ResidueEntry {
    std::vector<double> sup;
    std::vector<double> inf;
    std::int64_t burn_in = 0;
    std::int64_t tail_length = 0;
    double final_value = 0.0;

    bool operator==(const ResidueEntry&) const = default;
};

/// Machine-readable result of one CLI command. Optional sections are present only
/// when they apply to the command and the classification.
struct Report {
    std::string command;
    Settings settings;
    ClassificationEntry classification;
    std::optional<HypothesisEntry> hypotheses;
    std::optional<BoundsEntry> bounds;
    std::optional<OrbitEntry> orbit;
    std::vector<LemmaEntry> lemma_relations;
    std::optional<VerificationEntry> verification;
    std::optional<ResidueEntry> residue_stats;
    std::vector<std::string> notes;  // e.g. "orbit: not applicable (zero_attractive)"
    bool checks_passed = true;

    bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& doc);
/// Canonical text form: two-space indentation, trailing newline.
std::string serialize(const Report& report);

}  // namespace pplab::cli
