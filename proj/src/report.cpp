#include "pplab/report.hpp"

namespace pplab::cli {

using nlohmann::json;

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (auto it = j.find(key); it != j.end()) v = it->template get<T>();
}

}  // namespace

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Settings, period, coefficients, x0, xm1, steps, burn_in,
                                   sim_steps, root_tol, orbit_tol, verify_tol, lemma_tol,
                                   n_initials, seed, verify_steps, grid_x_max, grid_points,
                                   grid_margin)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassificationEntry, kind, product_at_zero, limit_product)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HypothesisEntry, passed, decreasing_ok, xf_increasing_ok,
                                   worst_violation)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundsEntry, x_tilde, x_bar, lower, upper, root_residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OrbitEntry, values, closure_residual,
                                   product_identity_residual, refined, newton_iterations)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LemmaEntry, relation, max_abs, per_residue)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VerifyOutcomeEntry, x0, xm1, max_deviation, converged,
                                   contained)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VerificationEntry, passed, converged, contained,
                                   max_deviation, steps, burn_in, outcomes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ResidueEntry, sup, inf, burn_in, tail_length, final_value)

json to_json(const Report& r) {
    json j;
    j["command"] = r.command;
    j["settings"] = r.settings;
    j["classification"] = r.classification;
    put_optional(j, "hypotheses", r.hypotheses);
    put_optional(j, "bounds", r.bounds);
    put_optional(j, "orbit", r.orbit);
    if (!r.lemma_relations.empty()) j["lemma_relations"] = r.lemma_relations;
    put_optional(j, "verification", r.verification);
    put_optional(j, "residue_stats", r.residue_stats);
    j["notes"] = r.notes;
    j["checks_passed"] = r.checks_passed;
    return j;
}

Report report_from_json(const json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.settings = j.at("settings").get<Settings>();
    r.classification = j.at("classification").get<ClassificationEntry>();
    get_optional(j, "hypotheses", r.hypotheses);
    get_optional(j, "bounds", r.bounds);
    get_optional(j, "orbit", r.orbit);
    if (auto it = j.find("lemma_relations"); it != j.end()) {
        r.lemma_relations = it->get<std::vector<LemmaEntry>>();
    }
    get_optional(j, "verification", r.verification);
    get_optional(j, "residue_stats", r.residue_stats);
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.checks_passed = j.at("checks_passed").get<bool>();
    return r;
}

std::string serialize(const Report& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace pplab::cli
