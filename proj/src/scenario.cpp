#include "pplab/scenario.hpp"

#include <fstream>
#include <sstream>

#include "pplab/errors.hpp"

namespace pplab::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ScenarioError(where + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + "." + key, "missing required field");
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer, got " + std::string(v.type_name()));
    return v.get<std::int64_t>();
}

double positive(const json& v, const std::string& where) {
    const double d = as_number(v, where);
    if (!(d > 0.0)) fail(where, "must be > 0");
    return d;
}

template <class T, class Read>
void optional_field(const json& obj, const std::string& key, const std::string& where, T& out,
                    Read read) {
    if (auto it = obj.find(key); it != obj.end()) {
        out = read(*it, where.empty() ? key : where + "." + key);
    }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(where + "." + key, "unknown field");
    }
}

}  // namespace

CoefficientFamily parse_family(const json& record, const std::string& where) {
    if (!record.is_object()) fail(where, "expected a family record object");
    const auto& tag = require(record, "family", where);
    if (!tag.is_string()) fail(where + ".family", "expected a string");
    const auto name = tag.get<std::string>();
    auto num = [&](const char* key) {
        return as_number(require(record, key, where), where + "." + key);
    };
    try {
        if (name == "pielou") {
            reject_unknown(record, {"family", "beta"}, where);
            return CoefficientFamily::pielou(num("beta"));
        }
        if (name == "beverton_holt") {
            reject_unknown(record, {"family", "lambda", "capacity"}, where);
            return CoefficientFamily::beverton_holt(num("lambda"), num("capacity"));
        }
        if (name == "rational") {
            reject_unknown(record, {"family", "beta", "alpha1", "alpha2"}, where);
            return CoefficientFamily::rational(num("beta"), num("alpha1"), num("alpha2"));
        }
    } catch (const DomainError& e) {
        fail(where, e.what());
    }
    fail(where + ".family", "unknown family '" + name + "' (expected pielou, beverton_holt, rational)");
}

json family_to_json(const CoefficientFamily& family) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Pielou>) {
                return {{"family", "pielou"}, {"beta", p.beta}};
            } else if constexpr (std::is_same_v<T, BevertonHolt>) {
                return {{"family", "beverton_holt"}, {"lambda", p.lambda}, {"capacity", p.capacity}};
            } else if constexpr (std::is_same_v<T, RationalSaturating>) {
                return {{"family", "rational"}, {"beta", p.beta}, {"alpha1", p.alpha1},
                        {"alpha2", p.alpha2}};
            } else {
                return {{"family", "custom"}, {"name", p.name}};
            }
        },
        family.params());
}

Scenario parse_scenario(const json& doc) {
    const std::string root = "scenario";
    if (!doc.is_object()) fail(root, "expected a JSON object");
    reject_unknown(doc,
                   {"period", "coefficients", "initial", "steps", "burn_in", "sim_steps",
                    "hypothesis_grid", "tolerances", "verify", "outputs"},
                   root);
    Scenario s;

    const auto period = as_integer(require(doc, "period", root), "period");
    if (period < 1) fail("period", "must be >= 1");
    const auto& coeffs = require(doc, "coefficients", root);
    if (!coeffs.is_array()) fail("coefficients", "expected an array");
    if (static_cast<std::int64_t>(coeffs.size()) != period) {
        fail("coefficients", "has " + std::to_string(coeffs.size()) + " entries but period is " +
                                 std::to_string(period));
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        s.coefficients.push_back(parse_family(coeffs[i], "coefficients[" + std::to_string(i) + "]"));
    }

    if (auto it = doc.find("initial"); it != doc.end()) {
        if (!it->is_object()) fail("initial", "expected an object");
        reject_unknown(*it, {"x0", "xm1"}, "initial");
        optional_field(*it, "x0", "initial", s.x0, positive);
        optional_field(*it, "xm1", "initial", s.xm1, as_number);
        if (!(s.xm1 >= 0.0)) fail("initial.xm1", "must be >= 0");
    }
    optional_field(doc, "steps", "", s.steps, as_integer);
    if (s.steps < 1) fail("steps", "must be >= 1");
    optional_field(doc, "burn_in", "", s.burn_in, as_integer);
    if (s.burn_in < 0) fail("burn_in", "must be >= 0");
    optional_field(doc, "sim_steps", "", s.sim_steps, as_integer);
    if (s.sim_steps < 0) fail("sim_steps", "must be >= 0");

    if (auto it = doc.find("hypothesis_grid"); it != doc.end()) {
        if (!it->is_object()) fail("hypothesis_grid", "expected an object");
        reject_unknown(*it, {"x_max", "points", "margin"}, "hypothesis_grid");
        GridSpec g;
        g.x_max = positive(require(*it, "x_max", "hypothesis_grid"), "hypothesis_grid.x_max");
        optional_field(*it, "points", "hypothesis_grid", g.points,
                       [](const json& v, const std::string& w) {
                           const auto p = as_integer(v, w);
                           if (p < 2 || p > 1'000'000) fail(w, "must be in [2, 1000000]");
                           return static_cast<int>(p);
                       });
        optional_field(*it, "margin", "hypothesis_grid", g.margin, as_number);
        if (!(g.margin >= 0.0)) fail("hypothesis_grid.margin", "must be >= 0");
        s.grid = g;
    }

    if (auto it = doc.find("tolerances"); it != doc.end()) {
        if (!it->is_object()) fail("tolerances", "expected an object");
        reject_unknown(*it, {"root_tol", "orbit_tol", "verify_tol", "lemma_tol"}, "tolerances");
        optional_field(*it, "root_tol", "tolerances", s.tolerances.root_tol, positive);
        optional_field(*it, "orbit_tol", "tolerances", s.tolerances.orbit_tol, positive);
        optional_field(*it, "verify_tol", "tolerances", s.tolerances.verify_tol, positive);
        optional_field(*it, "lemma_tol", "tolerances", s.tolerances.lemma_tol, positive);
    }

    if (auto it = doc.find("verify"); it != doc.end()) {
        if (!it->is_object()) fail("verify", "expected an object");
        reject_unknown(*it, {"n_initials", "seed", "steps"}, "verify");
        optional_field(*it, "n_initials", "verify", s.verify.n_initials,
                       [](const json& v, const std::string& w) {
                           const auto n = as_integer(v, w);
                           if (n < 0 || n > 100000) fail(w, "must be in [0, 100000]");
                           return static_cast<int>(n);
                       });
        optional_field(*it, "seed", "verify", s.verify.seed,
                       [](const json& v, const std::string& w) {
                           if (!v.is_number_unsigned()) fail(w, "expected a nonnegative integer");
                           return v.get<std::uint64_t>();
                       });
        optional_field(*it, "steps", "verify", s.verify.steps, as_integer);
        if (s.verify.steps < 0) fail("verify.steps", "must be >= 0");
    }

    if (auto it = doc.find("outputs"); it != doc.end()) {
        if (!it->is_object()) fail("outputs", "expected an object");
        reject_unknown(*it, {"report_path", "trajectory_csv_path", "plot_csv_path"}, "outputs");
        auto str = [](const json& v, const std::string& w) {
            if (!v.is_string() || v.get<std::string>().empty()) fail(w, "expected a non-empty string");
            return v.get<std::string>();
        };
        optional_field(*it, "report_path", "outputs", s.outputs.report_path, str);
        if (it->contains("trajectory_csv_path")) {
            s.outputs.trajectory_csv_path = str((*it)["trajectory_csv_path"], "outputs.trajectory_csv_path");
        }
        if (it->contains("plot_csv_path")) {
            s.outputs.plot_csv_path = str((*it)["plot_csv_path"], "outputs.plot_csv_path");
        }
    }
    return s;
}

Scenario parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("invalid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario_text(buf.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path.string() + ": " + e.what());
    }
}

}  // namespace pplab::cli
