// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pplab/analysis.hpp"
#include "pplab/dynamics.hpp"
#include "pplab/errors.hpp"

using namespace pplab;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240917;
constexpr double kVerifyTol = 1e-7;
constexpr int kInitials = 16;
constexpr double kRootTol = 1e-12;
constexpr double kLemmaTol = 1e-9;
constexpr double kOracleTol = 1e-8;
constexpr double kExtinct = 1e-12;
constexpr std::int64_t kExtinctionSteps = 100000;

struct Named {
    std::string name;
    PeriodicSystem system;
};

PeriodicSystem pielou(std::initializer_list<double> betas) {
    std::vector<CoefficientFamily> f;
    for (double b : betas) f.push_back(CoefficientFamily::pielou(b));
    return PeriodicSystem(std::move(f));
}

PeriodicSystem rational2(double b1, double b2) {
    return PeriodicSystem({CoefficientFamily::rational(b1, 1.0, 0.5),
                           CoefficientFamily::rational(b2, 1.0, 0.5)});
}

std::string describe(const PeriodicSystem& s) {
    std::ostringstream os;
    os << "k=" << s.period() << " [";
    for (std::size_t i = 0; i < s.period(); ++i) {
        const auto& p = s.coefficients()[i].params();
        if (i) os << ", ";
        if (const auto* a = std::get_if<Pielou>(&p)) os << "pielou " << a->beta;
        if (const auto* b = std::get_if<BevertonHolt>(&p)) os << "bh " << b->lambda << "/" << b->capacity;
        if (const auto* r = std::get_if<RationalSaturating>(&p)) os << "rational " << r->beta;
    }
    os << "]";
    return os.str();
}

class Criterion {
public:
    explicit Criterion(std::string label) : label_(std::move(label)) {}
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures_;
            if (failures_ <= 8) details_.push_back(what);
        }
        ++checks_;
    }
    bool report() const {
        std::printf("[%s] %s (%d/%d checks)\n", failures_ == 0 ? "PASS" : "FAIL", label_.c_str(),
                    checks_ - failures_, checks_);
        for (const auto& d : details_) std::printf("       - %s\n", d.c_str());
        if (failures_ > 8) std::printf("       - ... %d more\n", failures_ - 8);
        return failures_ == 0;
    }

private:
    std::string label_;
    int checks_ = 0;
    int failures_ = 0;
    std::vector<std::string> details_;
};

struct Analyzed {
    std::string name;
    PeriodicSystem system;
    std::optional<PeriodicOrbit> orbit;
    std::optional<VerificationReport> verification;
    std::string error;
};

Analyzed analyze_periodic(const Named& n) {
    Analyzed a{n.name, n.system, std::nullopt, std::nullopt, {}};
    try {
        a.orbit = extract_orbit(n.system);
        VerifyOptions vo;
        vo.n_initials = kInitials;
        vo.steps = 20000 * static_cast<std::int64_t>(n.system.period());
        vo.seed = kSeed;
        vo.tol = kVerifyTol;
        a.verification = verify_attractivity(n.system, *a.orbit, vo);
    } catch (const std::exception& e) {
        a.error = e.what();
    }
    return a;
}

/// Steps until x < 1e-12 (or the step cap), checking x_n < x_{n-k} along the way.
struct ExtinctionRun {
    bool reached = false;
    bool k_decreasing = true;
    std::int64_t steps = 0;
    double last = 0.0;
};

ExtinctionRun run_to_extinction(const PeriodicSystem& sys, double x0, double xm1,
                                std::int64_t cap, double threshold) {
    const auto k = static_cast<std::int64_t>(sys.period());
    std::vector<double> hist{xm1, x0};  // hist[i] = x_{i-1}
    ExtinctionRun r;
    for (std::int64_t n = 0; n < cap; ++n) {
        const double next = step(sys, n, hist.back(), hist[hist.size() - 2]);
        hist.push_back(next);
        const std::int64_t idx = n + 1;
        if (idx > k && !(next < hist[static_cast<std::size_t>(idx - k + 1)])) r.k_decreasing = false;
        if (!(next > 0.0)) r.k_decreasing = false;
        r.steps = idx;
        r.last = next;
        if (next < threshold) {
            r.reached = true;
            break;
        }
    }
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    std::mt19937_64 rng(kSeed);
    bool all_ok = true;

    // Fixed periodic-attractive systems shared by several criteria.
    std::vector<Named> fixed = {
        {"pielou k=1 beta=2", pielou({2.0})},
        {"pielou k=2 {0.5,3}", pielou({0.5, 3.0})},
        {"pielou k=3 {0.8,1.5,2}", pielou({0.8, 1.5, 2.0})},
        {"pielou k=4 {1.7,0.9,2.2,0.8}", pielou({1.7, 0.9, 2.2, 0.8})},
        {"beverton-holt k=3 K={2,5,9}",
         PeriodicSystem({CoefficientFamily::beverton_holt(3.0, 2.0),
                         CoefficientFamily::beverton_holt(3.0, 5.0),
                         CoefficientFamily::beverton_holt(3.0, 9.0)})},
        {"rational k=2 beta={0.8,2}", rational2(0.8, 2.0)},
    };
    std::vector<Named> bh_constant;
    for (std::size_t k = 1; k <= 5; ++k) {
        std::vector<CoefficientFamily> f;
        for (std::size_t i = 0; i < k; ++i) {
            f.push_back(CoefficientFamily::beverton_holt(1.5 + 0.75 * static_cast<double>(i), 4.0));
        }
        bh_constant.push_back({"beverton-holt constant K=4 k=" + std::to_string(k), PeriodicSystem(f)});
    }
    std::vector<Named> random_periodic;
    for (int i = 0; i < 50; ++i) {
        const std::size_t k = static_cast<std::size_t>(i % 5) + 1;
        auto sys = oracle::random_pielou(rng, k, 1.06, 50.0);
        random_periodic.push_back({"random " + describe(sys), std::move(sys)});
    }

    std::vector<Analyzed> analyzed;
    for (const auto* group : {&fixed, &bh_constant, &random_periodic}) {
        for (const auto& n : *group) analyzed.push_back(analyze_periodic(n));
    }
    auto find = [&](const std::string& name) -> const Analyzed& {
        for (const auto& a : analyzed) {
            if (a.name == name) return a;
        }
        throw std::logic_error("no system " + name);
    };

    // 1. Pielou global attractivity and extinction.
    {
        Criterion c("C1 Pielou: 50 periodic systems converge (tol 1e-7, 16 initials, 2e4 k steps); "
                    "50 subcritical systems go extinct with x_n < x_{n-k}");
        for (std::size_t i = fixed.size() + bh_constant.size(); i < analyzed.size(); ++i) {
            const auto& a = analyzed[i];
            c.expect(classify(a.system).product_at_zero > 1.05, a.name + ": product <= 1.05");
            c.expect(a.orbit.has_value(), a.name + ": extract_orbit failed: " + a.error);
            c.expect(a.verification && a.verification->passed(),
                     a.name + ": not converged, max deviation " +
                         (a.verification ? std::to_string(a.verification->max_deviation) : a.error));
        }
        std::uniform_real_distribution<double> init(0.01, 50.0);
        for (int i = 0; i < 50; ++i) {
            const std::size_t k = static_cast<std::size_t>(i % 5) + 1;
            const auto sys = oracle::random_pielou(rng, k, 0.3, 0.99);
            c.expect(classify(sys).kind == Dynamics::ZeroAttractive, describe(sys) + ": not zero-attractive");
            for (int j = 0; j < 4; ++j) {
                const double x0 = init(rng);
                const double xm1 = j == 0 ? 0.0 : init(rng);
                const auto r = run_to_extinction(sys, x0, xm1, kExtinctionSteps, kExtinct);
                c.expect(r.reached, describe(sys) + ": still " + std::to_string(r.last) + " after 1e5 steps");
                c.expect(r.k_decreasing, describe(sys) + ": x_n < x_{n-k} violated");
            }
        }
        // Boundary product 1: no rate, but the k-spaced decrease must still hold.
        for (const auto& sys : {pielou({0.5, 2.0}), pielou({1.0}), pielou({0.25, 2.0, 2.0})}) {
            const auto r = run_to_extinction(sys, 3.0, 1.0, 20000, 0.0);
            c.expect(r.k_decreasing, describe(sys) + ": x_n < x_{n-k} violated at product 1");
        }
        all_ok &= c.report();
    }

    // 2. Containment in the stated permanence interval after burn-in.
    {
        Criterion c("C2 permanence: post-burn-in values inside [lower - 1e-9, upper + 1e-9]");
        for (const auto& a : analyzed) {
            if (!a.verification) {
                c.expect(false, a.name + ": no verification run");
                continue;
            }
            const auto& v = *a.verification;
            double lo = INFINITY;
            double hi = 0.0;
            for (const auto& o : v.outcomes) {
                lo = std::min(lo, o.min_tail);
                hi = std::max(hi, o.max_tail);
            }
            std::ostringstream msg;
            msg << a.name << ": tail range [" << lo << ", " << hi << "] vs bounds [" << v.bounds.lower
                << ", " << v.bounds.upper << "]";
            c.expect(v.contained, msg.str());
        }
        all_ok &= c.report();
    }

    // 3. Root certificate.
    {
        Criterion c("C3 root: |prod f_n(x~) - 1| <= 1e-12; pielou {0.5,3} x~ = sqrt(1.5) - 1 within 1e-10");
        for (const auto& a : analyzed) {
            try {
                const double xt = solve_xtilde(a.system, kRootTol);
                c.expect(std::abs(product_at(a.system, xt) - 1.0) <= kRootTol, a.name + ": residual too large");
                c.expect(std::abs(static_cast<double>(oracle::product(a.system, xt)) - 1.0) <= 2 * kRootTol,
                         a.name + ": long-double oracle disagrees");
            } catch (const std::exception& e) {
                c.expect(false, a.name + ": " + e.what());
            }
        }
        const double xt = solve_xtilde(pielou({0.5, 3.0}), kRootTol);
        c.expect(std::abs(xt - (std::sqrt(1.5) - 1.0)) <= 1e-10, "closed form mismatch");
        all_ok &= c.report();
    }

    // 4. Equilibrium exactness.
    {
        Criterion c("C4 equilibria: constant-K Beverton-Holt orbit = K (1e-9); pielou beta=2 orbit = 1 (1e-12)");
        for (const auto& n : bh_constant) {
            const auto& a = find(n.name);
            c.expect(a.orbit.has_value(), n.name + ": no orbit");
            if (!a.orbit) continue;
            for (double x : a.orbit->values) c.expect(std::abs(x - 4.0) <= 1e-9, n.name + ": " + std::to_string(x));
        }
        const auto& p = find("pielou k=1 beta=2");
        c.expect(p.orbit && p.orbit->values.size() == 1 && std::abs(p.orbit->values[0] - 1.0) <= 1e-12,
                 "pielou beta=2 orbit != 1");
        all_ok &= c.report();
    }

    // 5. Lemma residuals.
    {
        Criterion c("C5 lemma relations with S_h = I_h = x*_h: residual <= 1e-9 on every orbit");
        for (const auto& a : analyzed) {
            if (!a.orbit) {
                c.expect(false, a.name + ": no orbit");
                continue;
            }
            for (const auto& lr : check_lemma_relations(a.system, *a.orbit)) {
                c.expect(lr.max_abs <= kLemmaTol,
                         a.name + ": " + std::string(to_string(lr.relation)) + " " + std::to_string(lr.max_abs));
            }
        }
        all_ok &= c.report();
    }

    // 6. Oracle equivalence.
    {
        Criterion c("C6 oracle: extract_orbit vs 1e6-step long-double brute force within 1e-8 (k = 2, 3, 4)");
        for (const char* name : {"pielou k=2 {0.5,3}", "pielou k=3 {0.8,1.5,2}", "pielou k=4 {1.7,0.9,2.2,0.8}",
                                 "beverton-holt k=3 K={2,5,9}", "rational k=2 beta={0.8,2}"}) {
            const auto& a = find(name);
            if (!a.orbit) {
                c.expect(false, std::string(name) + ": no orbit");
                continue;
            }
            const auto ref = oracle::brute_force_orbit(a.system, 1'000'000, 100);
            for (std::size_t h = 0; h < ref.size(); ++h) {
                c.expect(std::abs(a.orbit->values[h] - ref[h]) <= kOracleTol,
                         std::string(name) + ": h=" + std::to_string(h + 1));
            }
        }
        all_ok &= c.report();
    }

    // 7. Rational family.
    {
        Criterion c("C7 rational k=2: beta=(0.8,2) periodic with criteria 1-6; beta=(0.5,2) extinct");
        const auto& a = find("rational k=2 beta={0.8,2}");
        const auto cls = classify(a.system);
        c.expect(std::abs(cls.product_at_zero - 1.6) <= 1e-15, "P0 != 1.6");
        c.expect(std::abs(cls.limit_product - 1.6 / 9.0) <= 1e-15, "c != 1.6/9");
        c.expect(cls.kind == Dynamics::PeriodicAttractive, "not periodic-attractive");
        c.expect(check_hypotheses(a.system, default_grid(a.system)).all_ok(), "hypotheses fail");
        c.expect(a.orbit.has_value(), "orbit: " + a.error);
        c.expect(a.verification && a.verification->passed(), "attractivity (C1) fails");
        c.expect(a.verification && a.verification->contained, "containment (C2) fails");
        const double xt = solve_xtilde(a.system, kRootTol);
        c.expect(std::abs(product_at(a.system, xt) - 1.0) <= kRootTol, "root certificate (C3) fails");
        if (a.orbit) {
            for (const auto& lr : check_lemma_relations(a.system, *a.orbit)) {
                c.expect(lr.max_abs <= kLemmaTol, "lemma (C5) fails");
            }
            const auto ref = oracle::brute_force_orbit(a.system, 1'000'000, 100);
            for (std::size_t h = 0; h < 2; ++h) {
                c.expect(std::abs(a.orbit->values[h] - ref[h]) <= kOracleTol, "oracle (C6) fails");
            }
        }

        // beta = (0.5, 2): product exactly 1, so extinction is algebraic; require the strict
        // k-spaced decrease and a 1000-fold drop over 1e5 steps.
        const auto zero = rational2(0.5, 2.0);
        c.expect(classify(zero).kind == Dynamics::ZeroAttractive, "beta=(0.5,2) not zero-attractive");
        for (const auto& [x0, xm1] : {std::pair{1.0, 1.0}, std::pair{10.0, 0.0}, std::pair{0.1, 5.0}}) {
            const auto r = run_to_extinction(zero, x0, xm1, kExtinctionSteps, 0.0);
            c.expect(r.k_decreasing, "beta=(0.5,2): x_n < x_{n-k} violated");
            c.expect(r.last < 1e-3 * std::max(x0, xm1), "beta=(0.5,2): final " + std::to_string(r.last));
        }
        all_ok &= c.report();
    }

    // 8. CLI determinism.
    {
        Criterion c("C8 CLI: `full` twice with the same scenario and seed gives byte-identical reports");
        const fs::path dir = fs::path(PPLAB_TEST_TMP);
        fs::remove_all(dir);
        fs::create_directories(dir);
        const fs::path scenario = dir / "scenario.json";
        std::ofstream(scenario) << R"({
  "period": 2,
  "coefficients": [{"family": "pielou", "beta": 0.5}, {"family": "pielou", "beta": 3.0}],
  "initial": {"x0": 1.0, "xm1": 1.0},
  "steps": 10000,
  "verify": {"n_initials": 16, "seed": 11},
  "outputs": {"report_path": "report.json", "trajectory_csv_path": "trajectory.csv"}
})";
        int codes[2];
        for (int i = 0; i < 2; ++i) {
            const std::string cmd = std::string(PPLAB_TOOL_PATH) + " full --scenario " + scenario.string() +
                                    " --out " + (dir / ("run" + std::to_string(i))).string() + " > /dev/null";
            const int status = std::system(cmd.c_str());
            codes[i] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        }
        c.expect(codes[0] == 0 && codes[1] == 0, "exit codes " + std::to_string(codes[0]) + ", " + std::to_string(codes[1]));
        const auto r0 = slurp(dir / "run0" / "report.json");
        const auto r1 = slurp(dir / "run1" / "report.json");
        c.expect(!r0.empty() && r0 == r1, "reports differ");
        c.expect(r0.find("\"periodic_attractive\"") != std::string::npos, "classification missing");
        c.expect(slurp(dir / "run0" / "trajectory.csv") == slurp(dir / "run1" / "trajectory.csv"),
                 "trajectories differ");
        all_ok &= c.report();
    }

    std::printf("%s\n", all_ok ? "ALL ACCEPTANCE CRITERIA PASSED" : "SOME ACCEPTANCE CRITERIA FAILED");
    return all_ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
