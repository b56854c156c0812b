#include "pplab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pplab/errors.hpp"

namespace pplab {

double product_at(const PeriodicSystem& system, double x) {
    double p = 1.0;
    for (const auto& f : system.coefficients()) p *= f(x);
    return p;
}

double limit_product(const PeriodicSystem& system) {
    double c = 1.0;
    for (const auto& f : system.coefficients()) c *= f.limit_at_infinity();
    return c;
}

std::string_view to_string(Dynamics d) noexcept {
    switch (d) {
        case Dynamics::ZeroAttractive: return "zero_attractive";
        case Dynamics::PeriodicAttractive: return "periodic_attractive";
        case Dynamics::OutOfTheory: return "out_of_theory";
    }
    return "unknown";
}

Dynamics dynamics_from_string(std::string_view name) {
    for (auto d : {Dynamics::ZeroAttractive, Dynamics::PeriodicAttractive, Dynamics::OutOfTheory}) {
        if (to_string(d) == name) return d;
    }
    throw DomainError("unknown classification '" + std::string(name) + "'");
}

Classification classify(const PeriodicSystem& system) {
    const double p0 = product_at(system, 0.0);
    const double c = limit_product(system);
    Dynamics kind = Dynamics::OutOfTheory;
    if (p0 <= 1.0) {
        kind = Dynamics::ZeroAttractive;
    } else if (c < 1.0) {
        kind = Dynamics::PeriodicAttractive;
    }
    return {kind, p0, c};
}

GridSpec default_grid(const PeriodicSystem& system) {
    // Upper estimate of the permanence interval; falls back to the largest
    // capacity-like scale when there is no positive root.
    double scale = 1.0;
    if (classify(system).kind == Dynamics::PeriodicAttractive) {
        scale = std::max(scale, permanence_bounds(system).upper);
    }
    for (const auto& f : system.coefficients()) {
        if (const auto* b = std::get_if<BevertonHolt>(&f.params())) {
            scale = std::max(scale, b->capacity * b->lambda);
        }
    }
    return GridSpec{10.0 * scale, 256, 0.0};
}

bool HypothesisReport::all_ok() const {
    return std::all_of(decreasing_ok.begin(), decreasing_ok.end(), [](bool b) { return b; }) &&
           std::all_of(xf_increasing_ok.begin(), xf_increasing_ok.end(), [](bool b) { return b; });
}

HypothesisReport check_hypotheses(const PeriodicSystem& system, const GridSpec& spec) {
    if (spec.points < 2 || !(spec.x_max > 0.0)) {
        throw DomainError("hypothesis grid needs points >= 2 and x_max > 0");
    }
    HypothesisReport report;
    // 0, then `points` log-spaced abscissae ending at x_max spanning 12 decades.
    const double lo = spec.x_max * 1e-12;
    const double ratio = std::log(spec.x_max / lo) / (spec.points - 1);
    report.grid.push_back(0.0);
    for (int j = 0; j < spec.points; ++j) report.grid.push_back(lo * std::exp(ratio * j));
    report.grid.back() = spec.x_max;

    double worst = 0.0;
    for (const auto& f : system.coefficients()) {
        bool dec = true;
        bool inc = true;
        double prev_x = report.grid.front();
        double prev_f = f(prev_x);
        for (std::size_t j = 1; j < report.grid.size(); ++j) {
            const double x = report.grid[j];
            const double fx = f(x);
            const double dec_margin = prev_f - fx;
            const double inc_margin = x * fx - prev_x * prev_f;
            if (!(dec_margin > spec.margin)) {
                dec = false;
                worst = std::min(worst, dec_margin - spec.margin);
            }
            if (!(inc_margin > spec.margin)) {
                inc = false;
                worst = std::min(worst, inc_margin - spec.margin);
            }
            prev_x = x;
            prev_f = fx;
        }
        report.decreasing_ok.push_back(dec);
        report.xf_increasing_ok.push_back(inc);
    }
    report.worst_violation = worst;
    return report;
}

double solve_xtilde(const PeriodicSystem& system, double tol) {
    if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
    const auto cls = classify(system);
    if (cls.kind != Dynamics::PeriodicAttractive) {
        throw NoRoot("Pi f_n(x) = 1 has no unique positive root: system is " +
                     std::string(to_string(cls.kind)));
    }
    auto g = [&](double x) { return product_at(system, x) - 1.0; };

    double lo = 0.0;
    double hi = 1.0;
    int doublings = 0;
    while (g(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > kRootIterationCap) {
            throw NonConvergence("bracket expansion for x~ exceeded the doubling cap");
        }
    }
    for (int it = 0; it < kRootIterationCap; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            // Bracket exhausted at machine resolution.
            const double best = std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
            if (std::abs(g(best)) <= tol) return best;
            throw NonConvergence("bisection for x~ stalled at machine precision above tol");
        }
        const double gm = g(mid);
        if (std::abs(gm) <= tol) return mid;
        if (gm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw NonConvergence("bisection for x~ exceeded the iteration cap");
}

PermanenceBounds permanence_bounds(const PeriodicSystem& system, double tol) {
    const double x_tilde = solve_xtilde(system, tol);
    const double x_bar = x_tilde * product_at(system, 0.0);
    const double lower = x_tilde * product_at(system, x_bar);
    return {x_tilde, x_bar, lower, x_bar};
}

}  // namespace pplab
