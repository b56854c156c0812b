#pragma once

#include <string_view>
#include <vector>

#include "pplab/models.hpp"

namespace pplab {

/// Pi_{n=1}^{k} f_n(x).
double product_at(const PeriodicSystem& system, double x);

/// Pi_{n=1}^{k} lim_{x->inf} f_n(x), assembled from the closed-form per-family limits.
double limit_product(const PeriodicSystem& system);

enum class Dynamics { ZeroAttractive, PeriodicAttractive, OutOfTheory };

std::string_view to_string(Dynamics d) noexcept;
/// Inverse of to_string; throws DomainError on an unknown name.
Dynamics dynamics_from_string(std::string_view name);

struct Classification {
    Dynamics kind;
    double product_at_zero;  // P0
    double limit_product;    // c
};

/// P0 <= 1 -> ZeroAttractive; P0 > 1, c < 1 -> PeriodicAttractive; otherwise OutOfTheory.
Classification classify(const PeriodicSystem& system);

struct GridSpec {
    double x_max = 100.0;
    int points = 256;
    double margin = 0.0;
};

/// Grid used when no explicit x_max is requested: 10x an estimate of the permanence upper bound.
GridSpec default_grid(const PeriodicSystem& system);

struct HypothesisReport {
    std::vector<bool> decreasing_ok;      // per coefficient index 1..k
    std::vector<bool> xf_increasing_ok;   // per coefficient index 1..k
    std::vector<double> grid;
    double worst_violation = 0.0;         // most negative margin found, 0 if none

    [[nodiscard]] bool all_ok() const;
};

/// Checks strict decrease of f_i and strict increase of x f_i(x) on 0 followed by a
/// log-spaced grid on (0, x_max]. Violations are reported, never thrown.
HypothesisReport check_hypotheses(const PeriodicSystem& system, const GridSpec& grid);

inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr int kRootIterationCap = 200;

/// Unique positive root x~ of Pi f_n(x) = 1. Bracket [0, 1] is doubled on the right until
/// the product drops below 1, then bisected until |product - 1| <= tol.
/// Throws NoRoot unless the system is PeriodicAttractive, NonConvergence past the cap.
double solve_xtilde(const PeriodicSystem& system, double tol = kDefaultRootTol);

struct PermanenceBounds {
    double x_tilde;
    double x_bar;   // x~ Pi f_n(0)
    double lower;   // x~ Pi f_n(x_bar)
    double upper;   // == x_bar
};

PermanenceBounds permanence_bounds(const PeriodicSystem& system, double tol = kDefaultRootTol);

}  // namespace pplab
