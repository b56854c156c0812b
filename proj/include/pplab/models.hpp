#pragma once

/**
 * @file models.hpp
 * @brief Coefficient families f_n and the k-periodic system x_{n+1} = x_n f_n(x_{n-1}).
 *
 * Built-in families:
 *   Pielou              f(x) = beta / (1 + x)
 *   BevertonHolt        f(x) = lambda / (1 + (lambda - 1) x / K)
 *   RationalSaturating  f(x) = beta / (1 + alpha1 x / (1 + alpha2 x))
 *
 * A CustomFamily is the extension point: it supplies its own value function,
 * limit at infinity and upper bound. Parameters are validated on construction.
 */

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pplab {

struct Pielou {
    double beta;
};

struct BevertonHolt {
    double lambda;
    double capacity;
};

struct RationalSaturating {
    double beta;
    double alpha1;
    double alpha2;
};

/// User-supplied family. `value` must be positive on [0, inf).
struct CustomFamily {
    std::string name;
    std::function<double(double)> value;
    double limit_at_infinity;
    double upper_bound;
};

class CoefficientFamily {
public:
    using Variant = std::variant<Pielou, BevertonHolt, RationalSaturating, CustomFamily>;

    static CoefficientFamily pielou(double beta);
    static CoefficientFamily beverton_holt(double lambda, double capacity);
    static CoefficientFamily rational(double beta, double alpha1, double alpha2);
    static CoefficientFamily custom(std::string name, std::function<double(double)> value,
                                    double limit_at_infinity, double upper_bound);

    /// f(x); throws DomainError for x < 0 or non-finite x.
    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double at_zero() const { return (*this)(0.0); }
    [[nodiscard]] double limit_at_infinity() const;
    /// sup of f over [0, inf). Equals f(0) for the built-in families.
    [[nodiscard]] double upper_bound() const;

    [[nodiscard]] const Variant& params() const noexcept { return params_; }
    [[nodiscard]] std::string_view tag() const noexcept;

private:
    explicit CoefficientFamily(Variant v) : params_(std::move(v)) {}
    Variant params_;
};

double eval_family(const CoefficientFamily& family, double x);
double limit_at_infinity(const CoefficientFamily& family);

class PeriodicSystem {
public:
    /// Throws DomainError if `coefficients` is empty.
    explicit PeriodicSystem(std::vector<CoefficientFamily> coefficients);

    [[nodiscard]] std::size_t period() const noexcept { return coefficients_.size(); }
    [[nodiscard]] std::span<const CoefficientFamily> coefficients() const noexcept {
        return coefficients_;
    }

    /// Coefficient used by step n of the recursion: index ((n - 1) mod k) + 1, 1-based.
    [[nodiscard]] const CoefficientFamily& family(std::int64_t n) const;
    /// f_n(x) with f_h = f_{h+k} for every integer h.
    [[nodiscard]] double f_at(std::int64_t n, double x) const { return family(n)(x); }

private:
    std::vector<CoefficientFamily> coefficients_;
};

/// 1-based residue of n modulo k, in 1..k.
std::size_t residue(std::int64_t n, std::size_t k);

inline double f_at(const PeriodicSystem& system, std::int64_t n, double x) {
    return system.f_at(n, x);
}

}  // namespace pplab
