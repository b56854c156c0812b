#include "pplab/models.hpp"

#include <cmath>
#include <string>

#include "pplab/errors.hpp"

namespace pplab {
namespace {

void require_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) {
        throw DomainError(std::string(what) + " must be a positive finite number, got " +
                          std::to_string(v));
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

CoefficientFamily CoefficientFamily::pielou(double beta) {
    require_positive(beta, "pielou.beta");
    return CoefficientFamily(Pielou{beta});
}

CoefficientFamily CoefficientFamily::beverton_holt(double lambda, double capacity) {
    if (!(std::isfinite(lambda) && lambda > 1.0)) {
        throw DomainError("beverton_holt.lambda must be > 1, got " + std::to_string(lambda));
    }
    require_positive(capacity, "beverton_holt.capacity");
    return CoefficientFamily(BevertonHolt{lambda, capacity});
}

CoefficientFamily CoefficientFamily::rational(double beta, double alpha1, double alpha2) {
    require_positive(beta, "rational.beta");
    require_positive(alpha1, "rational.alpha1");
    require_positive(alpha2, "rational.alpha2");
    return CoefficientFamily(RationalSaturating{beta, alpha1, alpha2});
}

CoefficientFamily CoefficientFamily::custom(std::string name, std::function<double(double)> value,
                                            double limit_at_infinity, double upper_bound) {
    if (!value) throw DomainError("custom family '" + name + "' has no value function");
    if (!(std::isfinite(limit_at_infinity) && limit_at_infinity >= 0.0)) {
        throw DomainError("custom family '" + name + "' needs a finite nonnegative limit");
    }
    require_positive(upper_bound, "custom.upper_bound");
    return CoefficientFamily(
        CustomFamily{std::move(name), std::move(value), limit_at_infinity, upper_bound});
}

double CoefficientFamily::operator()(double x) const {
    if (!(x >= 0.0) || std::isnan(x)) {
        throw DomainError("coefficient evaluated at x = " + std::to_string(x) + " < 0");
    }
    if (std::isinf(x)) return limit_at_infinity();
    return std::visit(
        overloaded{
            [x](const Pielou& p) { return p.beta / (1.0 + x); },
            [x](const BevertonHolt& b) {
                return b.lambda / (1.0 + (b.lambda - 1.0) * x / b.capacity);
            },
            [x](const RationalSaturating& r) {
                return r.beta / (1.0 + r.alpha1 * x / (1.0 + r.alpha2 * x));
            },
            [x](const CustomFamily& c) { return c.value(x); },
        },
        params_);
}

double CoefficientFamily::limit_at_infinity() const {
    return std::visit(overloaded{
                          [](const Pielou&) { return 0.0; },
                          [](const BevertonHolt&) { return 0.0; },
                          [](const RationalSaturating& r) {
                              return r.beta / (1.0 + r.alpha1 / r.alpha2);
                          },
                          [](const CustomFamily& c) { return c.limit_at_infinity; },
                      },
                      params_);
}

double CoefficientFamily::upper_bound() const {
    if (const auto* c = std::get_if<CustomFamily>(&params_)) return c->upper_bound;
    return at_zero();
}

std::string_view CoefficientFamily::tag() const noexcept {
    return std::visit(overloaded{
                          [](const Pielou&) -> std::string_view { return "pielou"; },
                          [](const BevertonHolt&) -> std::string_view { return "beverton_holt"; },
                          [](const RationalSaturating&) -> std::string_view { return "rational"; },
                          [](const CustomFamily&) -> std::string_view { return "custom"; },
                      },
                      params_);
}

double eval_family(const CoefficientFamily& family, double x) { return family(x); }

double limit_at_infinity(const CoefficientFamily& family) { return family.limit_at_infinity(); }

PeriodicSystem::PeriodicSystem(std::vector<CoefficientFamily> coefficients)
    : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) throw DomainError("a periodic system needs period k >= 1");
}

std::size_t residue(std::int64_t n, std::size_t k) {
    const auto kk = static_cast<std::int64_t>(k);
    const std::int64_t r = ((n - 1) % kk + kk) % kk;
    return static_cast<std::size_t>(r) + 1;
}

const CoefficientFamily& PeriodicSystem::family(std::int64_t n) const {
    return coefficients_[residue(n, period()) - 1];
}

}  // namespace pplab
