#include "pplab/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <tuple>

#include "pplab/errors.hpp"

namespace pplab {
namespace {

void check_value(double x, std::int64_t n) {
    if (!(x > 0.0)) {
        throw OverflowError("x_" + std::to_string(n) + " = " + std::to_string(x) +
                            " is not strictly positive (underflow)");
    }
    if (!(x <= kOverflowLimit)) {
        throw OverflowError("x_" + std::to_string(n) + " exceeds 1e300");
    }
}

/// Runs the recursion from (xm1, x0), calling visit(n, x_n) for n = 1..steps.
template <class Visit>
void iterate(const PeriodicSystem& system, double x0, double xm1, std::int64_t steps,
             Visit&& visit) {
    if (!(x0 > 0.0) || !std::isfinite(x0)) throw DomainError("x_0 must be positive and finite");
    if (!(xm1 >= 0.0) || !std::isfinite(xm1)) {
        throw DomainError("x_{-1} must be nonnegative and finite");
    }
    double prev = xm1;
    double cur = x0;
    for (std::int64_t n = 0; n < steps; ++n) {
        const double next = cur * system.f_at(n, prev);
        check_value(next, n + 1);
        visit(n + 1, next);
        prev = cur;
        cur = next;
    }
}

/// The k-fold state map (x_{-1}, x_0) -> (x_{k-1}, x_k).
std::array<double, 2> kfold(const PeriodicSystem& system, double u, double v) {
    const auto k = static_cast<std::int64_t>(system.period());
    double prev = u;
    double cur = v;
    for (std::int64_t n = 0; n < k; ++n) {
        const double next = cur * system.f_at(n, prev);
        prev = cur;
        cur = next;
    }
    return {prev, cur};
}

std::vector<double> orbit_from_state(const PeriodicSystem& system, double u, double v) {
    std::vector<double> orbit;
    orbit.reserve(system.period());
    iterate(system, v, u, static_cast<std::int64_t>(system.period()),
            [&](std::int64_t, double x) { orbit.push_back(x); });
    return orbit;
}

double orbit_at(const std::vector<double>& orbit, std::int64_t h) {
    return orbit[residue(h, orbit.size()) - 1];
}

}  // namespace

std::int64_t default_burn_in(std::size_t k) {
    return std::max<std::int64_t>(1000, 100 * static_cast<std::int64_t>(k));
}

std::int64_t default_sim_steps(std::size_t k) {
    return std::max<std::int64_t>(10000, 1000 * static_cast<std::int64_t>(k));
}

double step(const PeriodicSystem& system, std::int64_t n, double x_n, double x_prev) {
    if (!(x_n > 0.0)) throw DomainError("step needs x_n > 0, got " + std::to_string(x_n));
    if (!(x_prev >= 0.0)) throw DomainError("step needs x_{n-1} >= 0");
    return x_n * system.f_at(n, x_prev);
}

double Trajectory::at(std::int64_t n) const {
    if (n == -1) return xm1;
    if (n == 0) return x0;
    if (n < -1 || n > length()) throw DomainError("trajectory index out of range");
    return values[static_cast<std::size_t>(n - 1)];
}

Trajectory simulate(const PeriodicSystem& system, double x0, double xm1, std::int64_t steps) {
    if (steps < 1) throw DomainError("simulate needs steps >= 1");
    Trajectory traj{x0, xm1, {}, system.period()};
    traj.values.reserve(static_cast<std::size_t>(steps));
    iterate(system, x0, xm1, steps, [&](std::int64_t, double x) { traj.values.push_back(x); });
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const auto old = os.precision(std::numeric_limits<double>::max_digits10);
    os << "n,x\n";
    for (std::int64_t n = 1; n <= traj.length(); ++n) os << n << ',' << traj.at(n) << '\n';
    os.precision(old);
}

void write_plot_csv(std::ostream& os, const Trajectory& traj) {
    const auto old = os.precision(std::numeric_limits<double>::max_digits10);
    os << "n,x,h\n";
    for (std::int64_t n = -1; n <= traj.length(); ++n) {
        os << n << ',' << traj.at(n) << ',' << residue(n, traj.period) << '\n';
    }
    os.precision(old);
}

ResidueStats residue_limits(const Trajectory& traj, std::int64_t burn_in) {
    if (burn_in >= traj.length()) throw EmptyTail("burn_in leaves no samples");
    const std::size_t k = traj.period;
    ResidueStats stats{std::vector<double>(k, -std::numeric_limits<double>::infinity()),
                       std::vector<double>(k, std::numeric_limits<double>::infinity()),
                       burn_in, 0};
    std::vector<std::int64_t> counts(k, 0);
    for (std::int64_t n = std::max<std::int64_t>(burn_in + 1, -1); n <= traj.length(); ++n) {
        const std::size_t h = residue(n, k) - 1;
        const double x = traj.at(n);
        stats.sup[h] = std::max(stats.sup[h], x);
        stats.inf[h] = std::min(stats.inf[h], x);
        ++counts[h];
        ++stats.tail_length;
    }
    for (std::size_t h = 0; h < k; ++h) {
        if (counts[h] == 0) {
            throw EmptyTail("residue " + std::to_string(h + 1) + " has no samples past burn_in");
        }
    }
    return stats;
}

double closure_residual(const PeriodicSystem& system, const std::vector<double>& orbit) {
    double worst = 0.0;
    const auto k = static_cast<std::int64_t>(orbit.size());
    for (std::int64_t h = 1; h <= k; ++h) {
        const double predicted = orbit_at(orbit, h) * system.f_at(h, orbit_at(orbit, h - 1));
        worst = std::max(worst, std::abs(orbit_at(orbit, h + 1) - predicted));
    }
    return worst;
}

double product_identity_residual(const PeriodicSystem& system, const std::vector<double>& orbit) {
    double worst = 0.0;
    const auto k = static_cast<std::int64_t>(orbit.size());
    for (std::int64_t h = 1; h <= k; ++h) {
        double p = 1.0;
        for (std::int64_t j = 1; j <= k; ++j) p *= system.f_at(h + j, orbit_at(orbit, h + j - 1));
        worst = std::max(worst, std::abs(p - 1.0));
    }
    return worst;
}

PeriodicOrbit extract_orbit(const PeriodicSystem& system, const OrbitOptions& opts) {
    const auto cls = classify(system);
    if (cls.kind != Dynamics::PeriodicAttractive) {
        throw NoOrbit("no periodic attractor: system is " + std::string(to_string(cls.kind)));
    }
    const std::size_t k = system.period();
    const auto ki = static_cast<std::int64_t>(k);
    const std::int64_t sim_steps = opts.sim_steps > 0 ? opts.sim_steps : default_sim_steps(k);

    // Phase 1: warm start.
    double x0 = 0.0;
    double xm1 = 0.0;
    if (opts.start) {
        std::tie(x0, xm1) = *opts.start;
    } else {
        x0 = xm1 = solve_xtilde(system);
    }
    std::vector<double> warm(k);
    {
        const std::int64_t steps = std::max(sim_steps, 2 * ki);
        iterate(system, x0, xm1, steps, [&](std::int64_t n, double x) {
            if (n > steps - ki) warm[residue(n, k) - 1] = x;
        });
    }
    const double warm_residual = closure_residual(system, warm);

    // Phase 2: Newton on F(u, v) = G(u, v) - (u, v).
    double u = orbit_at(warm, ki - 1);
    double v = orbit_at(warm, ki);
    auto residual = [&](double a, double b) {
        const auto g = kfold(system, a, b);
        return std::array<double, 2>{g[0] - a, g[1] - b};
    };
    auto norm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };

    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto r = residual(u, v);
    double best_u = u;
    double best_v = v;
    double best_norm = norm(r);
    int iterations = 0;
    for (; iterations < kNewtonIterationCap; ++iterations) {
        if (best_norm <= 4.0 * eps * std::max({1.0, u, v})) break;
        const double hu = std::max(1e-7 * std::abs(u), 1e-9);
        const double hv = std::max(1e-7 * std::abs(v), 1e-9);
        const auto ru = residual(u + hu, v);
        const auto rv = residual(u, v + hv);
        const double j00 = (ru[0] - r[0]) / hu;
        const double j10 = (ru[1] - r[1]) / hu;
        const double j01 = (rv[0] - r[0]) / hv;
        const double j11 = (rv[1] - r[1]) / hv;
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || det == 0.0) break;
        double du = -(j11 * r[0] - j01 * r[1]) / det;
        double dv = -(-j10 * r[0] + j00 * r[1]) / det;
        // Damp steps that would leave the admissible region u >= 0, v > 0.
        double scale = 1.0;
        while ((u + scale * du < 0.0 || v + scale * dv <= 0.0) && scale > 1e-6) scale *= 0.5;
        if (u + scale * du < 0.0 || v + scale * dv <= 0.0) break;
        u += scale * du;
        v += scale * dv;
        r = residual(u, v);
        const double nr = norm(r);
        if (!std::isfinite(nr)) break;
        if (nr < best_norm) {
            best_norm = nr;
            best_u = u;
            best_v = v;
        }
        if (std::abs(scale * du) <= eps * std::max(1.0, u) &&
            std::abs(scale * dv) <= eps * std::max(1.0, v)) {
            ++iterations;
            break;
        }
    }

    auto refined = orbit_from_state(system, best_u, best_v);
    const double refined_residual = closure_residual(system, refined);
    if (refined_residual <= opts.refine_tol && refined_residual <= warm_residual) {
        return {std::move(refined), refined_residual, true, iterations};
    }
    if (warm_residual <= opts.refine_tol) return {std::move(warm), warm_residual, false, iterations};
    if (refined_residual <= opts.refine_tol) {
        return {std::move(refined), refined_residual, true, iterations};
    }
    throw NonConvergence("orbit refinement failed: closure residual " +
                         std::to_string(std::min(refined_residual, warm_residual)) + " > tol " +
                         std::to_string(opts.refine_tol));
}

std::string_view to_string(LemmaRelation r) noexcept {
    switch (r) {
        case LemmaRelation::PairProduct: return "pair_product";
        case LemmaRelation::EvenProduct: return "even_product";
        case LemmaRelation::OddTwoStep: return "odd_two_step";
    }
    return "unknown";
}

std::vector<LemmaResidual> check_lemma_relations(const PeriodicSystem& system,
                                                 const PeriodicOrbit& orbit) {
    const auto& x = orbit.values;
    const auto k = static_cast<std::int64_t>(x.size());
    if (static_cast<std::size_t>(k) != system.period()) {
        throw DomainError("orbit length does not match the system period");
    }
    auto xs = [&](std::int64_t h) { return orbit_at(x, h); };
    auto finish = [](LemmaRelation rel, std::vector<double> res) {
        double m = 0.0;
        for (double d : res) m = std::max(m, std::abs(d));
        return LemmaResidual{rel, std::move(res), m};
    };

    std::vector<LemmaResidual> out;
    if (k == 2) {
        std::vector<double> res;
        for (std::int64_t h = 1; h <= k; ++h) {
            res.push_back(system.f_at(h, xs(h - 1)) * system.f_at(h - 1, xs(h)) - 1.0);
        }
        out.push_back(finish(LemmaRelation::PairProduct, std::move(res)));
    }
    if (k % 2 == 0) {
        std::vector<double> res;
        for (std::int64_t h = 1; h <= k; ++h) {
            double p = 1.0;
            for (std::int64_t i = 1; i <= k / 2; ++i) {
                p *= system.f_at(h - 2 * i, xs(h - 2 * i - 1)) *
                     system.f_at(h - 2 * i + 1, xs(h - 2 * i));
            }
            res.push_back(p - 1.0);
        }
        out.push_back(finish(LemmaRelation::EvenProduct, std::move(res)));
    } else {
        std::vector<double> res;
        for (std::int64_t h = 1; h <= k; ++h) {
            res.push_back(xs(h) - xs(h - 2) * system.f_at(h - 2, xs(h - 3)) *
                                      system.f_at(h - 1, xs(h - 2)));
        }
        out.push_back(finish(LemmaRelation::OddTwoStep, std::move(res)));
    }
    return out;
}

VerificationReport verify_attractivity(const PeriodicSystem& system, const PeriodicOrbit& orbit,
                                       const VerifyOptions& opts) {
    const auto cls = classify(system);
    if (cls.kind != Dynamics::PeriodicAttractive) {
        throw NoOrbit("attractivity check needs a periodic attractor: system is " +
                      std::string(to_string(cls.kind)));
    }
    const std::size_t k = system.period();
    if (orbit.values.size() != k) throw DomainError("orbit length does not match the system period");
    if (opts.n_initials < 0) throw DomainError("n_initials must be nonnegative");

    const auto bounds = permanence_bounds(system, opts.root_tol);
    const std::int64_t steps = opts.steps > 0 ? opts.steps : 20000 * static_cast<std::int64_t>(k);
    const std::int64_t burn_in = opts.burn_in > 0 ? opts.burn_in : default_burn_in(k);
    if (steps <= burn_in) throw DomainError("verification steps must exceed burn_in");

    // Draw every initial pair up front so results do not depend on scheduling.
    std::vector<std::pair<double, double>> initials;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> log_x0(std::log(bounds.lower / 10.0),
                                                  std::log(10.0 * bounds.upper));
    std::uniform_real_distribution<double> lin_xm1(0.0, 10.0 * bounds.upper);
    for (int i = 0; i < opts.n_initials; ++i) {
        const double x0 = std::exp(log_x0(rng));
        const double xm1 = lin_xm1(rng);
        initials.emplace_back(x0, xm1);
    }
    initials.emplace_back(bounds.x_tilde, 0.0);

    auto run_one = [&](std::pair<double, double> init) {
        InitialOutcome o{init.first, init.second, 0.0, false, false,
                         std::numeric_limits<double>::infinity(), 0.0};
        iterate(system, init.first, init.second, steps, [&](std::int64_t n, double x) {
            if (n > burn_in) {
                o.min_tail = std::min(o.min_tail, x);
                o.max_tail = std::max(o.max_tail, x);
            }
            if (n > steps - static_cast<std::int64_t>(k)) {
                o.max_deviation = std::max(o.max_deviation, std::abs(x - orbit_at(orbit.values, n)));
            }
        });
        o.converged = o.max_deviation <= opts.tol;
        o.contained = o.min_tail >= bounds.lower - kContainmentSlack &&
                      o.max_tail <= bounds.upper + kContainmentSlack;
        return o;
    };

    VerificationReport report{{}, 0.0, true, true, bounds, steps, burn_in};
    if (opts.parallel) {
        std::vector<std::future<InitialOutcome>> futures;
        futures.reserve(initials.size());
        for (const auto& init : initials) {
            futures.push_back(std::async(std::launch::async, run_one, init));
        }
        for (auto& f : futures) report.outcomes.push_back(f.get());
    } else {
        for (const auto& init : initials) report.outcomes.push_back(run_one(init));
    }
    for (const auto& o : report.outcomes) {
        report.max_deviation = std::max(report.max_deviation, o.max_deviation);
        report.converged = report.converged && o.converged;
        report.contained = report.contained && o.contained;
    }
    return report;
}

}  // namespace pplab
