#pragma once

/**
 * @file dynamics.hpp
 * @brief Trajectories of x_{n+1} = x_n f_n(x_{n-1}) and the k-periodic attractor.
 *
 * Indexing: the trajectory starts from the pair (x_{-1}, x_0) and stores x_1..x_N.
 * Residue h in 1..k collects the indices n = k m + h; x_0 belongs to residue k.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pplab/analysis.hpp"
#include "pplab/models.hpp"

namespace pplab {

inline constexpr double kOverflowLimit = 1e300;
inline constexpr double kContainmentSlack = 1e-9;

std::int64_t default_burn_in(std::size_t k);
std::int64_t default_sim_steps(std::size_t k);

/// x_n * f_n(x_prev). Throws DomainError for x_n <= 0 or x_prev < 0.
double step(const PeriodicSystem& system, std::int64_t n, double x_n, double x_prev);

struct Trajectory {
    double x0;
    double xm1;
    std::vector<double> values;  // values[i] = x_{i+1}
    std::size_t period;

    [[nodiscard]] std::int64_t length() const noexcept {
        return static_cast<std::int64_t>(values.size());
    }
    /// x_n for n in -1..N.
    [[nodiscard]] double at(std::int64_t n) const;
};

/// Iterates `steps` times from (x_{-1}, x_0) = (xm1, x0). Throws OverflowError when a value
/// exceeds 1e300 or stops being strictly positive (underflow to zero).
Trajectory simulate(const PeriodicSystem& system, double x0, double xm1, std::int64_t steps);

/// Trajectory CSV: header `n,x`, one row per stored step.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Plot CSV: header `n,x,h` including the initial pair.
void write_plot_csv(std::ostream& os, const Trajectory& traj);

struct ResidueStats {
    std::vector<double> sup;  // S_h estimate, h = 1..k
    std::vector<double> inf;  // I_h estimate, h = 1..k
    std::int64_t burn_in;
    std::int64_t tail_length;
};

/// Max / min of x_{km+h} over indices > burn_in. Throws EmptyTail if some residue has no sample.
ResidueStats residue_limits(const Trajectory& traj, std::int64_t burn_in);

struct PeriodicOrbit {
    std::vector<double> values;  // x*_1..x*_k
    double closure_residual;
    bool refined;                // false when the warm-start orbit was accepted as is
    int newton_iterations;
};

/// max_h |x*_{h+1} - x*_h f_h(x*_{h-1})| with indices mod k.
double closure_residual(const PeriodicSystem& system, const std::vector<double>& orbit);

/// max_h |Pi_{j=1}^{k} f_{h+j}(x*_{h+j-1}) - 1|.
double product_identity_residual(const PeriodicSystem& system, const std::vector<double>& orbit);

inline constexpr double kDefaultOrbitTol = 1e-12;
inline constexpr int kNewtonIterationCap = 50;

struct OrbitOptions {
    std::int64_t sim_steps = 0;  // 0 selects default_sim_steps(k)
    double refine_tol = kDefaultOrbitTol;
    /// Warm-start pair (x0, xm1); defaults to (x~, x~).
    std::optional<std::pair<double, double>> start;
};

/// Warm start by simulation, then Newton on the 2-D k-fold state map
/// (x_{-1}, x_0) -> (x_{k-1}, x_k). Throws NoOrbit unless PeriodicAttractive.
PeriodicOrbit extract_orbit(const PeriodicSystem& system, const OrbitOptions& opts = {});

enum class LemmaRelation {
    PairProduct,   // k = 2: f_h(x*_{h-1}) f_{h-1}(x*_h) = 1
    EvenProduct,   // even k: product of k/2 such pairs = 1
    OddTwoStep,    // odd k: x*_h = x*_{h-2} f_{h-2}(x*_{h-3}) f_{h-1}(x*_{h-2})
};

std::string_view to_string(LemmaRelation r) noexcept;

struct LemmaResidual {
    LemmaRelation relation;
    std::vector<double> per_residue;  // h = 1..k
    double max_abs;
};

/// Parity-appropriate relations with S_h = I_h = x*_h substituted.
std::vector<LemmaResidual> check_lemma_relations(const PeriodicSystem& system,
                                                 const PeriodicOrbit& orbit);

struct VerifyOptions {
    int n_initials = 32;
    std::int64_t steps = 0;     // 0 selects 20000 k
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::int64_t burn_in = 0;   // 0 selects default_burn_in(k)
    double root_tol = kDefaultRootTol;
    bool parallel = true;
};

struct InitialOutcome {
    double x0;
    double xm1;
    double max_deviation;   // max_h |x_{final, residue h} - x*_h|
    bool converged;
    bool contained;         // post-burn-in values inside the permanence interval
    double min_tail;
    double max_tail;
};

struct VerificationReport {
    std::vector<InitialOutcome> outcomes;  // ordered by initial index; last is the x_{-1} = 0 case
    double max_deviation;
    bool converged;
    bool contained;  // reported separately; the stated bounds can exclude the attractor itself
    PermanenceBounds bounds;
    std::int64_t steps;
    std::int64_t burn_in;

    /// Convergence of every initial condition to the orbit within tol.
    [[nodiscard]] bool passed() const noexcept { return converged; }
};

/// Simulates n_initials seeded initial pairs plus (x~, 0) and checks convergence to `orbit`
/// and permanence containment. Throws NoOrbit unless PeriodicAttractive.
VerificationReport verify_attractivity(const PeriodicSystem& system, const PeriodicOrbit& orbit,
                                       const VerifyOptions& opts = {});

}  // namespace pplab
