#include "pplab/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pplab/analysis.hpp"
#include "pplab/dynamics.hpp"
#include "pplab/errors.hpp"

namespace pplab::cli {
namespace {

namespace fs = std::filesystem;

bool wants(Command c, std::initializer_list<Command> set) {
    for (auto s : set) {
        if (s == c) return true;
    }
    return false;
}

fs::path resolve(const fs::path& out_dir, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : out_dir / path;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ScenarioError(path.string() + ": cannot open for writing");
    out << content;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (auto c : {Command::Analyze, Command::Simulate, Command::Orbit, Command::Verify,
                   Command::Full}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Analyze: return "analyze";
        case Command::Simulate: return "simulate";
        case Command::Orbit: return "orbit";
        case Command::Verify: return "verify";
        case Command::Full: return "full";
    }
    return "unknown";
}

void apply_seed_override(Scenario& scenario, const char* env_value) {
    if (env_value == nullptr) return;
    const std::string text(env_value);
    try {
        std::size_t used = 0;
        const auto seed = std::stoull(text, &used, 10);
        if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
        scenario.verify.seed = seed;
    } catch (const std::exception&) {
        throw ScenarioError("PPLAB_SEED: expected a nonnegative integer, got '" + text + "'");
    }
}

RunResult run(Command command, const Scenario& sc, const std::optional<fs::path>& out_dir) {
    const PeriodicSystem system = sc.system();
    const std::size_t k = system.period();
    RunResult result;
    Report& rep = result.report;
    rep.command = std::string(to_string(command));

    const auto cls = classify(system);
    const bool periodic = cls.kind == Dynamics::PeriodicAttractive;
    rep.classification = {std::string(to_string(cls.kind)), cls.product_at_zero, cls.limit_product};

    const GridSpec grid = sc.grid ? *sc.grid : default_grid(system);
    auto& s = rep.settings;
    s.period = static_cast<std::int64_t>(k);
    for (const auto& f : sc.coefficients) s.coefficients.push_back(family_to_json(f));
    s.x0 = sc.x0;
    s.xm1 = sc.xm1;
    s.steps = sc.steps;
    s.burn_in = sc.burn_in > 0 ? sc.burn_in : default_burn_in(k);
    s.sim_steps = sc.sim_steps > 0 ? sc.sim_steps : default_sim_steps(k);
    s.root_tol = sc.tolerances.root_tol;
    s.orbit_tol = sc.tolerances.orbit_tol;
    s.verify_tol = sc.tolerances.verify_tol;
    s.lemma_tol = sc.tolerances.lemma_tol;
    s.n_initials = sc.verify.n_initials;
    s.seed = sc.verify.seed;
    s.verify_steps = sc.verify.steps > 0 ? sc.verify.steps : 20000 * static_cast<std::int64_t>(k);
    s.grid_x_max = grid.x_max;
    s.grid_points = grid.points;
    s.grid_margin = grid.margin;

    auto fail = [&](std::string note) {
        rep.notes.push_back(std::move(note));
        rep.checks_passed = false;
    };

    if (cls.kind == Dynamics::OutOfTheory) {
        rep.notes.emplace_back("classification: P0 > 1 with limit product >= 1; no attractivity claims checked");
    }

    if (command != Command::Simulate) {
        const auto hyp = check_hypotheses(system, grid);
        rep.hypotheses = HypothesisEntry{hyp.all_ok(), hyp.decreasing_ok, hyp.xf_increasing_ok,
                                         hyp.worst_violation};
        if (!hyp.all_ok()) fail("hypotheses: monotonicity violated on the check grid");
        if (periodic) {
            try {
                const auto b = permanence_bounds(system, s.root_tol);
                rep.bounds = BoundsEntry{b.x_tilde, b.x_bar, b.lower, b.upper,
                                         std::abs(product_at(system, b.x_tilde) - 1.0)};
            } catch (const std::exception& e) {
                fail(std::string("bounds: ") + e.what());
            }
        }
    }

    std::optional<PeriodicOrbit> orbit;
    if (wants(command, {Command::Orbit, Command::Verify, Command::Full})) {
        if (!periodic) {
            fail("orbit: not applicable (" + rep.classification.kind + ")");
        } else {
            try {
                orbit = extract_orbit(system, {s.sim_steps, s.orbit_tol, std::nullopt});
                rep.orbit = OrbitEntry{orbit->values, orbit->closure_residual,
                                       product_identity_residual(system, orbit->values),
                                       orbit->refined, orbit->newton_iterations};
                for (const auto& lr : check_lemma_relations(system, *orbit)) {
                    rep.lemma_relations.push_back(
                        {std::string(to_string(lr.relation)), lr.max_abs, lr.per_residue});
                    if (lr.max_abs > s.lemma_tol) {
                        fail("lemma: " + std::string(to_string(lr.relation)) +
                             " residual exceeds lemma_tol");
                    }
                }
            } catch (const std::exception& e) {
                fail(std::string("orbit: ") + e.what());
            }
        }
    }

    if (wants(command, {Command::Verify, Command::Full})) {
        if (!orbit) {
            fail("verification: not applicable");
        } else {
            VerifyOptions vo;
            vo.n_initials = s.n_initials;
            vo.steps = s.verify_steps;
            vo.seed = s.seed;
            vo.tol = s.verify_tol;
            vo.burn_in = s.burn_in;
            vo.root_tol = s.root_tol;
            try {
                const auto v = verify_attractivity(system, *orbit, vo);
                VerificationEntry e{v.passed(), v.converged, v.contained, v.max_deviation,
                                    v.steps, v.burn_in, {}};
                for (const auto& o : v.outcomes) {
                    e.outcomes.push_back({o.x0, o.xm1, o.max_deviation, o.converged, o.contained});
                }
                rep.verification = std::move(e);
                if (!v.passed()) fail("verification: some initial condition did not converge to the orbit");
                if (!v.contained) {
                    rep.notes.emplace_back(
                        "permanence: post-burn-in values left [lower, upper]; see verification.outcomes");
                }
            } catch (const std::exception& e) {
                fail(std::string("verification: ") + e.what());
            }
        }
    }

    std::optional<Trajectory> traj;
    if (wants(command, {Command::Simulate, Command::Full})) {
        try {
            traj = simulate(system, sc.x0, sc.xm1, sc.steps);
            const auto burn = std::min<std::int64_t>(s.burn_in, traj->length() - 1);
            if (burn != s.burn_in) {
                rep.notes.push_back("simulate: burn_in reduced to " + std::to_string(burn) +
                                    " to fit the trajectory");
            }
            const auto st = residue_limits(*traj, burn);
            rep.residue_stats = ResidueEntry{st.sup, st.inf, st.burn_in, st.tail_length,
                                             traj->values.back()};
        } catch (const std::exception& e) {
            fail(std::string("simulate: ") + e.what());
        }
    }

    result.exit_code = rep.checks_passed ? kExitOk : kExitChecksFailed;
    if (!out_dir) return result;

    const auto report_path = resolve(*out_dir, sc.outputs.report_path);
    write_file(report_path, serialize(rep));
    result.written.push_back(report_path);
    if (traj && sc.outputs.trajectory_csv_path) {
        const auto p = resolve(*out_dir, *sc.outputs.trajectory_csv_path);
        std::ostringstream os;
        write_trajectory_csv(os, *traj);
        write_file(p, os.str());
        result.written.push_back(p);
    }
    if (traj && sc.outputs.plot_csv_path) {
        const auto p = resolve(*out_dir, *sc.outputs.plot_csv_path);
        std::ostringstream os;
        write_plot_csv(os, *traj);
        write_file(p, os.str());
        result.written.push_back(p);
    }
    return result;
}

}  // namespace pplab::cli
