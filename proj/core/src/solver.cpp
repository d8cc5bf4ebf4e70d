#include "dnls/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace dnls {

namespace {

Field initial_direction(const Problem& p, const SolverOptions& opts) {
    const Graph& g = p.graph;
    switch (opts.init) {
        case InitKind::bump_at_vertex: {
            int v = opts.init_vertex >= 0 ? opts.init_vertex : g.vertex_count() / 2;
            if (v >= g.vertex_count()) throw error("minimize: init vertex out of range");
            return normalized(p, delta_field(g, v));
        }
        case InitKind::random_positive: {
            std::mt19937_64 rng(opts.seed);
            std::uniform_real_distribution<double> dist(0.0, 1.0);
            Field w = zeros(g);
            for (double& x : w.values) x = 1.0 - dist(rng); // entries in (0, 1]
            return normalized(p, w);
        }
        case InitKind::user_field: {
            if (!opts.init_field) throw error("minimize: init kind user_field needs init_field");
            ensure_finite(*opts.init_field, "minimize init");
            return normalized(p, *opts.init_field);
        }
    }
    throw error("minimize: unknown init kind");
}

void gate_custom_nonlinearity(const Problem& p) {
    if (p.nonlinearity.is_power()) return; // power family satisfies the hypotheses analytically
    const auto grid = default_condition_grid(p.graph.vertex_count());
    const ConditionReport rep = check_conditions(p.nonlinearity, grid);
    if (!rep.passed()) throw model_error("custom nonlinearity rejected: " + rep.summary());
}

} // namespace

GroundStateResult minimize(const Problem& p, const SolverOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(opts.tol_grad > 0.0) || !(opts.tol_point > 0.0) || !(opts.tol_nehari > 0.0))
        throw error("minimize: tolerances must be positive");
    if (!(opts.step.backtrack > 0.0 && opts.step.backtrack < 1.0))
        throw error("minimize: backtracking factor must lie in (0,1)");
    gate_custom_nonlinearity(p);

    GroundStateResult res;
    Field w = initial_direction(p, opts);
    ReducedPoint pt = reduced_point(p, w);

    double trial = opts.step.initial;
    int iter = 0;

    res.s_history.push_back(pt.s);
    res.energy_trace.push_back(pt.value);
    if (opts.record_trace) res.trace.push_back({0, pt.s, pt.value, pt.tangent_sup});

    for (; iter < opts.max_iters; ++iter) {
        if (pt.tangent_sup <= opts.tol_grad) break;

        // Directional derivative of Psi along -g_t is -|g_t|_2^2.
        const double decrease_scale = pt.tangent_l2 * pt.tangent_l2;
        double eta = trial;
        bool accepted = false;
        Field w_next;
        ReducedPoint pt_next;
        while (eta > 1e-18 * opts.step.initial) {
            Field cand = w;
            for (int x = 0; x < p.graph.vertex_count(); ++x) cand[x] -= eta * pt.tangent_gradient[x];
            cand = normalized(p, cand);
            ReducedPoint cand_pt = reduced_point(p, cand);
            if (cand_pt.value <= pt.value - opts.step.sufficient_decrease * eta * decrease_scale) {
                w_next = std::move(cand);
                pt_next = std::move(cand_pt);
                accepted = true;
                break;
            }
            eta *= opts.step.backtrack;
        }
        if (!accepted) break; // backtracking hit the numerical floor
        w = std::move(w_next);
        pt = std::move(pt_next);
        trial = std::min(opts.step.initial, eta * 2.0);

        res.s_history.push_back(pt.s);
        res.energy_trace.push_back(pt.value);
        if (opts.record_trace) res.trace.push_back({iter + 1, pt.s, pt.value, pt.tangent_sup});
    }

    Field u = pt.u;
    // Ground states come in +/- pairs for odd f; report the one nonnegative at
    // its largest-|value| vertex, ties broken by lowest vertex index.
    if (p.nonlinearity.odd()) {
        int peak = 0;
        for (int x = 1; x < p.graph.vertex_count(); ++x)
            if (std::abs(u[x]) > std::abs(u[peak])) peak = x;
        if (u[peak] < 0.0)
            for (double& x : u.values) x = -x;
    }

    res.u_star = std::move(u);
    res.energy = action(p, res.u_star);
    res.residuals = compute_residuals(p, res.u_star);
    res.iterations = iter;

    const double sup_u = lp_norm(res.u_star, std::numeric_limits<double>::infinity());
    const double point_threshold = opts.tol_point * std::max(1.0, sup_u);
    const bool nehari_ok = res.residuals.nehari && *res.residuals.nehari <= opts.tol_nehari;
    res.converged = pt.tangent_sup <= opts.tol_grad && nehari_ok && res.residuals.pointwise_sup <= point_threshold;

    res.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::string VerifyReport::summary() const {
    std::ostringstream os;
    os << "pointwise residual: " << (pointwise_ok ? "pass" : "FAIL") << " (sup " << pointwise_sup << " vs " << pointwise_threshold
       << "); nehari membership: " << (nehari_ok ? "pass" : "FAIL") << " (|Phi'(u)u| = " << nehari_residual
       << "); inf-max over " << rays << " rays: " << (infmax_ok ? "pass" : "FAIL")
       << " (worst margin " << infmax_worst_margin << ")";
    return os.str();
}

VerifyReport verify(const Problem& p, const GroundStateResult& r, int rays, std::uint64_t seed) {
    VerifyReport rep;
    rep.rays = rays;

    const double sup_u = lp_norm(r.u_star, std::numeric_limits<double>::infinity());
    rep.pointwise_threshold = 1e-8 * std::max(1.0, sup_u);
    const Residuals res = compute_residuals(p, r.u_star);
    rep.pointwise_sup = res.pointwise_sup;
    rep.pointwise_ok = rep.pointwise_sup <= rep.pointwise_threshold;
    rep.nehari_residual = res.nehari.value_or(std::numeric_limits<double>::infinity());
    rep.nehari_ok = rep.nehari_residual <= 1e-8;

    // No sampled ray's fiber maximum may undercut the claimed infimum. The
    // scan includes the projected maximizer, so the per-ray maximum is exact.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    rep.infmax_worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < rays; ++k) {
        Field w = zeros(p.graph);
        for (double& x : w.values) x = dist(rng);
        w = normalized(p, w);
        double best = project(p, w).fiber_value;
        for (int i = 0; i < 50; ++i) {
            const double s = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
            best = std::max(best, fiber(p, w, s).value);
        }
        rep.infmax_worst_margin = std::min(rep.infmax_worst_margin, best - r.energy);
    }
    rep.infmax_ok = rep.infmax_worst_margin >= -1e-8;
    return rep;
}

EnergyComparison compare_limit_energy(const Problem& well_problem, const SolverOptions& opts) {
    if (well_problem.nonlinearity.x_dependent())
        throw model_error("compare_limit_energy: nonlinearity must be x-independent");
    const PotentialKind kind = well_problem.potential.kind();
    if (kind != PotentialKind::bounded_well && kind != PotentialKind::constant)
        throw model_error("compare_limit_energy: potential must be a bounded well (or constant)");

    const double v_inf = well_problem.potential.max_value();
    Problem limit_problem(well_problem.graph, Potential::constant(well_problem.graph, v_inf),
                          well_problem.nonlinearity);

    // Anchor the default bump at the deepest dip so the descent starts in the
    // well's basin; the limit problem keeps the caller's initialization.
    SolverOptions well_opts = opts;
    if (well_opts.init == InitKind::bump_at_vertex && well_opts.init_vertex < 0 &&
        kind == PotentialKind::bounded_well) {
        int deepest = 0;
        for (int x = 1; x < well_problem.graph.vertex_count(); ++x)
            if (well_problem.potential[x] < well_problem.potential[deepest]) deepest = x;
        well_opts.init_vertex = deepest;
    }

    auto well_future = std::async(std::launch::async, [&] { return minimize(well_problem, well_opts); });
    auto limit_future = std::async(std::launch::async, [&] { return minimize(limit_problem, opts); });

    EnergyComparison cmp;
    cmp.well = well_future.get();
    cmp.limit = limit_future.get();
    cmp.c = cmp.well.energy;
    cmp.c_inf = cmp.limit.energy;
    cmp.gap = cmp.c_inf - cmp.c;
    return cmp;
}

std::vector<TruncationRow> truncation_study(int dimension, const std::vector<int>& sizes,
                                            const std::function<Problem(const Graph&)>& make_problem,
                                            const SolverOptions& opts, int workers) {
    if (sizes.empty()) throw error("truncation_study: empty size list");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw error("truncation_study: sizes must be strictly increasing");

    std::vector<TruncationRow> rows(sizes.size());
    auto run_one = [&](std::size_t i) {
        const std::vector<int> box_sides(static_cast<std::size_t>(dimension), sizes[i]);
        const Graph g = Graph::lattice_box(dimension, box_sides, GraphMode::dirichlet_box);
        const Problem prob = make_problem(g);
        const GroundStateResult r = minimize(prob, opts);
        rows[i] = TruncationRow{box_sides, g.vertex_count(), r.energy, 0.0, r.iterations, r.converged};
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < sizes.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n = std::min<int>(workers, static_cast<int>(sizes.size()));
        pool.reserve(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < sizes.size(); i = next.fetch_add(1)) run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 1; i < rows.size(); ++i) rows[i].delta_prev = rows[i].energy - rows[i - 1].energy;
    return rows;
}

} // namespace dnls
