// Acceptance suite: one check per shipped guarantee, each printed as a
// PASS/FAIL line with its runtime. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "dnls/solver.hpp"
#include "support/helpers.hpp"

using namespace dnls;
using dnls::testing::estimate_operator_norms;
using dnls::testing::fd_action_derivative;
using dnls::testing::fd_reduced_derivative;
using dnls::testing::random_tangent;
using dnls::testing::random_unit_direction;
using dnls::testing::rng_field;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Check {
    Outcome out;
    std::ostringstream os;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            out.pass = false;
            if (!out.detail.empty()) out.detail += "; ";
            out.detail += what;
        }
    }
};

Problem torus16(double q = 4.0) {
    Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
    Potential V = Potential::constant(g, 1.0);
    return Problem(std::move(g), std::move(V), Nonlinearity::power(1.0, q));
}

// --- criterion 1: closed-form oracles -------------------------------------
Outcome criterion1() {
    Check c;

    Graph g1 = Graph::custom(1, {});
    Potential V1 = Potential::constant(g1, 1.0);
    const Problem sv(std::move(g1), std::move(V1), Nonlinearity::power(1.0, 4.0));
    const GroundStateResult r1 = minimize(sv);
    c.require(r1.converged, "single vertex did not converge");
    c.require(std::abs(r1.u_star[0] - 1.0) <= 1e-10, "u* != 1");
    c.require(std::abs(r1.energy - 0.25) <= 1e-10, "c != 1/4");

    Graph g2 = Graph::custom(2, {{0, 1}});
    Potential V2 = Potential::constant(g2, 1.0);
    const Problem path(std::move(g2), std::move(V2), Nonlinearity::power(1.0, 4.0));
    for (std::uint64_t seed : {0ull, 1ull, 5ull}) {
        SolverOptions opts;
        opts.init = seed == 0 ? InitKind::bump_at_vertex : InitKind::random_positive;
        opts.seed = seed;
        const GroundStateResult r2 = minimize(path, opts);
        c.require(r2.converged, "two-vertex path did not converge");
        c.require(std::abs(r2.energy - 0.5) <= 1e-8, "path energy != 1/2 (antisymmetric state?)");
        c.require(std::abs(r2.u_star[0] - 1.0) <= 1e-6 && std::abs(r2.u_star[1] - 1.0) <= 1e-6,
                  "path state is not the symmetric (1,1)");
    }
    return c.out;
}

// --- criterion 2: homogeneous projection closed form -----------------------
Outcome criterion2() {
    Check c;
    Graph g = Graph::lattice_box(1, {32}, GraphMode::periodic_torus);
    Potential V = Potential::constant(g, 1.0);
    const Problem p(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));
    std::mt19937_64 rng(2025);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Field w = rng_field(p.graph, rng);
        const double norm_sq = weighted_inner(p.graph, p.potential, w, w);
        const double l4 = lp_norm(w, 4.0);
        const double expected = std::sqrt(norm_sq / std::pow(l4, 4.0));
        const double got = project(p, w).s;
        worst = std::max(worst, std::abs(got - expected) / expected);
    }
    c.require(worst <= 1e-8, "bisection misses the closed form, worst rel err " + std::to_string(worst));
    return c.out;
}

// --- criterion 3: PDE residual on the 31x31 dirichlet box -------------------
Outcome criterion3() {
    Check c;
    Graph g = Graph::lattice_box(2, {31, 31}, GraphMode::dirichlet_box);
    Potential V = Potential::constant(g, 1.0);
    const Problem p(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));
    const GroundStateResult r = minimize(p);
    c.require(r.converged, "31x31 solve did not converge");
    const double sup_u = lp_norm(r.u_star, std::numeric_limits<double>::infinity());
    c.require(r.residuals.pointwise_sup <= 1e-8 * sup_u,
              "sup residual " + std::to_string(r.residuals.pointwise_sup) + " exceeds 1e-8 * " + std::to_string(sup_u));
    return c.out;
}

// --- criterion 4: derivative oracles ----------------------------------------
Outcome criterion4() {
    Check c;
    const Problem p = torus16();
    std::mt19937_64 rng(4);
    double worst_phi = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Field u = rng_field(p.graph, rng);
        const Field v = rng_field(p.graph, rng);
        const double exact = action_derivative(p, u, v);
        const double fd = fd_action_derivative(p, u, v, 1e-6);
        worst_phi = std::max(worst_phi, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
    c.require(worst_phi <= 1e-6, "phi derivative vs FD worst " + std::to_string(worst_phi));

    double worst_psi = 0.0;
    for (int k = 0; k < 100; ++k) {
        const Field w = random_unit_direction(p, rng);
        const Field z = random_tangent(p, w, rng);
        const Field gt = reduced_action_tangent_gradient(p, w);
        double exact = 0.0;
        for (int x = 0; x < p.graph.vertex_count(); ++x) exact += gt[x] * z[x];
        const double fd = fd_reduced_derivative(p, w, z, 1e-5);
        worst_psi = std::max(worst_psi, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
    c.require(worst_psi <= 1e-5, "psi derivative vs FD worst " + std::to_string(worst_psi));
    return c.out;
}

// --- criterion 5: fiber uniqueness across the shipped models ----------------
Outcome criterion5() {
    Check c;
    std::vector<std::pair<std::string, Problem>> models;
    for (double q : {3.0, 4.0, 6.0}) models.emplace_back("torus16 q=" + std::to_string(q), torus16(q));
    {
        Graph g = Graph::lattice_box(2, {5, 5}, GraphMode::dirichlet_box);
        Potential V = Potential::constant(g, 1.0);
        models.emplace_back("dirichlet 5x5 q=4", Problem(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0)));
    }
    {
        Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
        Potential V = Potential::well(g, 1.0, {{0, 0.5}});
        models.emplace_back("well dip q=4", Problem(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0)));
    }
    {
        Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
        Potential V = Potential::periodic(g, {1.0, 1.5}, {2});
        models.emplace_back("periodic V q=4", Problem(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0)));
    }
    {
        Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
        Potential V = Potential::constant(g, 1.0);
        models.emplace_back("two-term q={3,6}",
                            Problem(std::move(g), std::move(V), Nonlinearity::power({{3.0, 1.0, {}}, {6.0, 0.5, {}}})));
    }
    for (PresetName name : {PresetName::ladder, PresetName::hexagonal, PresetName::triangular}) {
        Graph g = Graph::preset(name, name == PresetName::ladder ? 8 : 3);
        Potential V = Potential::constant(g, 1.0);
        models.emplace_back(to_string(name) + " q=4", Problem(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0)));
    }

    std::mt19937_64 rng(5);
    for (const auto& [label, p] : models) {
        for (int k = 0; k < 100; ++k) {
            const Field w = random_unit_direction(p, rng);
            int sign_changes = 0;
            double prev = fiber(p, w, 1e-3).derivative;
            for (int i = 1; i < 200; ++i) {
                const double s = std::pow(10.0, -3.0 + 6.0 * i / 199.0);
                const double d = fiber(p, w, s).derivative;
                if ((prev > 0.0) != (d > 0.0)) ++sign_changes;
                prev = d;
            }
            if (sign_changes != 1) {
                c.require(false, label + ": " + std::to_string(sign_changes) + " sign changes");
                break;
            }
        }
    }
    return c.out;
}

// --- criterion 6: inf-max characterization ----------------------------------
Outcome criterion6() {
    Check c;
    const Problem p = torus16();
    const GroundStateResult r = minimize(p);
    c.require(r.converged, "reference solve did not converge");
    std::mt19937_64 rng(6);
    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        const Field w = random_unit_direction(p, rng);
        double best = project(p, w).fiber_value; // the exact fiber maximum
        for (int i = 0; i < 50; ++i) {
            const double s = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
            best = std::max(best, fiber(p, w, s).value);
        }
        worst = std::min(worst, best - r.energy);
    }
    c.require(worst >= -1e-8, "a sampled ray beat the claimed infimum by " + std::to_string(-worst));
    return c.out;
}

// --- criterion 7: translation invariance under the periodic setting ---------
Outcome criterion7() {
    Check c;
    Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
    Potential V = Potential::periodic(g, {1.0, 1.5}, {2});
    const Problem p(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));

    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Field u = rng_field(p.graph, rng);
        const Field tu = translate(p.graph, u, Shift::by({2}));
        worst = std::max(worst, std::abs(action(p, tu) - action(p, u)) / std::max(1.0, std::abs(action(p, u))));
    }
    c.require(worst <= 1e-12, "Phi o translate differs by " + std::to_string(worst));

    SolverOptions a;
    a.init_vertex = 3;
    SolverOptions b;
    b.init_vertex = 3 + 2 * 4; // shifted by 4 periods
    const GroundStateResult ra = minimize(p, a), rb = minimize(p, b);
    c.require(ra.converged && rb.converged, "periodic solves did not converge");
    c.require(std::abs(ra.energy - rb.energy) <= 1e-10,
              "shifted inits disagree by " + std::to_string(std::abs(ra.energy - rb.energy)));
    return c.out;
}

// --- criterion 8: bounded-well comparison -----------------------------------
Outcome criterion8() {
    Check c;
    {
        Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
        Potential V = Potential::well(g, 1.0, {{0, 0.5}});
        const Problem p(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));
        const EnergyComparison cmp = compare_limit_energy(p);
        c.require(cmp.well.converged && cmp.limit.converged, "comparison solves did not converge");
        c.require(cmp.c < cmp.c_inf, "c is not strictly below c_inf");
        c.require(cmp.gap > 0.0, "gap is not strictly positive");
    }
    {
        Graph g = Graph::lattice_box(1, {16}, GraphMode::periodic_torus);
        Potential V = Potential::well(g, 1.0, {});
        const Problem p(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));
        const EnergyComparison cmp = compare_limit_energy(p);
        c.require(cmp.c == cmp.c_inf, "V == V_inf must give c == c_inf exactly");
    }
    return c.out;
}

// --- criterion 9: truncation monotonicity -----------------------------------
Outcome criterion9() {
    Check c;
    auto make_problem = [](const Graph& g) {
        return Problem(g, Potential::constant(g, 1.0), Nonlinearity::power(1.0, 4.0));
    };
    const auto rows = truncation_study(1, {3, 5, 7, 9, 11}, make_problem);
    for (const auto& r : rows) c.require(r.converged, "size " + std::to_string(r.sides[0]) + " did not converge");
    for (std::size_t i = 1; i < rows.size(); ++i)
        c.require(rows[i].energy <= rows[i - 1].energy + 1e-12,
                  "c_" + std::to_string(rows[i].sides[0]) + " > c_" + std::to_string(rows[i - 1].sides[0]));
    return c.out;
}

// --- criterion 10: inequality suite ------------------------------------------
Outcome criterion10() {
    Check c;
    std::vector<Problem> problems;
    problems.push_back(torus16());
    {
        Graph g = Graph::lattice_box(2, {5, 5}, GraphMode::dirichlet_box);
        Potential V = Potential::constant(g, 1.0);
        problems.emplace_back(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));
    }
    {
        Graph g = Graph::preset(PresetName::ladder, 8);
        Potential V = Potential::constant(g, 1.0);
        problems.emplace_back(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));
    }

    std::mt19937_64 rng(10);
    const double inf = std::numeric_limits<double>::infinity();
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const Problem& p = problems[static_cast<std::size_t>(k) % problems.size()];
        const Graph& g = p.graph;
        const Field u = rng_field(g, rng, -2.0, 2.0);

        const double l2 = lp_norm(u, 2.0), linf = lp_norm(u, inf);
        for (double q : {3.0, 4.0, 6.0}) {
            const double bound = std::pow(l2, 2.0 / q) * std::pow(linf, 1.0 - 2.0 / q);
            if (lp_norm(u, q) > bound * (1.0 + 1e-12)) ++violations;
        }

        const double cprime = std::sqrt(1.0 + 2.0 * g.degree_bound());
        const double h1 = h1_norm(g, u);
        if (l2 / cprime > h1 * (1.0 + 1e-12)) ++violations;
        if (h1 > cprime * l2 * (1.0 + 1e-12)) ++violations;

        // E(u) <= sum_x sum_{y~x} (u(x)^2+u(y)^2) <= 2 C |u|_2^2
        double middle = 0.0;
        for (int x = 0; x < g.vertex_count(); ++x) {
            for (int y : g.neighbors(x)) middle += u[x] * u[x] + u[y] * u[y];
            middle += 2.0 * g.boundary_degree(x) * u[x] * u[x];
        }
        if (dirichlet_energy(g, u) > middle * (1.0 + 1e-12)) ++violations;
        if (middle > 2.0 * g.degree_bound() * l2 * l2 * (1.0 + 1e-12)) ++violations;

        for (int x = 0; x < g.vertex_count(); ++x) {
            const double F = p.nonlinearity.F(x, u[x]);
            if (F < 0.0) ++violations;
            if (F > 0.5 * p.nonlinearity.f(x, u[x]) * u[x] + 1e-12) ++violations;
        }
    }
    c.require(violations == 0, std::to_string(violations) + " inequality violations");

    // norm sandwich with estimated operator norms
    int sandwich_violations = 0;
    for (int k = 0; k < 100; ++k) {
        const Problem& p = problems[static_cast<std::size_t>(k) % problems.size()];
        const double cprime = std::sqrt(1.0 + 2.0 * p.graph.degree_bound());
        const Field w = random_unit_direction(p, rng);
        const auto norms = estimate_operator_norms(p, w, 200, rng);
        if (norms.psi_norm > norms.u_norm * norms.phi_norm + 1e-12) ++sandwich_violations;
        if (norms.u_norm * norms.phi_norm > (cprime + 1.0) * norms.psi_norm + 1e-12) ++sandwich_violations;
    }
    c.require(sandwich_violations == 0, std::to_string(sandwich_violations) + " sandwich violations");
    return c.out;
}

// --- criterion 11: quasi-transitive run --------------------------------------
Outcome criterion11() {
    Check c;
    Graph g = Graph::preset(PresetName::ladder, 8);
    Potential V = Potential::constant(g, 1.0);
    const Problem p(std::move(g), std::move(V), Nonlinearity::power(1.0, 4.0));

    SolverOptions opts;
    opts.init_vertex = 0;
    const GroundStateResult r = minimize(p, opts);
    c.require(r.converged, "ladder solve did not converge");

    const double sup_u = lp_norm(r.u_star, std::numeric_limits<double>::infinity());
    c.require(r.residuals.pointwise_sup <= 1e-8 * std::max(1.0, sup_u), "ladder residual too large");

    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        const Field w = random_unit_direction(p, rng);
        int sign_changes = 0;
        double prev = fiber(p, w, 1e-3).derivative;
        for (int i = 1; i < 200; ++i) {
            const double s = std::pow(10.0, -3.0 + 6.0 * i / 199.0);
            const double d = fiber(p, w, s).derivative;
            if ((prev > 0.0) != (d > 0.0)) ++sign_changes;
            prev = d;
        }
        if (sign_changes != 1) {
            c.require(false, "ladder fiber has " + std::to_string(sign_changes) + " sign changes");
            break;
        }
    }

    double worst = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        const Field w = random_unit_direction(p, rng);
        double best = project(p, w).fiber_value;
        worst = std::min(worst, best - r.energy);
    }
    c.require(worst >= -1e-8, "a ladder ray beat the claimed infimum");

    // orbit-shift initializations: bump moved by group elements
    for (int e : {1, 5, 9, 15}) {
        SolverOptions shifted;
        shifted.init_vertex = p.graph.apply_shift(Shift::group_element(e), 0);
        const GroundStateResult rs = minimize(p, shifted);
        c.require(rs.converged, "shifted ladder solve did not converge");
        c.require(std::abs(rs.energy - r.energy) <= 1e-10,
                  "orbit-shifted init disagrees by " + std::to_string(std::abs(rs.energy - r.energy)));
    }
    return c.out;
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* label;
        double budget_seconds;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "closed-form oracles (single vertex, two-vertex path)", 1.0, criterion1},
        {2, "homogeneous projection closed form, 50 directions", 5.0, criterion2},
        {3, "PDE residual on the 31x31 dirichlet box", 60.0, criterion3},
        {4, "derivative oracles (Phi and Psi vs finite differences)", 0.0, criterion4},
        {5, "fiber uniqueness on the log grid, all shipped models", 0.0, criterion5},
        {6, "inf-max characterization over 100 rays", 0.0, criterion6},
        {7, "translation invariance with 2-periodic potential", 0.0, criterion7},
        {8, "bounded well: c < c_inf with positive gap", 0.0, criterion8},
        {9, "truncation monotonicity over sizes {3,5,7,9,11}", 0.0, criterion9},
        {10, "inequality suite on 1000 random fields", 0.0, criterion10},
        {11, "quasi-transitive ladder run with orbit-shift inits", 0.0, criterion11},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = crit.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (crit.budget_seconds > 0.0 && secs > crit.budget_seconds) {
            out.pass = false;
            out.detail += (out.detail.empty() ? "" : "; ") + std::string("runtime ") + std::to_string(secs) +
                          "s exceeds budget " + std::to_string(crit.budget_seconds) + "s";
        }
        std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", crit.number, crit.label,
                    secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
