#include "dnls/functional.hpp"

#include <cmath>
#include <utility>

namespace dnls {

Problem::Problem(Graph g, Potential pot, Nonlinearity nl)
    : graph(std::move(g)), potential(std::move(pot)), nonlinearity(std::move(nl)) {
    if (potential.graph_id() != graph.id()) throw model_error("problem: potential built for a different graph");
    if (nonlinearity.is_power()) {
        for (const auto& t : nonlinearity.terms()) {
            if (!t.coefficients.empty() && static_cast<int>(t.coefficients.size()) != graph.vertex_count())
                throw model_error("problem: coefficient field size does not match vertex count");
        }
    }
}

double action(const Problem& p, const Field& u) {
    p.graph.ensure_same(u, "action");
    long double nl = 0.0L;
    for (int x = 0; x < p.graph.vertex_count(); ++x) nl += p.nonlinearity.F(x, u[x]);
    return 0.5 * weighted_inner(p.graph, p.potential, u, u) - static_cast<double>(nl);
}

double action_derivative(const Problem& p, const Field& u, const Field& v) {
    p.graph.ensure_same(u, "action_derivative");
    p.graph.ensure_same(v, "action_derivative");
    long double nl = 0.0L;
    for (int x = 0; x < p.graph.vertex_count(); ++x) nl += static_cast<long double>(p.nonlinearity.f(x, u[x])) * v[x];
    return weighted_inner(p.graph, p.potential, u, v) - static_cast<double>(nl);
}

Field action_gradient(const Problem& p, const Field& u) {
    p.graph.ensure_same(u, "action_gradient");
    Field g = laplacian(p.graph, u);
    for (int x = 0; x < p.graph.vertex_count(); ++x)
        g[x] = -g[x] + p.potential[x] * u[x] - p.nonlinearity.f(x, u[x]);
    return g;
}

Residuals compute_residuals(const Problem& p, const Field& u) {
    Residuals r;
    const Field g = action_gradient(p, u);
    long double sq = 0.0L;
    for (double x : g.values) {
        r.pointwise_sup = std::max(r.pointwise_sup, std::abs(x));
        sq += static_cast<long double>(x) * x;
    }
    r.grad_norm = static_cast<double>(std::sqrt(static_cast<double>(sq)));
    bool zero = true;
    for (double x : u.values)
        if (x != 0.0) { zero = false; break; }
    if (!zero) r.nehari = std::abs(action_derivative(p, u, u));
    return r;
}

} // namespace dnls
