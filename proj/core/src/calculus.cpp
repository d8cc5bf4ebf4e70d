#include "dnls/calculus.hpp"

#include <cmath>

namespace dnls {

Field zeros(const Graph& g) {
    Field u;
    u.graph_id = g.id();
    u.values.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
    return u;
}

Field constant_field(const Graph& g, double value) {
    Field u = zeros(g);
    for (double& x : u.values) x = value;
    return u;
}

Field delta_field(const Graph& g, int vertex) {
    if (vertex < 0 || vertex >= g.vertex_count()) throw graph_error("delta_field: vertex out of range");
    Field u = zeros(g);
    u[vertex] = 1.0;
    return u;
}

Field laplacian(const Graph& g, const Field& u) {
    g.ensure_same(u, "laplacian");
    Field out = zeros(g);
    for (int x = 0; x < g.vertex_count(); ++x) {
        long double acc = 0.0L;
        for (int y : g.neighbors(x)) acc += u[y];
        acc -= static_cast<long double>(g.degree(x) + g.boundary_degree(x)) * u[x];
        out[x] = static_cast<double>(acc);
    }
    return out;
}

Field gradient_form(const Graph& g, const Field& u, const Field& v) {
    g.ensure_same(u, "gradient_form");
    g.ensure_same(v, "gradient_form");
    Field out = zeros(g);
    for (int x = 0; x < g.vertex_count(); ++x) {
        long double acc = 0.0L;
        for (int y : g.neighbors(x))
            acc += 0.5L * (static_cast<long double>(u[y]) - u[x]) * (static_cast<long double>(v[y]) - v[x]);
        acc += static_cast<long double>(g.boundary_degree(x)) * u[x] * v[x];
        out[x] = static_cast<double>(acc);
    }
    return out;
}

double dirichlet_energy(const Graph& g, const Field& u) {
    g.ensure_same(u, "dirichlet_energy");
    long double acc = 0.0L;
    for (int x = 0; x < g.vertex_count(); ++x) {
        for (int y : g.neighbors(x)) {
            const long double d = static_cast<long double>(u[y]) - u[x];
            acc += 0.5L * d * d;
        }
        acc += static_cast<long double>(g.boundary_degree(x)) * u[x] * u[x];
    }
    return static_cast<double>(acc);
}

double lp_norm(const Field& u, double p) {
    if (std::isinf(p) && p > 0) {
        double m = 0.0;
        for (double x : u.values) m = std::max(m, std::abs(x));
        return m;
    }
    if (!(p >= 1.0)) throw error("lp_norm: p must satisfy p >= 1");
    long double acc = 0.0L;
    if (p == 2.0) {
        for (double x : u.values) acc += static_cast<long double>(x) * x;
        return static_cast<double>(std::sqrt(static_cast<double>(acc)));
    }
    if (p == 1.0) {
        for (double x : u.values) acc += std::abs(static_cast<long double>(x));
        return static_cast<double>(acc);
    }
    for (double x : u.values) acc += std::pow(std::abs(static_cast<long double>(x)), static_cast<long double>(p));
    return static_cast<double>(std::pow(static_cast<double>(acc), 1.0 / p));
}

double h1_norm(const Graph& g, const Field& u) {
    long double acc = static_cast<long double>(dirichlet_energy(g, u));
    for (double x : u.values) acc += static_cast<long double>(x) * x;
    return static_cast<double>(std::sqrt(static_cast<double>(acc)));
}

double weighted_inner(const Graph& g, const Potential& V, const Field& u, const Field& v) {
    g.ensure_same(u, "weighted_inner");
    g.ensure_same(v, "weighted_inner");
    if (V.graph_id() != g.id()) throw model_error("weighted_inner: potential belongs to a different graph");
    long double acc = 0.0L;
    for (int x = 0; x < g.vertex_count(); ++x) {
        for (int y : g.neighbors(x))
            acc += 0.5L * (static_cast<long double>(u[y]) - u[x]) * (static_cast<long double>(v[y]) - v[x]);
        acc += static_cast<long double>(g.boundary_degree(x)) * u[x] * v[x];
        acc += static_cast<long double>(V[x]) * u[x] * v[x];
    }
    return static_cast<double>(acc);
}

double weighted_norm(const Graph& g, const Potential& V, const Field& u) {
    return std::sqrt(weighted_inner(g, V, u, u));
}

} // namespace dnls
