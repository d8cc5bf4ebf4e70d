#pragma once

// Shared oracles and generators for the unit and acceptance suites. Everything
// here is deliberately independent of the implementation paths it checks:
// adjacency by direct coordinate enumeration, derivatives by central
// differences, integrals by Simpson quadrature.

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "dnls/nehari.hpp"

namespace dnls::testing {

inline Field rng_field(const Graph& g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Field u = zeros(g);
    for (double& x : u.values) x = dist(rng);
    return u;
}

inline Field random_unit_direction(const Problem& p, std::mt19937_64& rng) {
    for (;;) {
        Field w = rng_field(p.graph, rng);
        const double n = weighted_norm(p.graph, p.potential, w);
        if (n > 1e-8) {
            for (double& x : w.values) x /= n;
            return w;
        }
    }
}

/// Random tangent direction at w: weighted-orthogonal to w, unit weighted norm.
inline Field random_tangent(const Problem& p, const Field& w, std::mt19937_64& rng) {
    for (;;) {
        Field z = rng_field(p.graph, rng);
        const double a = weighted_inner(p.graph, p.potential, z, w);
        for (int x = 0; x < p.graph.vertex_count(); ++x) z[x] -= a * w[x];
        const double n = weighted_norm(p.graph, p.potential, z);
        if (n > 1e-8) {
            for (double& x : z.values) x /= n;
            return z;
        }
    }
}

inline Field axpy(const Field& u, double h, const Field& v) {
    Field out = u;
    for (int x = 0; x < out.size(); ++x) out[x] += h * v[x];
    return out;
}

/// Central difference of Phi along v.
inline double fd_action_derivative(const Problem& p, const Field& u, const Field& v, double h = 1e-6) {
    return (action(p, axpy(u, h, v)) - action(p, axpy(u, -h, v))) / (2.0 * h);
}

/// Central difference of Psi along z, stepping off the sphere and
/// renormalizing (Psi extends 0-homogeneously along rays, so this equals the
/// derivative of the homogeneous extension).
inline double fd_reduced_derivative(const Problem& p, const Field& w, const Field& z, double h = 1e-5) {
    const double plus = reduced_action(p, normalized(p, axpy(w, h, z)));
    const double minus = reduced_action(p, normalized(p, axpy(w, -h, z)));
    return (plus - minus) / (2.0 * h);
}

/// Composite Simpson rule on [0, b].
inline double simpson(const std::function<double(double)>& f, double b, int intervals = 2000) {
    const int n = intervals % 2 == 0 ? intervals : intervals + 1;
    const double h = b / n;
    double acc = f(0.0) + f(b);
    for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// Independent lattice adjacency by coordinate enumeration.
inline std::set<std::pair<int, int>> brute_force_lattice_edges(int dim, const std::vector<int>& sides, bool periodic) {
    std::vector<std::vector<int>> coords;
    std::vector<int> c(static_cast<std::size_t>(dim), 0);
    long long n = 1;
    for (int s : sides) n *= s;
    for (long long v = 0; v < n; ++v) {
        coords.push_back(c);
        for (int a = dim - 1; a >= 0; --a) {
            if (++c[static_cast<std::size_t>(a)] < sides[static_cast<std::size_t>(a)]) break;
            c[static_cast<std::size_t>(a)] = 0;
        }
    }
    auto index_of = [&](const std::vector<int>& cc) {
        int idx = 0;
        for (int a = 0; a < dim; ++a) idx = idx * sides[static_cast<std::size_t>(a)] + cc[static_cast<std::size_t>(a)];
        return idx;
    };
    std::set<std::pair<int, int>> edges;
    for (int v = 0; v < static_cast<int>(n); ++v) {
        for (int a = 0; a < dim; ++a) {
            for (int step : {-1, 1}) {
                std::vector<int> cc = coords[static_cast<std::size_t>(v)];
                int& comp = cc[static_cast<std::size_t>(a)];
                comp += step;
                if (periodic) {
                    comp = ((comp % sides[static_cast<std::size_t>(a)]) + sides[static_cast<std::size_t>(a)]) %
                           sides[static_cast<std::size_t>(a)];
                } else if (comp < 0 || comp >= sides[static_cast<std::size_t>(a)]) {
                    continue;
                }
                const int y = index_of(cc);
                if (y != v) edges.insert({std::min(v, y), std::max(v, y)});
            }
        }
    }
    return edges;
}

/// Operator norm estimates for the two sides of the norm sandwich. The same
/// sample directions feed both pools (raw and tangent-projected), which keeps
/// the estimated two-sided inequality meaningful at any graph size.
struct OperatorNorms {
    double psi_norm = 0.0; // sup over sampled tangent z of |Psi'(w)z| / ||z||
    double phi_norm = 0.0; // sup over sampled v of |Phi'(u)v| / ||v||
    double u_norm = 0.0;
};

inline OperatorNorms estimate_operator_norms(const Problem& p, const Field& w_unit, int samples,
                                             std::mt19937_64& rng) {
    OperatorNorms out;
    const Field u = project(p, w_unit).u;
    out.u_norm = weighted_norm(p.graph, p.potential, u);
    for (int k = 0; k < samples; ++k) {
        const Field v = random_unit_direction(p, rng);
        const double phi_v = std::abs(action_derivative(p, u, v));
        out.phi_norm = std::max(out.phi_norm, phi_v);

        Field z = v;
        const double a = weighted_inner(p.graph, p.potential, v, w_unit);
        for (int x = 0; x < p.graph.vertex_count(); ++x) z[x] -= a * w_unit[x];
        const double zn = weighted_norm(p.graph, p.potential, z);
        if (zn < 1e-10) continue;
        for (double& x : z.values) x /= zn;
        const double phi_z = std::abs(action_derivative(p, u, z));
        out.phi_norm = std::max(out.phi_norm, phi_z);
        out.psi_norm = std::max(out.psi_norm, out.u_norm * phi_z);
    }
    return out;
}

} // namespace dnls::testing
