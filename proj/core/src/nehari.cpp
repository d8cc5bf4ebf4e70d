#include "dnls/nehari.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dnls {

namespace {

// I'(sw)w / s; each power-family term is nonnegative, so overflow shows up as
// +infinity and never as NaN.
double slope_sum(const Problem& p, const Field& w, double s) {
    long double acc = 0.0L;
    for (int x = 0; x < p.graph.vertex_count(); ++x)
        acc += static_cast<long double>(p.nonlinearity.f(x, s * w[x])) * w[x];
    return static_cast<double>(acc) / s;
}

double nonlinear_mass(const Problem& p, const Field& w, double s) {
    long double acc = 0.0L;
    for (int x = 0; x < p.graph.vertex_count(); ++x) acc += p.nonlinearity.F(x, s * w[x]);
    return static_cast<double>(acc);
}

} // namespace

FiberPoint fiber(const Problem& p, const Field& w, double s) {
    p.graph.ensure_same(w, "fiber");
    if (!(s > 0.0)) throw error("fiber: s must be positive");
    const double norm_sq = weighted_inner(p.graph, p.potential, w, w);
    if (norm_sq == 0.0) throw error("fiber: w must be nonzero");
    FiberPoint out;
    out.value = 0.5 * s * s * norm_sq - nonlinear_mass(p, w, s);
    out.derivative = s * norm_sq - s * slope_sum(p, w, s);
    return out;
}

RayProjection project(const Problem& p, const Field& w, const ProjectionOptions& opts) {
    p.graph.ensure_same(w, "project");
    const double norm_sq = weighted_inner(p.graph, p.potential, w, w);
    if (norm_sq == 0.0) throw projection_error("project: w must be nonzero");
    const double tol = opts.tol * std::max(1.0, norm_sq);

    // g(s) = ||w||^2 - I'(sw)w/s is strictly decreasing with a single root.
    auto g = [&](double s) {
        const double h = slope_sum(p, w, s);
        return std::isfinite(h) ? norm_sq - h : -std::numeric_limits<double>::infinity();
    };

    int iterations = 0;
    double lo = 1.0, hi = 1.0;
    double g1 = g(1.0);
    if (g1 > 0.0) {
        double prev = 1.0;
        int k = 0;
        for (;; ++k, ++iterations) {
            if (k >= opts.max_expand) {
                std::ostringstream os;
                os << "project: no sign change after " << k << " doublings (g(" << prev << ") = " << g(prev)
                   << ", ||w||^2 = " << norm_sq << "); nonlinearity may violate superquadratic growth";
                throw projection_error(os.str());
            }
            const double next = prev * 2.0;
            if (g(next) <= 0.0) {
                lo = prev;
                hi = next;
                break;
            }
            prev = next;
        }
    } else if (g1 < 0.0) {
        double prev = 1.0;
        int k = 0;
        for (;; ++k, ++iterations) {
            if (k >= opts.max_expand) {
                std::ostringstream os;
                os << "project: no sign change after " << k << " halvings (g(" << prev << ") = " << g(prev)
                   << ", ||w||^2 = " << norm_sq << "); nonlinearity may not vanish at 0";
                throw projection_error(os.str());
            }
            const double next = prev * 0.5;
            if (g(next) >= 0.0) {
                lo = next;
                hi = prev;
                break;
            }
            prev = next;
        }
    } else {
        // Landed exactly on the root; a strict bracket still must be reported.
        lo = 0.5;
        hi = 2.0;
    }

    double s = std::sqrt(lo * hi);
    for (int it = 0; it < opts.max_bisect; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo) || !(mid < hi)) break; // bracket exhausted at double precision
        ++iterations;
        const double gm = g(mid);
        s = mid;
        if (std::abs(mid * gm) <= tol) break;
        if (gm > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    RayProjection out;
    out.s = s;
    out.u = w;
    for (double& x : out.u.values) x *= s;
    out.fiber_value = 0.5 * s * s * norm_sq - nonlinear_mass(p, w, s);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.iterations = iterations;
    return out;
}

Field normalized(const Problem& p, const Field& w) {
    const double n = weighted_norm(p.graph, p.potential, w);
    if (n == 0.0) throw error("normalized: zero field");
    Field out = w;
    for (double& x : out.values) x /= n;
    return out;
}

namespace {

// Renormalizes within the sphere tolerance, rejects anything further off.
Field require_on_sphere(const Problem& p, const Field& w, const char* what) {
    p.graph.ensure_same(w, what);
    const double n = weighted_norm(p.graph, p.potential, w);
    if (n == 0.0) throw error(std::string(what) + ": zero field");
    if (std::abs(n - 1.0) > k_sphere_tol)
        throw error(std::string(what) + ": input is off the unit sphere (||w|| = " + std::to_string(n) + ")");
    Field out = w;
    for (double& x : out.values) x /= n;
    return out;
}

} // namespace

Field to_manifold(const Problem& p, const Field& w) {
    return project(p, require_on_sphere(p, w, "to_manifold")).u;
}

Field to_sphere(const Problem& p, const Field& u) {
    p.graph.ensure_same(u, "to_sphere");
    const double n = weighted_norm(p.graph, p.potential, u);
    if (n == 0.0) throw error("to_sphere: zero field");
    const double membership = std::abs(action_derivative(p, u, u));
    if (membership > 1e-10 * std::max(1.0, n * n))
        throw error("to_sphere: input is not on the Nehari manifold (|Phi'(u)u| = " + std::to_string(membership) + ")");
    Field out = u;
    for (double& x : out.values) x /= n;
    return out;
}

double reduced_action(const Problem& p, const Field& w) {
    return project(p, require_on_sphere(p, w, "reduced_action")).fiber_value;
}

ReducedPoint reduced_point(const Problem& p, const Field& w, const ProjectionOptions& opts) {
    RayProjection proj = project(p, w, opts);

    // G = ||m(w)|| * coordinate gradient at m(w); for unit w, ||m(w)|| = s.
    Field G = action_gradient(p, proj.u);
    for (double& x : G.values) x *= proj.s;

    // r(x) = (-Delta w + V w)(x) represents z -> <w,z> as a vertex sum; the
    // tangent space is its kernel, so removing the r-component of G leaves the
    // l2 representer of Psi'(w) on the tangent space, itself tangent.
    Field r = laplacian(p.graph, w);
    for (int x = 0; x < p.graph.vertex_count(); ++x) r[x] = -r[x] + p.potential[x] * w[x];

    long double rg = 0.0L, rr = 0.0L;
    for (int x = 0; x < p.graph.vertex_count(); ++x) {
        rg += static_cast<long double>(r[x]) * G[x];
        rr += static_cast<long double>(r[x]) * r[x];
    }
    const double lambda = static_cast<double>(rg / rr);

    ReducedPoint out;
    out.s = proj.s;
    out.value = proj.fiber_value;
    out.projection_iterations = proj.iterations;
    out.tangent_gradient = std::move(G);
    long double sq = 0.0L;
    for (int x = 0; x < p.graph.vertex_count(); ++x) {
        out.tangent_gradient[x] -= lambda * r[x];
        const double t = out.tangent_gradient[x];
        out.tangent_sup = std::max(out.tangent_sup, std::abs(t));
        sq += static_cast<long double>(t) * t;
    }
    out.tangent_l2 = static_cast<double>(std::sqrt(static_cast<double>(sq)));
    out.u = std::move(proj.u);
    return out;
}

Field reduced_action_tangent_gradient(const Problem& p, const Field& w) {
    return reduced_point(p, require_on_sphere(p, w, "reduced_action_tangent_gradient")).tangent_gradient;
}

} // namespace dnls
