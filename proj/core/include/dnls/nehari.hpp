#pragma once

#include "dnls/functional.hpp"

namespace dnls {

/// Value and s-derivative of the fiber map s -> Phi(s w) along the ray of w.
struct FiberPoint {
    double value;      // Phi(s w)
    double derivative; // s ||w||^2 - sum_x f(x, s w) w
};

FiberPoint fiber(const Problem& p, const Field& w, double s);

struct ProjectionOptions {
    double tol = 1e-12;   // on |alpha'(s)| relative to max(1, ||w||^2)
    int max_expand = 200; // doublings/halvings allowed while bracketing
    int max_bisect = 300;
};

/// The unique positive fiber maximum along the ray of w.
struct RayProjection {
    double s = 0.0;          // s_w
    Field u;                 // s_w * w, the Nehari point
    double fiber_value = 0.0;
    double bracket_lo = 0.0; // final bracket with alpha'(lo) > 0 > alpha'(hi)
    double bracket_hi = 0.0;
    int iterations = 0;      // bracket expansions plus bisection steps
};

/// Finds the unique root of the fiber derivative by geometric bracketing from
/// s = 1 followed by bisection; s(||w||^2 - I'(sw)w/s) is strictly decreasing
/// past its root, so a sign-valid bracket cannot lose the root.
RayProjection project(const Problem& p, const Field& w, const ProjectionOptions& opts = {});

/// Unit-sphere tolerance: inputs within this of ||w|| = 1 are renormalized,
/// anything further off is rejected.
inline constexpr double k_sphere_tol = 1e-10;

/// m: unit sphere -> Nehari manifold, w -> s_w w.
Field to_manifold(const Problem& p, const Field& w);

/// m^{-1}: Nehari manifold -> unit sphere, u -> u / ||u||. Requires
/// |Phi'(u)u| <= 1e-10 * max(1, ||u||^2).
Field to_sphere(const Problem& p, const Field& u);

/// Psi(w) = Phi(m(w)).
double reduced_action(const Problem& p, const Field& w);

/// Tangent gradient of Psi at w in S: the field t with
///   sum_x t(x) z(x) = ||m(w)|| Phi'(m(w)) z   for every z with <w,z> = 0,
/// and t itself tangent (<w,t> = 0). Obtained from G = ||m(w)|| grad Phi(m(w))
/// by removing its component along r = (-Delta + V) w, the vertex-sum
/// representer of z -> <w,z>.
Field reduced_action_tangent_gradient(const Problem& p, const Field& w);

/// One fully evaluated sphere point; what the descent loop consumes.
struct ReducedPoint {
    double s = 0.0;
    Field u;                 // m(w)
    double value = 0.0;      // Psi(w)
    Field tangent_gradient;
    double tangent_sup = 0.0;
    double tangent_l2 = 0.0;
    int projection_iterations = 0;
};

/// Evaluates projection, value and tangent gradient at an exactly unit w.
ReducedPoint reduced_point(const Problem& p, const Field& w, const ProjectionOptions& opts = {});

/// w / ||w|| in the weighted norm; rejects w = 0.
Field normalized(const Problem& p, const Field& w);

} // namespace dnls
