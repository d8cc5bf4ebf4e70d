#pragma once

#include <optional>

#include "dnls/calculus.hpp"

namespace dnls {

/// One instance of -Delta u + V u = f(x,u) on a finite graph.
struct Problem {
    Problem(Graph graph, Potential potential, Nonlinearity nonlinearity);

    Graph graph;
    Potential potential;
    Nonlinearity nonlinearity;
};

struct Residuals {
    double pointwise_sup = 0.0;          // sup_x |-Delta u + V u - f(x,u)|
    std::optional<double> nehari;        // |Phi'(u) u|, absent for u = 0
    double grad_norm = 0.0;              // l2 norm of the coordinate gradient
};

/// Phi(u) = (1/2) ||u||^2 - sum_x F(x, u(x)).
double action(const Problem& p, const Field& u);

/// Phi'(u) v = <u,v> - sum_x f(x,u) v.
double action_derivative(const Problem& p, const Field& u, const Field& v);

/// Coordinate gradient g(x) = (-Delta u + V u - f(x,u))(x); represents
/// Phi'(u) against the plain vertex sum: Phi'(u) v = sum_x g(x) v(x).
Field action_gradient(const Problem& p, const Field& u);

Residuals compute_residuals(const Problem& p, const Field& u);

} // namespace dnls
