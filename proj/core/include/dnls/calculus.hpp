#pragma once

#include "dnls/graph.hpp"
#include "dnls/model.hpp"

namespace dnls {

// Discrete operators and norms. On dirichlet_box graphs every operation uses
// the zero-extension convention: a field is understood as extended by zero
// outside the box. Concretely, the Laplacian at a boundary vertex subtracts
// the full lattice degree, and the pointwise gradient form carries the cut
// edges with full weight so that sums over the box equal the corresponding
// sums over the whole lattice. All sums accumulate in ascending vertex order.

/// Delta u(x) = sum_{y~x} (u(y) - u(x)), with zero extension on dirichlet boxes.
Field laplacian(const Graph& g, const Field& u);

/// Pointwise gradient form: (1/2) sum_{y~x} (u(y)-u(x)) (v(y)-v(x)) plus the
/// zero-extension boundary term boundary_degree(x) * u(x) * v(x).
Field gradient_form(const Graph& g, const Field& u, const Field& v);

/// Dirichlet energy: sum_x gradient_form(u,u)(x). Nonnegative.
double dirichlet_energy(const Graph& g, const Field& u);

/// (sum |u|^p)^{1/p} for 1 <= p < infinity; max |u| for p = infinity.
double lp_norm(const Field& u, double p);

/// sqrt(energy + l2 mass).
double h1_norm(const Graph& g, const Field& u);

/// The V-weighted norm ||u|| = sqrt(energy(u) + sum V u^2); the norm every
/// downstream module works in.
double weighted_norm(const Graph& g, const Potential& V, const Field& u);

/// Polarization of weighted_norm: <u,v> = sum Gamma(u,v) + sum V u v.
double weighted_inner(const Graph& g, const Potential& V, const Field& u, const Field& v);

// Small field helpers.
Field zeros(const Graph& g);
Field constant_field(const Graph& g, double value);
Field delta_field(const Graph& g, int vertex);

} // namespace dnls
