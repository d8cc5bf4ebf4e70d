#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnls/field.hpp"

namespace dnls {

/// How the finite vertex set stands in for the infinite graph.
///
/// - dirichlet_box: lattice box with fields extended by zero outside; the
///   Laplacian at a boundary vertex still subtracts the full lattice degree
///   (tracked per vertex in boundary_degree).
/// - periodic_torus: lattice box with wraparound adjacency.
/// - preset: finite periodic quotient of a quasi-transitive graph, with its
///   shift group and vertex orbits precomputed.
/// - plain: the graph as given, no boundary convention (small hand-built
///   graphs, single vertices, paths).
enum class GraphMode { dirichlet_box, periodic_torus, preset, plain };

enum class PresetName { ladder, hexagonal, triangular };

/// A vertex permutation from the graph's shift group: a lattice displacement
/// on a torus, or an element index into a preset's stored group.
struct Shift {
    std::vector<int> displacement; // periodic_torus
    int element = -1;              // preset

    static Shift by(std::vector<int> d) { return Shift{std::move(d), -1}; }
    static Shift group_element(int e) { return Shift{{}, e}; }
};

class Graph {
public:
    /// Box truncation of the N-dimensional integer lattice. Vertices are
    /// indexed row-major over the multi-index (last axis fastest).
    static Graph lattice_box(int dimension, const std::vector<int>& sides, GraphMode mode);

    /// Periodic quotient of a quasi-transitive preset; `size` repetitions
    /// per periodic axis. Orbit structure under the stored shift group:
    ///   ladder     2*size vertices, degree 3, 1 orbit (group includes the rail swap)
    ///   hexagonal  2*size^2 vertices, degree 3, 2 orbits (the two sublattices)
    ///   triangular size^2 vertices, degree 6, 1 orbit
    static Graph preset(PresetName name, int size);

    /// Plain simple graph from an explicit edge list (mode = plain).
    static Graph custom(int vertex_count, const std::vector<std::pair<int, int>>& edges);

    std::uint64_t id() const { return id_; }
    int vertex_count() const { return vertex_count_; }
    GraphMode mode() const { return mode_; }
    int degree_bound() const { return degree_bound_; }

    std::span<const int> neighbors(int v) const {
        return {adjacency_.data() + offsets_[static_cast<std::size_t>(v)],
                adjacency_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
    }
    int degree(int v) const {
        return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
    }
    /// Count of lattice neighbors outside the box (dirichlet_box), else 0.
    int boundary_degree(int v) const { return boundary_degrees_.empty() ? 0 : boundary_degrees_[static_cast<std::size_t>(v)]; }

    // Lattice geometry (dirichlet_box / periodic_torus only).
    int dimension() const { return dimension_; }
    const std::vector<int>& sides() const { return sides_; }

    /// Coordinate tuple of a vertex; length coordinate_count(). Lattice modes
    /// give the multi-index, presets their cell coordinates plus sublattice
    /// or rail label, plain graphs the vertex index itself.
    std::vector<int> coordinates(int v) const;
    int coordinate_count() const;

    bool supports_shifts() const { return mode_ == GraphMode::periodic_torus || mode_ == GraphMode::preset; }
    int shift_group_size() const { return static_cast<int>(group_.size()); }
    int orbit_count() const { return orbit_count_; }
    int orbit_of(int v) const { return orbit_of_.empty() ? 0 : orbit_of_[static_cast<std::size_t>(v)]; }

    /// Image of vertex v under the shift.
    int apply_shift(const Shift& s, int v) const;
    /// Preimage of vertex v under the shift.
    int apply_shift_inverse(const Shift& s, int v) const;

    void write_vertices_csv(std::ostream& os) const;
    void write_edges_csv(std::ostream& os) const;

    void ensure_same(const Field& u, const char* what) const;

private:
    Graph() = default;
    void finalize(std::vector<std::vector<int>>& adj);
    void validate() const;
    void compute_orbits();
    int lattice_index(const std::vector<int>& coords) const;

    std::uint64_t id_ = 0;
    int vertex_count_ = 0;
    GraphMode mode_ = GraphMode::plain;
    int degree_bound_ = 0;

    std::vector<int> offsets_;   // CSR offsets, size vertex_count+1
    std::vector<int> adjacency_; // sorted neighbor lists
    std::vector<int> boundary_degrees_;

    int dimension_ = 0;
    std::vector<int> sides_;

    PresetName preset_name_ = PresetName::ladder;
    int preset_size_ = 0;
    std::vector<std::vector<int>> group_; // preset shift group as permutations
    std::vector<int> orbit_of_;
    int orbit_count_ = 1;
};

/// (translate u)(x) = u(shift^{-1}(x)). Requires a shift-capable graph.
Field translate(const Graph& g, const Field& u, const Shift& s);

std::string to_string(GraphMode m);
std::string to_string(PresetName p);

} // namespace dnls
