#include "dnls/graph.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <ostream>
#include <set>

namespace dnls {

namespace {

std::uint64_t next_graph_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

int wrap(int x, int m) {
    int r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace

std::string to_string(GraphMode m) {
    switch (m) {
        case GraphMode::dirichlet_box: return "dirichlet_box";
        case GraphMode::periodic_torus: return "periodic_torus";
        case GraphMode::preset: return "preset";
        case GraphMode::plain: return "plain";
    }
    return "?";
}

std::string to_string(PresetName p) {
    switch (p) {
        case PresetName::ladder: return "ladder";
        case PresetName::hexagonal: return "hexagonal";
        case PresetName::triangular: return "triangular";
    }
    return "?";
}

void Graph::finalize(std::vector<std::vector<int>>& adj) {
    id_ = next_graph_id();
    vertex_count_ = static_cast<int>(adj.size());
    offsets_.assign(static_cast<std::size_t>(vertex_count_) + 1, 0);
    for (int v = 0; v < vertex_count_; ++v) {
        std::sort(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end());
        offsets_[static_cast<std::size_t>(v) + 1] =
            offsets_[static_cast<std::size_t>(v)] + static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    }
    adjacency_.reserve(static_cast<std::size_t>(offsets_.back()));
    for (auto& list : adj)
        adjacency_.insert(adjacency_.end(), list.begin(), list.end());
    validate();
}

void Graph::validate() const {
    // Exhaustive symmetry/simplicity/degree check on every constructed graph.
    for (int v = 0; v < vertex_count_; ++v) {
        auto nb = neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            int y = nb[i];
            if (y < 0 || y >= vertex_count_) throw graph_error("neighbor index out of range");
            if (y == v) throw graph_error("self-loop at vertex " + std::to_string(v));
            if (i + 1 < nb.size() && nb[i + 1] == y)
                throw graph_error("duplicate edge at vertex " + std::to_string(v));
            auto back = neighbors(y);
            if (!std::binary_search(back.begin(), back.end(), v))
                throw graph_error("asymmetric adjacency between " + std::to_string(v) + " and " + std::to_string(y));
        }
        if (degree(v) + boundary_degree(v) > degree_bound_)
            throw graph_error("degree bound violated at vertex " + std::to_string(v));
    }
}

int Graph::lattice_index(const std::vector<int>& coords) const {
    int idx = 0;
    for (int a = 0; a < dimension_; ++a) idx = idx * sides_[static_cast<std::size_t>(a)] + coords[static_cast<std::size_t>(a)];
    return idx;
}

Graph Graph::lattice_box(int dimension, const std::vector<int>& sides, GraphMode mode) {
    if (mode != GraphMode::dirichlet_box && mode != GraphMode::periodic_torus)
        throw graph_error("lattice_box mode must be dirichlet_box or periodic_torus");
    if (dimension < 1) throw graph_error("invalid dimension " + std::to_string(dimension));
    if (static_cast<int>(sides.size()) != dimension)
        throw graph_error("expected " + std::to_string(dimension) + " side lengths, got " + std::to_string(sides.size()));
    const int min_side = mode == GraphMode::periodic_torus ? 3 : 1;
    for (int a = 0; a < dimension; ++a) {
        if (sides[static_cast<std::size_t>(a)] < min_side)
            throw graph_error("axis " + std::to_string(a) + ": side " + std::to_string(sides[static_cast<std::size_t>(a)]) +
                              " below minimum " + std::to_string(min_side));
    }

    Graph g;
    g.mode_ = mode;
    g.dimension_ = dimension;
    g.sides_ = sides;
    g.degree_bound_ = 2 * dimension;

    long long count = 1;
    for (int s : sides) count *= s;
    const int n = static_cast<int>(count);

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    if (mode == GraphMode::dirichlet_box) g.boundary_degrees_.assign(static_cast<std::size_t>(n), 0);

    std::vector<int> coords(static_cast<std::size_t>(dimension), 0);
    for (int v = 0; v < n; ++v) {
        for (int a = 0; a < dimension; ++a) {
            for (int step : {-1, +1}) {
                const int c = coords[static_cast<std::size_t>(a)];
                if (mode == GraphMode::periodic_torus) {
                    std::vector<int> nc = coords;
                    nc[static_cast<std::size_t>(a)] = wrap(c + step, sides[static_cast<std::size_t>(a)]);
                    adj[static_cast<std::size_t>(v)].push_back(g.lattice_index(nc));
                } else if (c + step >= 0 && c + step < sides[static_cast<std::size_t>(a)]) {
                    std::vector<int> nc = coords;
                    nc[static_cast<std::size_t>(a)] = c + step;
                    adj[static_cast<std::size_t>(v)].push_back(g.lattice_index(nc));
                } else {
                    g.boundary_degrees_[static_cast<std::size_t>(v)] += 1;
                }
            }
        }
        // advance row-major multi-index, last axis fastest
        for (int a = dimension - 1; a >= 0; --a) {
            if (++coords[static_cast<std::size_t>(a)] < sides[static_cast<std::size_t>(a)]) break;
            coords[static_cast<std::size_t>(a)] = 0;
        }
    }
    g.finalize(adj);
    return g;
}

Graph Graph::preset(PresetName name, int size) {
    if (size < 3) throw graph_error("preset size must be >= 3 to keep the quotient simple");

    Graph g;
    g.mode_ = GraphMode::preset;
    g.preset_name_ = name;
    g.preset_size_ = size;

    std::vector<std::vector<int>> adj;

    if (name == PresetName::ladder) {
        // Z x K2 quotient: vertex (i, rail) -> 2*i + rail.
        const int n = 2 * size;
        adj.assign(static_cast<std::size_t>(n), {});
        auto idx = [size](int i, int r) { return 2 * wrap(i, size) + r; };
        for (int i = 0; i < size; ++i) {
            for (int r = 0; r < 2; ++r) {
                adj[static_cast<std::size_t>(idx(i, r))] = {idx(i, 1 - r), idx(i - 1, r), idx(i + 1, r)};
            }
        }
        g.degree_bound_ = 3;
        // Group: cyclic translation and rail swap; acts transitively.
        for (int a = 0; a < size; ++a) {
            for (int flip = 0; flip < 2; ++flip) {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int i = 0; i < size; ++i)
                    for (int r = 0; r < 2; ++r)
                        perm[static_cast<std::size_t>(idx(i, r))] = idx(i + a, flip ? 1 - r : r);
                g.group_.push_back(std::move(perm));
            }
        }
    } else if (name == PresetName::hexagonal) {
        // Honeycomb quotient: cell (i,j) holds sublattice vertices A=0, B=1.
        const int n = 2 * size * size;
        adj.assign(static_cast<std::size_t>(n), {});
        auto idx = [size](int i, int j, int s) { return (wrap(i, size) * size + wrap(j, size)) * 2 + s; };
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                // A(i,j) ~ B(i,j), B(i-1,j), B(i,j-1)
                adj[static_cast<std::size_t>(idx(i, j, 0))] = {idx(i, j, 1), idx(i - 1, j, 1), idx(i, j - 1, 1)};
                adj[static_cast<std::size_t>(idx(i, j, 1))] = {idx(i, j, 0), idx(i + 1, j, 0), idx(i, j + 1, 0)};
            }
        }
        g.degree_bound_ = 3;
        // Group: cell translations; the two sublattices are distinct orbits.
        for (int a = 0; a < size; ++a) {
            for (int b = 0; b < size; ++b) {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int i = 0; i < size; ++i)
                    for (int j = 0; j < size; ++j)
                        for (int s = 0; s < 2; ++s)
                            perm[static_cast<std::size_t>(idx(i, j, s))] = idx(i + a, j + b, s);
                g.group_.push_back(std::move(perm));
            }
        }
    } else { // triangular
        const int n = size * size;
        adj.assign(static_cast<std::size_t>(n), {});
        auto idx = [size](int i, int j) { return wrap(i, size) * size + wrap(j, size); };
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                adj[static_cast<std::size_t>(idx(i, j))] = {idx(i - 1, j), idx(i + 1, j), idx(i, j - 1),
                                                            idx(i, j + 1), idx(i + 1, j - 1), idx(i - 1, j + 1)};
            }
        }
        g.degree_bound_ = 6;
        for (int a = 0; a < size; ++a) {
            for (int b = 0; b < size; ++b) {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int i = 0; i < size; ++i)
                    for (int j = 0; j < size; ++j)
                        perm[static_cast<std::size_t>(idx(i, j))] = idx(i + a, j + b);
                g.group_.push_back(std::move(perm));
            }
        }
    }

    g.finalize(adj);
    g.compute_orbits();
    return g;
}

Graph Graph::custom(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    if (vertex_count < 1) throw graph_error("custom graph needs at least one vertex");
    Graph g;
    g.mode_ = GraphMode::plain;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
            throw graph_error("edge endpoint out of range");
        if (a == b) throw graph_error("self-loop rejected");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) continue; // collapse duplicates
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    int maxdeg = 1;
    for (const auto& list : adj) maxdeg = std::max(maxdeg, static_cast<int>(list.size()));
    g.degree_bound_ = maxdeg;
    g.finalize(adj);
    return g;
}

void Graph::compute_orbits() {
    // Union-find over the stored group action.
    std::vector<int> parent(static_cast<std::size_t>(vertex_count_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& perm : group_) {
        for (int v = 0; v < vertex_count_; ++v) {
            int a = find(v), b = find(perm[static_cast<std::size_t>(v)]);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
    }
    orbit_of_.assign(static_cast<std::size_t>(vertex_count_), -1);
    orbit_count_ = 0;
    for (int v = 0; v < vertex_count_; ++v) {
        int root = find(v);
        if (orbit_of_[static_cast<std::size_t>(root)] < 0) orbit_of_[static_cast<std::size_t>(root)] = orbit_count_++;
        orbit_of_[static_cast<std::size_t>(v)] = orbit_of_[static_cast<std::size_t>(root)];
    }
}

std::vector<int> Graph::coordinates(int v) const {
    switch (mode_) {
        case GraphMode::dirichlet_box:
        case GraphMode::periodic_torus: {
            std::vector<int> c(static_cast<std::size_t>(dimension_));
            int rest = v;
            for (int a = dimension_ - 1; a >= 0; --a) {
                c[static_cast<std::size_t>(a)] = rest % sides_[static_cast<std::size_t>(a)];
                rest /= sides_[static_cast<std::size_t>(a)];
            }
            return c;
        }
        case GraphMode::preset:
            if (preset_name_ == PresetName::ladder) return {v / 2, v % 2};
            if (preset_name_ == PresetName::hexagonal) return {v / 2 / preset_size_, (v / 2) % preset_size_, v % 2};
            return {v / preset_size_, v % preset_size_};
        case GraphMode::plain:
            return {v};
    }
    return {v};
}

int Graph::coordinate_count() const {
    switch (mode_) {
        case GraphMode::dirichlet_box:
        case GraphMode::periodic_torus: return dimension_;
        case GraphMode::preset: return preset_name_ == PresetName::hexagonal ? 3 : 2;
        case GraphMode::plain: return 1;
    }
    return 1;
}

int Graph::apply_shift(const Shift& s, int v) const {
    if (mode_ == GraphMode::periodic_torus) {
        if (static_cast<int>(s.displacement.size()) != dimension_)
            throw graph_error("shift displacement length does not match lattice dimension");
        std::vector<int> c = coordinates(v);
        for (int a = 0; a < dimension_; ++a)
            c[static_cast<std::size_t>(a)] = wrap(c[static_cast<std::size_t>(a)] + s.displacement[static_cast<std::size_t>(a)],
                                                  sides_[static_cast<std::size_t>(a)]);
        return lattice_index(c);
    }
    if (mode_ == GraphMode::preset) {
        if (s.element < 0 || s.element >= shift_group_size())
            throw graph_error("shift group element out of range");
        return group_[static_cast<std::size_t>(s.element)][static_cast<std::size_t>(v)];
    }
    throw graph_error("shifts unsupported on " + to_string(mode_) + " graphs");
}

int Graph::apply_shift_inverse(const Shift& s, int v) const {
    if (mode_ == GraphMode::periodic_torus) {
        Shift inv;
        inv.displacement.reserve(s.displacement.size());
        for (int d : s.displacement) inv.displacement.push_back(-d);
        return apply_shift(inv, v);
    }
    if (mode_ == GraphMode::preset) {
        if (s.element < 0 || s.element >= shift_group_size())
            throw graph_error("shift group element out of range");
        const auto& perm = group_[static_cast<std::size_t>(s.element)];
        for (int x = 0; x < vertex_count_; ++x)
            if (perm[static_cast<std::size_t>(x)] == v) return x;
        throw graph_error("stored shift is not a permutation"); // unreachable for valid groups
    }
    throw graph_error("shifts unsupported on " + to_string(mode_) + " graphs");
}

void Graph::ensure_same(const Field& u, const char* what) const {
    if (u.graph_id != id_) throw graph_error(std::string(what) + ": field belongs to a different graph");
    if (u.size() != vertex_count_) throw graph_error(std::string(what) + ": field size does not match vertex count");
}

Field translate(const Graph& g, const Field& u, const Shift& s) {
    g.ensure_same(u, "translate");
    if (!g.supports_shifts()) throw graph_error("translate: shifts unsupported on " + to_string(g.mode()) + " graphs");
    Field out;
    out.graph_id = g.id();
    out.values.resize(u.values.size());
    for (int x = 0; x < g.vertex_count(); ++x)
        out[x] = u[g.apply_shift_inverse(s, x)];
    return out;
}

void Graph::write_vertices_csv(std::ostream& os) const {
    os << "vertex";
    for (int a = 0; a < coordinate_count(); ++a) os << ",c" << a;
    os << ",degree,boundary_degree";
    if (mode_ == GraphMode::preset) os << ",orbit";
    os << "\n";
    for (int v = 0; v < vertex_count_; ++v) {
        os << v;
        for (int c : coordinates(v)) os << "," << c;
        os << "," << degree(v) << "," << boundary_degree(v);
        if (mode_ == GraphMode::preset) os << "," << orbit_of(v);
        os << "\n";
    }
}

void Graph::write_edges_csv(std::ostream& os) const {
    os << "u,v\n";
    for (int v = 0; v < vertex_count_; ++v)
        for (int y : neighbors(v))
            if (v < y) os << v << "," << y << "\n";
}

} // namespace dnls
