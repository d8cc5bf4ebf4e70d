#include "dnls/config.hpp"

#include <fstream>
#include <sstream>

namespace dnls {

namespace {

std::string join_path(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

std::string index_path(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

const json& require(const json& j, const std::string& base, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw config_error(join_path(base, key), "missing required key");
    return j.at(key);
}

double require_number(const json& j, const std::string& base, const std::string& key) {
    const json& v = require(j, base, key);
    if (!v.is_number()) throw config_error(join_path(base, key), "expected a number");
    return v.get<double>();
}

int require_int(const json& j, const std::string& base, const std::string& key) {
    const json& v = require(j, base, key);
    if (!v.is_number_integer()) throw config_error(join_path(base, key), "expected an integer");
    return v.get<int>();
}

std::string require_string(const json& j, const std::string& base, const std::string& key) {
    const json& v = require(j, base, key);
    if (!v.is_string()) throw config_error(join_path(base, key), "expected a string");
    return v.get<std::string>();
}

double opt_number(const json& j, const std::string& base, const std::string& key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw config_error(join_path(base, key), "expected a number");
    return j.at(key).get<double>();
}

int opt_int(const json& j, const std::string& base, const std::string& key, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw config_error(join_path(base, key), "expected an integer");
    return j.at(key).get<int>();
}

} // namespace

json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error(path, "cannot open config file");
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw config_error(path, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error(path, "top-level config must be a JSON object");
    return j;
}

Graph build_graph(const json& cfg) {
    const json& g = require(cfg, "", "graph");
    const std::string type = require_string(g, "graph", "type");
    try {
        if (type == "lattice") {
            const std::string mode_str = require_string(g, "graph", "mode");
            GraphMode mode;
            if (mode_str == "dirichlet_box")
                mode = GraphMode::dirichlet_box;
            else if (mode_str == "periodic_torus")
                mode = GraphMode::periodic_torus;
            else
                throw config_error("graph.mode", "unknown mode '" + mode_str + "'");
            const int dim = require_int(g, "graph", "dimension");
            const json& sides_j = require(g, "graph", "sides");
            if (!sides_j.is_array()) throw config_error("graph.sides", "expected an array");
            std::vector<int> sides;
            for (std::size_t i = 0; i < sides_j.size(); ++i) {
                if (!sides_j[i].is_number_integer()) throw config_error(index_path("graph.sides", i), "expected an integer");
                sides.push_back(sides_j[i].get<int>());
            }
            return Graph::lattice_box(dim, sides, mode);
        }
        if (type == "preset") {
            const std::string name = require_string(g, "graph", "name");
            PresetName preset;
            if (name == "ladder")
                preset = PresetName::ladder;
            else if (name == "hexagonal")
                preset = PresetName::hexagonal;
            else if (name == "triangular")
                preset = PresetName::triangular;
            else
                throw config_error("graph.name", "unknown preset '" + name + "'");
            return Graph::preset(preset, require_int(g, "graph", "size"));
        }
        if (type == "custom") {
            const int n = require_int(g, "graph", "vertex_count");
            const json& edges_j = require(g, "graph", "edges");
            if (!edges_j.is_array()) throw config_error("graph.edges", "expected an array of [u,v] pairs");
            std::vector<std::pair<int, int>> edges;
            for (std::size_t i = 0; i < edges_j.size(); ++i) {
                const json& e = edges_j[i];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                    throw config_error(index_path("graph.edges", i), "expected an [u,v] integer pair");
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
            return Graph::custom(n, edges);
        }
    } catch (const graph_error& e) {
        throw config_error("graph", e.what());
    }
    throw config_error("graph.type", "unknown graph type '" + type + "'");
}

Potential build_potential(const json& cfg, const Graph& g) {
    const json& p = require(cfg, "", "potential");
    const std::string kind = require_string(p, "potential", "kind");
    try {
        if (kind == "constant") return Potential::constant(g, require_number(p, "potential", "value"));
        if (kind == "periodic") {
            const json& cell_j = require(p, "potential", "cell");
            const json& periods_j = require(p, "potential", "periods");
            if (!cell_j.is_array()) throw config_error("potential.cell", "expected an array");
            if (!periods_j.is_array()) throw config_error("potential.periods", "expected an array");
            std::vector<double> cell;
            for (std::size_t i = 0; i < cell_j.size(); ++i) {
                if (!cell_j[i].is_number()) throw config_error(index_path("potential.cell", i), "expected a number");
                cell.push_back(cell_j[i].get<double>());
            }
            std::vector<int> periods;
            for (std::size_t i = 0; i < periods_j.size(); ++i) {
                if (!periods_j[i].is_number_integer())
                    throw config_error(index_path("potential.periods", i), "expected an integer");
                periods.push_back(periods_j[i].get<int>());
            }
            return Potential::periodic(g, cell, periods);
        }
        if (kind == "bounded_well") {
            const double v_inf = require_number(p, "potential", "v_inf");
            std::vector<std::pair<int, double>> dips;
            if (p.contains("dips")) {
                const json& dips_j = p.at("dips");
                if (!dips_j.is_array()) throw config_error("potential.dips", "expected an array of [vertex, depth] pairs");
                for (std::size_t i = 0; i < dips_j.size(); ++i) {
                    const json& d = dips_j[i];
                    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number())
                        throw config_error(index_path("potential.dips", i), "expected a [vertex, depth] pair");
                    dips.emplace_back(d[0].get<int>(), d[1].get<double>());
                }
            }
            return Potential::well(g, v_inf, dips);
        }
    } catch (const model_error& e) {
        throw config_error("potential", e.what());
    }
    throw config_error("potential.kind", "unknown potential kind '" + kind + "'");
}

Nonlinearity build_nonlinearity(const json& cfg, const Graph& g) {
    const json& n = require(cfg, "", "nonlinearity");
    const json& exps = require(n, "nonlinearity", "exponents");
    if (!exps.is_array() || exps.empty()) throw config_error("nonlinearity.exponents", "expected a nonempty array");
    const json* coeffs = nullptr;
    if (n.contains("coefficients")) {
        coeffs = &n.at("coefficients");
        if (!coeffs->is_array()) throw config_error("nonlinearity.coefficients", "expected an array");
        if (coeffs->size() != exps.size())
            throw config_error("nonlinearity.coefficients", "length must match exponents");
    }

    std::vector<Nonlinearity::PowerTerm> terms;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (!exps[i].is_number()) throw config_error(index_path("nonlinearity.exponents", i), "expected a number");
        Nonlinearity::PowerTerm term;
        term.exponent = exps[i].get<double>();
        if (!(term.exponent > 2.0))
            throw config_error(index_path("nonlinearity.exponents", i),
                               "exponent must be > 2 (got " + exps[i].dump() + ")");
        term.coefficient = 1.0;
        if (coeffs) {
            const json& c = (*coeffs)[i];
            if (c.is_number()) {
                term.coefficient = c.get<double>();
                if (!(term.coefficient > 0.0))
                    throw config_error(index_path("nonlinearity.coefficients", i), "coefficient must be > 0");
            } else if (c.is_array()) {
                if (static_cast<int>(c.size()) != g.vertex_count())
                    throw config_error(index_path("nonlinearity.coefficients", i),
                                       "per-vertex coefficient array must have one entry per vertex");
                for (std::size_t k = 0; k < c.size(); ++k) {
                    if (!c[k].is_number() || !(c[k].get<double>() > 0.0))
                        throw config_error(index_path("nonlinearity.coefficients", i) + "[" + std::to_string(k) + "]",
                                           "coefficients must be positive numbers");
                    term.coefficients.push_back(c[k].get<double>());
                }
            } else {
                throw config_error(index_path("nonlinearity.coefficients", i), "expected a number or per-vertex array");
            }
        }
        terms.push_back(std::move(term));
    }
    try {
        return Nonlinearity::power(std::move(terms));
    } catch (const model_error& e) {
        throw config_error("nonlinearity", e.what());
    }
}

Problem build_problem(const json& cfg) {
    Graph g = build_graph(cfg);
    Potential V = build_potential(cfg, g);
    Nonlinearity nl = build_nonlinearity(cfg, g);
    return Problem(std::move(g), std::move(V), std::move(nl));
}

SolverOptions parse_solver_options(const json& cfg, const Graph& g) {
    SolverOptions opts;
    if (!cfg.contains("solver")) return opts;
    const json& s = cfg.at("solver");
    if (!s.is_object()) throw config_error("solver", "expected an object");

    opts.max_iters = opt_int(s, "solver", "max_iters", opts.max_iters);
    if (opts.max_iters < 0) throw config_error("solver.max_iters", "must be nonnegative");
    opts.tol_grad = opt_number(s, "solver", "tol_grad", opts.tol_grad);
    opts.tol_point = opt_number(s, "solver", "tol_point", opts.tol_point);
    opts.tol_nehari = opt_number(s, "solver", "tol_nehari", opts.tol_nehari);
    for (auto [key, v] : {std::pair<const char*, double>{"tol_grad", opts.tol_grad},
                          {"tol_point", opts.tol_point},
                          {"tol_nehari", opts.tol_nehari}}) {
        if (!(v > 0.0)) throw config_error(join_path("solver", key), "tolerance must be positive");
    }
    if (s.contains("step")) {
        const json& st = s.at("step");
        if (!st.is_object()) throw config_error("solver.step", "expected an object");
        opts.step.initial = opt_number(st, "solver.step", "initial", opts.step.initial);
        opts.step.backtrack = opt_number(st, "solver.step", "backtrack", opts.step.backtrack);
        opts.step.sufficient_decrease = opt_number(st, "solver.step", "sufficient_decrease", opts.step.sufficient_decrease);
        if (!(opts.step.initial > 0.0)) throw config_error("solver.step.initial", "must be positive");
        if (!(opts.step.backtrack > 0.0 && opts.step.backtrack < 1.0))
            throw config_error("solver.step.backtrack", "must lie in (0,1)");
        if (!(opts.step.sufficient_decrease > 0.0 && opts.step.sufficient_decrease < 1.0))
            throw config_error("solver.step.sufficient_decrease", "must lie in (0,1)");
    }
    if (s.contains("seed")) {
        if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer())
            throw config_error("solver.seed", "expected an integer");
        opts.seed = s.at("seed").get<std::uint64_t>();
    }
    if (s.contains("record_trace")) {
        if (!s.at("record_trace").is_boolean()) throw config_error("solver.record_trace", "expected a boolean");
        opts.record_trace = s.at("record_trace").get<bool>();
    }
    if (s.contains("init")) {
        const json& init = s.at("init");
        if (!init.is_object()) throw config_error("solver.init", "expected an object");
        const std::string kind = require_string(init, "solver.init", "kind");
        if (kind == "bump_at_vertex") {
            opts.init = InitKind::bump_at_vertex;
            opts.init_vertex = opt_int(init, "solver.init", "vertex", -1);
            if (opts.init_vertex >= g.vertex_count())
                throw config_error("solver.init.vertex", "vertex out of range");
        } else if (kind == "random_positive") {
            opts.init = InitKind::random_positive;
        } else if (kind == "user_field") {
            opts.init = InitKind::user_field;
            const json& vals = require(init, "solver.init", "values");
            if (!vals.is_array() || static_cast<int>(vals.size()) != g.vertex_count())
                throw config_error("solver.init.values", "expected one value per vertex");
            Field f = zeros(g);
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (!vals[i].is_number())
                    throw config_error(index_path("solver.init.values", i), "expected a number");
                f[static_cast<int>(i)] = vals[i].get<double>();
            }
            opts.init_field = std::move(f);
        } else {
            throw config_error("solver.init.kind", "unknown init kind '" + kind + "'");
        }
    }
    return opts;
}

OutputPaths parse_output(const json& cfg, const std::string& default_stem) {
    OutputPaths out;
    out.result = default_stem + ".result.txt";
    out.solution = default_stem + ".solution.csv";
    if (!cfg.contains("output")) return out;
    const json& o = cfg.at("output");
    if (!o.is_object()) throw config_error("output", "expected an object");
    if (o.contains("result")) out.result = require_string(o, "output", "result");
    if (o.contains("solution")) out.solution = require_string(o, "output", "solution");
    if (o.contains("trace")) out.trace = require_string(o, "output", "trace");
    return out;
}

SweepSpec parse_sweep(const json& cfg) {
    const json& s = require(cfg, "", "sweep");
    const json& axes_j = require(s, "sweep", "axes");
    if (!axes_j.is_array() || axes_j.empty()) throw config_error("sweep.axes", "expected a nonempty array");
    SweepSpec spec;
    for (std::size_t i = 0; i < axes_j.size(); ++i) {
        const json& a = axes_j[i];
        SweepAxis axis;
        axis.path = require_string(a, index_path("sweep.axes", i), "path");
        const json& vals = require(a, index_path("sweep.axes", i), "values");
        if (!vals.is_array() || vals.empty())
            throw config_error(index_path("sweep.axes", i) + ".values", "expected a nonempty array");
        for (const auto& v : vals) axis.values.push_back(v);
        spec.axes.push_back(std::move(axis));
    }
    spec.workers = opt_int(s, "sweep", "workers", 1);
    if (spec.workers < 1) throw config_error("sweep.workers", "must be >= 1");
    if (s.contains("dir")) spec.dir = require_string(s, "sweep", "dir");
    return spec;
}

std::vector<int> parse_truncate_sizes(const json& cfg) {
    const json& t = require(cfg, "", "truncate");
    const json& sizes_j = require(t, "truncate", "sizes");
    if (!sizes_j.is_array() || sizes_j.empty()) throw config_error("truncate.sizes", "expected a nonempty array");
    std::vector<int> sizes;
    for (std::size_t i = 0; i < sizes_j.size(); ++i) {
        if (!sizes_j[i].is_number_integer()) throw config_error(index_path("truncate.sizes", i), "expected an integer");
        sizes.push_back(sizes_j[i].get<int>());
        if (i > 0 && sizes[i] <= sizes[i - 1])
            throw config_error(index_path("truncate.sizes", i), "sizes must be strictly increasing");
    }
    return sizes;
}

void apply_config_value(json& cfg, const std::string& dotted_path, const json& value) {
    // "a.b[2].c" -> JSON pointer "/a/b/2/c"
    std::string pointer;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            pointer += "/" + token;
            token.clear();
        }
    };
    for (char c : dotted_path) {
        if (c == '.') {
            flush();
        } else if (c == '[') {
            flush();
        } else if (c == ']') {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    try {
        json::json_pointer jp(pointer);
        if (!cfg.contains(jp)) throw config_error(dotted_path, "path does not exist in the config");
        cfg[jp] = value;
    } catch (const json::exception&) {
        throw config_error(dotted_path, "invalid config path");
    }
}

std::string canonical_config_string(const json& cfg) {
    return cfg.dump(); // nlohmann sorts object keys; doubles render round-trip safe
}

} // namespace dnls
