#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnls/solver.hpp"

namespace dnls {

// Config schema (JSON; full reference in the README):
//   graph        { type: lattice|preset|custom, ... }
//   potential    { kind: constant|periodic|bounded_well, ... }
//   nonlinearity { exponents: [q...], coefficients: [a...] }
//   solver       { max_iters, tol_grad, tol_point, tol_nehari, step{...},
//                  seed, init{kind, vertex, values}, record_trace }
//   output       { result, solution, trace }
//   sweep        { axes: [{path, values}...], workers, dir }
//   truncate     { sizes: [...] }
// Schema violations raise config_error carrying the offending key path in
// dotted form, e.g. "nonlinearity.exponents[0]".

using json = nlohmann::json;

json read_json_file(const std::string& path);

Graph build_graph(const json& cfg);
Potential build_potential(const json& cfg, const Graph& g);
Nonlinearity build_nonlinearity(const json& cfg, const Graph& g);
Problem build_problem(const json& cfg);

SolverOptions parse_solver_options(const json& cfg, const Graph& g);

struct OutputPaths {
    std::string result;
    std::string solution;
    std::string trace; // empty = no trace output
};
OutputPaths parse_output(const json& cfg, const std::string& default_stem);

struct SweepAxis {
    std::string path; // dotted config path, e.g. "nonlinearity.exponents[0]"
    std::vector<json> values;
};
struct SweepSpec {
    std::vector<SweepAxis> axes;
    int workers = 1;
    std::string dir;
};
SweepSpec parse_sweep(const json& cfg);

std::vector<int> parse_truncate_sizes(const json& cfg);

/// Sets cfg at a dotted path ("a.b[2].c") to `value`; throws config_error if
/// the path does not resolve.
void apply_config_value(json& cfg, const std::string& dotted_path, const json& value);

/// Canonical single-line rendering used when embedding configs in records.
std::string canonical_config_string(const json& cfg);

} // namespace dnls
