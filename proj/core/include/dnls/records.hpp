#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "dnls/solver.hpp"

namespace dnls {

using json = nlohmann::json;

/// One persisted run: a key-value text record plus a solution CSV. The record
/// embeds the fully resolved config so a result can be re-verified without
/// the original config file.
struct ResultRecord {
    std::string command;
    bool converged = false;
    double energy = 0.0;
    int iterations = 0;
    double wall_time_seconds = 0.0;
    double residual_pointwise_sup = 0.0;
    double residual_nehari = 0.0;
    double residual_grad_norm = 0.0;
    std::uint64_t seed = 0;
    int vertex_count = 0;
    std::string solution_csv; // path relative to the record file
    std::string trace_csv;    // empty when no trace was recorded
    std::string config_json;  // canonical single-line resolved config
};

/// Round-trip safe decimal rendering (17 significant digits).
std::string format_double(double x);

void write_result_record(std::ostream& os, const ResultRecord& r);
ResultRecord read_result_record(std::istream& is);

void write_solution_csv(std::ostream& os, const Graph& g, const Field& u);
Field read_solution_csv(std::istream& is, const Graph& g);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

/// Tidy per-vertex table: coordinates, u, V, residual.
void write_plotdata_csv(std::ostream& os, const Graph& g, const Potential& V, const Field& u, const Field& residual);

} // namespace dnls
