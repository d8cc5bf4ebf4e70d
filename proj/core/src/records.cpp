#include "dnls/records.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dnls {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

constexpr const char* k_format_tag = "dnls-result/1";

double parse_double(const std::string& s, const char* key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw error(std::string("result record: bad numeric value for ") + key + ": '" + s + "'");
    }
}

} // namespace

void write_result_record(std::ostream& os, const ResultRecord& r) {
    os << "format = " << k_format_tag << "\n";
    os << "command = " << r.command << "\n";
    os << "converged = " << (r.converged ? "true" : "false") << "\n";
    os << "energy = " << format_double(r.energy) << "\n";
    os << "iterations = " << r.iterations << "\n";
    os << "wall_time_seconds = " << format_double(r.wall_time_seconds) << "\n";
    os << "residual_pointwise_sup = " << format_double(r.residual_pointwise_sup) << "\n";
    os << "residual_nehari = " << format_double(r.residual_nehari) << "\n";
    os << "residual_grad_norm = " << format_double(r.residual_grad_norm) << "\n";
    os << "seed = " << r.seed << "\n";
    os << "vertex_count = " << r.vertex_count << "\n";
    os << "solution_csv = " << r.solution_csv << "\n";
    os << "trace_csv = " << r.trace_csv << "\n";
    os << "config_json = " << r.config_json << "\n";
}

ResultRecord read_result_record(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto sep = line.find(" = ");
        if (sep == std::string::npos) throw error("result record: malformed line '" + line + "'");
        kv[line.substr(0, sep)] = line.substr(sep + 3);
    }
    auto need = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw error(std::string("result record: missing key ") + key);
        return it->second;
    };
    if (need("format") != k_format_tag) throw error("result record: unsupported format '" + kv["format"] + "'");

    ResultRecord r;
    r.command = need("command");
    r.converged = need("converged") == "true";
    r.energy = parse_double(need("energy"), "energy");
    r.iterations = static_cast<int>(parse_double(need("iterations"), "iterations"));
    r.wall_time_seconds = parse_double(need("wall_time_seconds"), "wall_time_seconds");
    r.residual_pointwise_sup = parse_double(need("residual_pointwise_sup"), "residual_pointwise_sup");
    r.residual_nehari = parse_double(need("residual_nehari"), "residual_nehari");
    r.residual_grad_norm = parse_double(need("residual_grad_norm"), "residual_grad_norm");
    r.seed = static_cast<std::uint64_t>(std::stoull(need("seed")));
    r.vertex_count = static_cast<int>(parse_double(need("vertex_count"), "vertex_count"));
    r.solution_csv = need("solution_csv");
    r.trace_csv = kv.count("trace_csv") ? kv["trace_csv"] : "";
    r.config_json = need("config_json");
    return r;
}

void write_solution_csv(std::ostream& os, const Graph& g, const Field& u) {
    g.ensure_same(u, "write_solution_csv");
    os << "vertex_index";
    for (int a = 0; a < g.coordinate_count(); ++a) os << ",c" << a;
    os << ",value\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << v;
        for (int c : g.coordinates(v)) os << "," << c;
        os << "," << format_double(u[v]) << "\n";
    }
}

Field read_solution_csv(std::istream& is, const Graph& g) {
    Field u;
    u.graph_id = g.id();
    u.values.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
    std::string line;
    if (!std::getline(is, line)) throw error("solution csv: empty file");
    int rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto first = line.find(',');
        const auto last = line.rfind(',');
        if (first == std::string::npos) throw error("solution csv: malformed row '" + line + "'");
        const int v = static_cast<int>(std::stol(line.substr(0, first)));
        if (v < 0 || v >= g.vertex_count()) throw error("solution csv: vertex index out of range");
        u[v] = parse_double(line.substr(last + 1), "value");
        ++rows;
    }
    if (rows != g.vertex_count()) throw error("solution csv: expected " + std::to_string(g.vertex_count()) +
                                              " rows, got " + std::to_string(rows));
    ensure_finite(u, "solution csv");
    return u;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
    os << "iter,s_w,psi,tangent_grad_norm\n";
    for (const auto& row : trace)
        os << row.iter << "," << format_double(row.s) << "," << format_double(row.reduced_value) << ","
           << format_double(row.tangent_grad_norm) << "\n";
}

void write_plotdata_csv(std::ostream& os, const Graph& g, const Potential& V, const Field& u, const Field& residual) {
    os << "vertex_index";
    for (int a = 0; a < g.coordinate_count(); ++a) os << ",c" << a;
    os << ",u,V,residual\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << v;
        for (int c : g.coordinates(v)) os << "," << c;
        os << "," << format_double(u[v]) << "," << format_double(V[v]) << "," << format_double(residual[v]) << "\n";
    }
}

} // namespace dnls
