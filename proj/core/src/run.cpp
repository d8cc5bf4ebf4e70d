#include "dnls/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "dnls/config.hpp"
#include "dnls/records.hpp"

namespace dnls::run {

namespace fs = std::filesystem;

namespace {

constexpr int k_exit_ok = 0;
constexpr int k_exit_config = 1;
constexpr int k_exit_not_converged = 2;

void log(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "dnls: " << msg << "\n";
}

void ensure_parent_dir(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

std::string relative_to(const std::string& target, const std::string& anchor_file) {
    const fs::path anchor_dir = fs::path(anchor_file).parent_path();
    std::error_code ec;
    const fs::path rel = fs::relative(target, anchor_dir.empty() ? "." : anchor_dir, ec);
    return ec ? target : rel.string();
}

std::string resolve_from(const std::string& stored, const std::string& anchor_file) {
    const fs::path p(stored);
    if (p.is_absolute()) return stored;
    return (fs::path(anchor_file).parent_path() / p).string();
}

ResultRecord make_record(const std::string& command, const json& cfg, const SolverOptions& opts,
                         const Problem& p, const GroundStateResult& r) {
    ResultRecord rec;
    rec.command = command;
    rec.converged = r.converged;
    rec.energy = r.energy;
    rec.iterations = r.iterations;
    rec.wall_time_seconds = r.wall_time_seconds;
    rec.residual_pointwise_sup = r.residuals.pointwise_sup;
    rec.residual_nehari = r.residuals.nehari.value_or(0.0);
    rec.residual_grad_norm = r.residuals.grad_norm;
    rec.seed = opts.seed;
    rec.vertex_count = p.graph.vertex_count();
    rec.config_json = canonical_config_string(cfg);
    return rec;
}

void write_solution_file(const std::string& path, const Graph& g, const Field& u) {
    ensure_parent_dir(path);
    std::ofstream os(path);
    if (!os) throw error("cannot write " + path);
    write_solution_csv(os, g, u);
}

void write_record_file(const std::string& path, const ResultRecord& rec) {
    ensure_parent_dir(path);
    std::ofstream os(path);
    if (!os) throw error("cannot write " + path);
    write_result_record(os, rec);
}

int run_guarded(const char* what, const std::function<int()>& body) {
    try {
        return body();
    } catch (const config_error& e) {
        std::cerr << "dnls " << what << ": config error at " << e.what() << "\n";
        return k_exit_config;
    } catch (const error& e) {
        std::cerr << "dnls " << what << ": " << e.what() << "\n";
        return k_exit_config;
    } catch (const std::exception& e) {
        std::cerr << "dnls " << what << ": " << e.what() << "\n";
        return k_exit_config;
    }
}

struct SolveArtifacts {
    Problem problem;
    SolverOptions opts;
    GroundStateResult result;
};

SolveArtifacts solve_from_config(const json& cfg) {
    Problem p = build_problem(cfg);
    SolverOptions opts = parse_solver_options(cfg, p.graph);
    GroundStateResult r = minimize(p, opts);
    return SolveArtifacts{std::move(p), std::move(opts), std::move(r)};
}

} // namespace

int log_level() {
    const char* env = std::getenv("DNLS_LOG");
    if (!env) return 1;
    return std::atoi(env);
}

int solve(const std::string& config_path) {
    return run_guarded("solve", [&] {
        json cfg = read_json_file(config_path);
        SolveArtifacts art = solve_from_config(cfg);
        const OutputPaths out = parse_output(cfg, fs::path(config_path).stem().string());

        write_solution_file(out.solution, art.problem.graph, art.result.u_star);
        ResultRecord rec = make_record("solve", cfg, art.opts, art.problem, art.result);
        rec.solution_csv = relative_to(out.solution, out.result);
        if (!out.trace.empty() && art.opts.record_trace) {
            ensure_parent_dir(out.trace);
            std::ofstream ts(out.trace);
            if (!ts) throw error("cannot write " + out.trace);
            write_trace_csv(ts, art.result.trace);
            rec.trace_csv = relative_to(out.trace, out.result);
        }
        write_record_file(out.result, rec);

        std::cout << "energy = " << format_double(art.result.energy) << "\n"
                  << "converged = " << (art.result.converged ? "true" : "false") << "\n"
                  << "iterations = " << art.result.iterations << "\n"
                  << "result = " << out.result << "\n";
        log(2, "pointwise residual sup " + format_double(art.result.residuals.pointwise_sup));
        return art.result.converged ? k_exit_ok : k_exit_not_converged;
    });
}

int verify(const std::string& result_path) {
    return run_guarded("verify", [&] {
        std::ifstream is(result_path);
        if (!is) throw error("cannot open " + result_path);
        const ResultRecord rec = read_result_record(is);
        if (rec.command != "solve" && rec.command != "sweep")
            throw error("verify supports solve/sweep records, got command '" + rec.command + "'");

        const json cfg = json::parse(rec.config_json);
        Problem p = build_problem(cfg);
        const std::string solution_path = resolve_from(rec.solution_csv, result_path);
        std::ifstream ss(solution_path);
        if (!ss) throw error("cannot open solution csv " + solution_path);
        const Field u = read_solution_csv(ss, p.graph);

        // Round-trip: the persisted solution must reproduce the stored residuals.
        const Residuals fresh = compute_residuals(p, u);
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
        const bool roundtrip_ok = close(fresh.pointwise_sup, rec.residual_pointwise_sup) &&
                                  close(fresh.nehari.value_or(0.0), rec.residual_nehari) &&
                                  close(fresh.grad_norm, rec.residual_grad_norm);

        GroundStateResult r;
        r.u_star = u;
        r.energy = rec.energy;
        r.residuals = fresh;
        r.converged = rec.converged;
        const VerifyReport report = dnls::verify(p, r);

        std::cout << "roundtrip residuals: " << (roundtrip_ok ? "pass" : "FAIL") << "\n"
                  << report.summary() << "\n";
        if (!rec.converged) {
            std::cout << "stored result was not converged\n";
            return k_exit_not_converged;
        }
        return (roundtrip_ok && report.passed()) ? k_exit_ok : k_exit_not_converged;
    });
}

int sweep(const std::string& config_path) {
    return run_guarded("sweep", [&] {
        json base = read_json_file(config_path);
        const SweepSpec spec = parse_sweep(base);
        const OutputPaths out = parse_output(base, fs::path(config_path).stem().string() + "_sweep");
        const std::string dir = spec.dir.empty()
                                    ? (fs::path(out.result).parent_path().empty()
                                           ? std::string(".")
                                           : fs::path(out.result).parent_path().string())
                                    : spec.dir;
        fs::create_directories(dir);

        // Cartesian product over the axes, last axis fastest.
        std::size_t total = 1;
        for (const auto& axis : spec.axes) total *= axis.values.size();
        log(1, "sweep over " + std::to_string(total) + " entries, " + std::to_string(spec.workers) + " worker(s)");

        struct Entry {
            std::vector<json> axis_values;
            double energy = 0.0;
            bool converged = false;
            int iterations = 0;
            double pointwise = 0.0, nehari = 0.0;
            double wall = 0.0;
            std::string result_file;
            std::string failure;
        };
        std::vector<Entry> entries(total);

        auto run_entry = [&](std::size_t idx) {
            Entry& e = entries[idx];
            json cfg = base;
            cfg.erase("sweep");
            std::size_t rest = idx;
            std::vector<std::size_t> sel(spec.axes.size());
            for (std::size_t a = spec.axes.size(); a-- > 0;) {
                sel[a] = rest % spec.axes[a].values.size();
                rest /= spec.axes[a].values.size();
            }
            for (std::size_t a = 0; a < spec.axes.size(); ++a) {
                apply_config_value(cfg, spec.axes[a].path, spec.axes[a].values[sel[a]]);
                e.axis_values.push_back(spec.axes[a].values[sel[a]]);
            }
            try {
                SolveArtifacts art = solve_from_config(cfg);
                char tag[32];
                std::snprintf(tag, sizeof tag, "sweep_%03zu", idx);
                const std::string rec_path = (fs::path(dir) / (std::string(tag) + ".result.txt")).string();
                const std::string sol_path = (fs::path(dir) / (std::string(tag) + ".solution.csv")).string();
                write_solution_file(sol_path, art.problem.graph, art.result.u_star);
                ResultRecord rec = make_record("sweep", cfg, art.opts, art.problem, art.result);
                rec.solution_csv = relative_to(sol_path, rec_path);
                write_record_file(rec_path, rec);
                e.energy = art.result.energy;
                e.converged = art.result.converged;
                e.iterations = art.result.iterations;
                e.pointwise = art.result.residuals.pointwise_sup;
                e.nehari = art.result.residuals.nehari.value_or(0.0);
                e.wall = art.result.wall_time_seconds;
                e.result_file = rec_path;
            } catch (const std::exception& ex) {
                e.failure = ex.what();
            }
        };

        if (spec.workers <= 1 || total <= 1) {
            for (std::size_t i = 0; i < total; ++i) run_entry(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(spec.workers), total);
            for (std::size_t t = 0; t < n; ++t)
                pool.emplace_back([&] {
                    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_entry(i);
                });
            for (auto& th : pool) th.join();
        }

        for (std::size_t i = 0; i < total; ++i)
            if (!entries[i].failure.empty())
                throw error("sweep entry " + std::to_string(i) + " failed: " + entries[i].failure);

        ensure_parent_dir(out.result);
        std::ofstream os(out.result);
        if (!os) throw error("cannot write " + out.result);
        os << "index";
        for (const auto& axis : spec.axes) os << "," << axis.path;
        os << ",energy,converged,iterations,residual_pointwise_sup,residual_nehari,wall_time_seconds,result_file\n";
        bool all_ok = true;
        for (std::size_t i = 0; i < total; ++i) {
            const Entry& e = entries[i];
            os << i;
            for (const auto& v : e.axis_values) os << "," << v.dump();
            os << "," << format_double(e.energy) << "," << (e.converged ? "true" : "false") << "," << e.iterations << ","
               << format_double(e.pointwise) << "," << format_double(e.nehari) << "," << format_double(e.wall) << ","
               << e.result_file << "\n";
            all_ok = all_ok && e.converged;
        }
        std::cout << "sweep entries = " << total << "\nsummary = " << out.result << "\n";
        return all_ok ? k_exit_ok : k_exit_not_converged;
    });
}

int truncate(const std::string& config_path) {
    return run_guarded("truncate", [&] {
        json cfg = read_json_file(config_path);
        const std::vector<int> sizes = parse_truncate_sizes(cfg);

        const json& gspec = cfg.contains("graph") ? cfg.at("graph") : json::object();
        if (!gspec.contains("type") || gspec.at("type") != "lattice" || !gspec.contains("mode") ||
            gspec.at("mode") != "dirichlet_box")
            throw config_error("graph", "truncate requires a lattice graph with mode dirichlet_box");
        const int dim = gspec.contains("dimension") && gspec.at("dimension").is_number_integer()
                            ? gspec.at("dimension").get<int>()
                            : throw config_error("graph.dimension", "expected an integer");

        if (!cfg.contains("potential") || cfg.at("potential").value("kind", "") != "constant")
            throw config_error("potential.kind",
                               "truncate requires a constant potential (vertex-anchored kinds do not nest across sizes)");

        // Nonlinearity coefficients must be scalars so the model is size-free.
        if (cfg.contains("nonlinearity") && cfg.at("nonlinearity").contains("coefficients")) {
            const json& coeffs = cfg.at("nonlinearity").at("coefficients");
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                if (coeffs[i].is_array())
                    throw config_error("nonlinearity.coefficients[" + std::to_string(i) + "]",
                                       "truncate requires scalar coefficients");
        }

        const double v_const = cfg.at("potential").contains("value") && cfg.at("potential").at("value").is_number()
                                   ? cfg.at("potential").at("value").get<double>()
                                   : throw config_error("potential.value", "expected a number");

        // Solver options are parsed against the smallest box; init vertex
        // indices would not transfer across sizes, so only defaults or
        // random/bump-at-center inits are accepted.
        const Graph probe = Graph::lattice_box(dim, std::vector<int>(static_cast<std::size_t>(dim), sizes.front()),
                                               GraphMode::dirichlet_box);
        SolverOptions opts = parse_solver_options(cfg, probe);
        if (opts.init == InitKind::user_field || opts.init_vertex >= 0)
            throw config_error("solver.init", "truncate supports only default bump or random_positive inits");

        auto make_problem = [&](const Graph& g) {
            return Problem(g, Potential::constant(g, v_const), build_nonlinearity(cfg, g));
        };

        const int workers = cfg.contains("truncate") ? cfg.at("truncate").value("workers", 1) : 1;
        const std::vector<TruncationRow> rows = truncation_study(dim, sizes, make_problem, opts, workers);

        const OutputPaths out = parse_output(cfg, fs::path(config_path).stem().string() + "_truncate");
        ensure_parent_dir(out.result);
        std::ofstream os(out.result);
        if (!os) throw error("cannot write " + out.result);
        os << "size,vertex_count,energy,delta_prev,converged,iterations\n";
        bool all_ok = true, monotone = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            os << r.sides[0] << "," << r.vertex_count << "," << format_double(r.energy) << ","
               << format_double(r.delta_prev) << "," << (r.converged ? "true" : "false") << "," << r.iterations << "\n";
            all_ok = all_ok && r.converged;
            if (i > 0 && r.delta_prev > 0.0) monotone = false;
        }
        std::cout << "sizes = " << rows.size() << "\nmonotone_non_increasing = " << (monotone ? "true" : "false")
                  << "\ntable = " << out.result << "\n";
        return all_ok ? k_exit_ok : k_exit_not_converged;
    });
}

int compare(const std::string& config_path) {
    return run_guarded("compare", [&] {
        json cfg = read_json_file(config_path);
        Problem p = build_problem(cfg);
        SolverOptions opts = parse_solver_options(cfg, p.graph);
        EnergyComparison cmp;
        try {
            cmp = compare_limit_energy(p, opts);
        } catch (const model_error& e) {
            throw config_error("potential", e.what());
        }

        const OutputPaths out = parse_output(cfg, fs::path(config_path).stem().string() + "_compare");
        const std::string well_sol = fs::path(out.solution).parent_path() /
                                     (fs::path(out.solution).stem().string() + ".well.csv");
        const std::string limit_sol = fs::path(out.solution).parent_path() /
                                      (fs::path(out.solution).stem().string() + ".limit.csv");
        write_solution_file(well_sol, p.graph, cmp.well.u_star);
        write_solution_file(limit_sol, p.graph, cmp.limit.u_star);

        ensure_parent_dir(out.result);
        std::ofstream os(out.result);
        if (!os) throw error("cannot write " + out.result);
        os << "format = dnls-compare/1\n";
        os << "c = " << format_double(cmp.c) << "\n";
        os << "c_inf = " << format_double(cmp.c_inf) << "\n";
        os << "gap = " << format_double(cmp.gap) << "\n";
        os << "well_converged = " << (cmp.well.converged ? "true" : "false") << "\n";
        os << "limit_converged = " << (cmp.limit.converged ? "true" : "false") << "\n";
        os << "well_solution_csv = " << relative_to(well_sol, out.result) << "\n";
        os << "limit_solution_csv = " << relative_to(limit_sol, out.result) << "\n";
        os << "config_json = " << canonical_config_string(cfg) << "\n";

        std::cout << "c = " << format_double(cmp.c) << "\nc_inf = " << format_double(cmp.c_inf)
                  << "\ngap = " << format_double(cmp.gap) << "\nresult = " << out.result << "\n";
        return (cmp.well.converged && cmp.limit.converged) ? k_exit_ok : k_exit_not_converged;
    });
}

int export_plotdata(const std::string& result_path, const std::string& out_path) {
    return run_guarded("export-plotdata", [&] {
        std::ifstream is(result_path);
        if (!is) throw error("cannot open " + result_path);
        const ResultRecord rec = read_result_record(is);
        const json cfg = json::parse(rec.config_json);
        Problem p = build_problem(cfg);

        const std::string solution_path = resolve_from(rec.solution_csv, result_path);
        std::ifstream ss(solution_path);
        if (!ss) throw error("cannot open solution csv " + solution_path);
        const Field u = read_solution_csv(ss, p.graph);
        const Field residual = action_gradient(p, u);

        ensure_parent_dir(out_path);
        std::ofstream os(out_path);
        if (!os) throw error("cannot write " + out_path);
        write_plotdata_csv(os, p.graph, p.potential, u, residual);
        std::cout << "rows = " << p.graph.vertex_count() << "\nplotdata = " << out_path << "\n";
        return k_exit_ok;
    });
}

} // namespace dnls::run
