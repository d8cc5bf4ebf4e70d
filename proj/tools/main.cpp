#include <string>

#include <CLI11.hpp>

#include "dnls/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"dnls — ground states of the discrete nonlinear Schrödinger equation on graphs"};
    app.require_subcommand(1);

    std::string config_path, result_path, out_path;

    auto* solve = app.add_subcommand("solve", "Compute a ground state from a JSON config");
    solve->add_option("config", config_path, "config file")->required();

    auto* verify = app.add_subcommand("verify", "Re-check a persisted result record");
    verify->add_option("result", result_path, "result record file")->required();

    auto* sweep = app.add_subcommand("sweep", "Solve across a parameter sweep");
    sweep->add_option("config", config_path, "config file with a sweep block")->required();

    auto* truncate = app.add_subcommand("truncate", "Ground state energy per dirichlet box size");
    truncate->add_option("config", config_path, "config file with a truncate block")->required();

    auto* compare = app.add_subcommand("compare", "Compare bounded-well energy c against the V_inf limit c_inf");
    compare->add_option("config", config_path, "config file")->required();

    auto* exportpd = app.add_subcommand("export-plotdata", "Emit a tidy per-vertex CSV from a result record");
    exportpd->add_option("result", result_path, "result record file")->required();
    exportpd->add_option("out", out_path, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return dnls::run::solve(config_path);
    if (verify->parsed()) return dnls::run::verify(result_path);
    if (sweep->parsed()) return dnls::run::sweep(config_path);
    if (truncate->parsed()) return dnls::run::truncate(config_path);
    if (compare->parsed()) return dnls::run::compare(config_path);
    if (exportpd->parsed()) return dnls::run::export_plotdata(result_path, out_path);
    return 1;
}
