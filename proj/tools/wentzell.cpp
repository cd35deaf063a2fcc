// Command-line front end: solvability checks, energy-minimization solves,
// eigenpair extraction, parameter sweeps, and the half-space verifier.

#include "wentzell/errors.hpp"
#include "wentzell/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace wentzell;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to " + path);
    out << content;
}

void write_json(const std::string& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

RunConfig load_with_overrides(const std::string& config_path, std::optional<double> load_scale,
                              std::optional<int> grid_n) {
    RunConfig cfg = load_config_file(config_path);
    if (load_scale) cfg.load_scale = *load_scale;
    if (grid_n) {
        if (cfg.mesh.dimension == 1) {
            cfg.mesh.n = *grid_n;
        } else {
            cfg.mesh.nx = cfg.mesh.ny = *grid_n;
        }
    }
    return cfg;
}

std::vector<double> parse_zeta_range(const std::string& text) {
    // from:to:count
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw ConfigError("zeta range must be from:to:count");
    }
    const double from = std::stod(text.substr(0, c1));
    const double to = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const int count = std::stoi(text.substr(c2 + 1));
    if (count < 1) throw ConfigError("zeta count must be >= 1");
    std::vector<double> zetas(count);
    for (int i = 0; i < count; ++i) {
        zetas[i] = count == 1 ? from : from + (to - from) * i / (count - 1);
    }
    return zetas;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wentzell boundary-value toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, report_path, coo_prefix;
    std::optional<double> load_scale;
    std::optional<int> grid_n;
    bool force = false;
    double null_tol = 1e-8;

    auto* check = app.add_subcommand("check", "solvability certificate for a problem config");
    check->add_option("--config", config_path, "problem config (json)")->required();
    check->add_option("--load-scale", load_scale, "override the load scale");
    check->add_option("--out", report_path, "write the json report here");

    auto* solve_cmd = app.add_subcommand("solve", "certify, minimize the energy, audit");
    solve_cmd->add_option("--config", config_path, "problem config (json)")->required();
    solve_cmd->add_option("--load-scale", load_scale, "override the load scale");
    solve_cmd->add_option("--n", grid_n, "override the grid resolution");
    solve_cmd->add_option("--out", out_path, "solution csv path");
    solve_cmd->add_option("--report", report_path, "json report path");
    solve_cmd->add_flag("--force", force, "run the solver even when certified infeasible");

    auto* eigen_cmd = app.add_subcommand("eigen", "smallest eigenpair of the linear operator");
    eigen_cmd->add_option("--config", config_path, "problem config (json)")->required();
    eigen_cmd->add_option("--n", grid_n, "override the grid resolution");
    eigen_cmd->add_option("--out", out_path, "eigenvector csv path");
    eigen_cmd->add_option("--report", report_path, "json report path");
    eigen_cmd->add_option("--null-tol", null_tol, "eigenvalues below this count as kernel");
    eigen_cmd->add_option("--export-coo", coo_prefix, "dump stiffness/mass in coordinate format");

    std::string sweep_param, sweep_values;
    double sweep_from = 0, sweep_to = 0, sweep_step = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter, one csv row per value");
    sweep_cmd->add_option("--config", config_path, "problem config (json)")->required();
    sweep_cmd->add_option("--parameter", sweep_param, "load-scale | q | grid-n");
    sweep_cmd->add_option("--from", sweep_from, "first value");
    sweep_cmd->add_option("--to", sweep_to, "last value");
    sweep_cmd->add_option("--step", sweep_step, "increment");
    sweep_cmd->add_option("--values", sweep_values, "comma-separated explicit values");
    sweep_cmd->add_option("--out", out_path, "sweep csv path");

    double hs_lambda = 1.0, hs_b = 1.0, hs_c = 0.0, hs_q = 0.0, hs_ghat = 1.0, hs_fdecay = 0.0;
    std::string hs_zeta = "0:100:64";
    auto* hs_cmd = app.add_subcommand("halfspace", "constant-coefficient half-space verifier");
    hs_cmd->add_option("--lambda", hs_lambda, "spectral parameter (> 0)");
    hs_cmd->add_option("--b", hs_b, "boundary coefficient b (> 0)");
    hs_cmd->add_option("--c", hs_c, "boundary coefficient c (>= 0)");
    hs_cmd->add_option("--q", hs_q, "tangential diffusion (>= 0)");
    hs_cmd->add_option("--zeta", hs_zeta, "frequency range from:to:count");
    hs_cmd->add_option("--ghat", hs_ghat, "boundary datum per frequency");
    hs_cmd->add_option("--fhat-decay", hs_fdecay, "bulk datum exp(-a z); 0 disables");
    hs_cmd->add_option("--out", out_path, "sweep csv path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            const RunConfig cfg = load_with_overrides(config_path, load_scale, grid_n);
            const CheckRun run = run_check(cfg);
            if (!report_path.empty()) write_json(report_path, run.report_json);
            std::cout << verdict_name(run.report.verdict)
                      << " (aggregate load " << run.report.aggregate_load << ")\n";
            return run.exit_code;
        }
        if (solve_cmd->parsed()) {
            const RunConfig cfg = load_with_overrides(config_path, load_scale, grid_n);
            const SolveRun run = run_solve(cfg, force);
            if (run.refused) {
                std::cout << "refused: certificate says infeasible (use --force to override)\n";
                if (!report_path.empty()) write_json(report_path, run.report_json);
                return run.exit_code;
            }
            if (!out_path.empty()) write_file(out_path, run.solution_csv);
            if (!report_path.empty()) write_json(report_path, run.report_json);
            std::cout << solve_status_name(run.outcome.status) << " residual "
                      << run.outcome.residual << " in " << run.outcome.iterations
                      << " iterations\n";
            return run.exit_code;
        }
        if (eigen_cmd->parsed()) {
            const RunConfig cfg = load_with_overrides(config_path, std::nullopt, grid_n);
            const EigenRun run = run_eigen(cfg, null_tol);
            if (!out_path.empty()) write_file(out_path, run.eigenvector_csv);
            if (!report_path.empty()) write_json(report_path, run.report_json);
            if (!coo_prefix.empty()) {
                MeshPtr mesh = build_mesh(cfg);
                const OperatorMatrices ops = assemble(mesh, cfg.q);
                std::ofstream ks(coo_prefix + "_stiffness.txt");
                export_coo(ops.stiffness, ks);
                std::ofstream ms(coo_prefix + "_mass.txt");
                for (Eigen::Index i = 0; i < ops.mass.size(); ++i) {
                    ms << i << ' ' << i << ' ' << ops.mass[i] << '\n';
                }
            }
            std::cout << "lambda " << run.eigen.lambda << " (null dim " << run.null_dim
                      << ", residual " << run.eigen.residual << ")\n";
            return 0;
        }
        if (sweep_cmd->parsed()) {
            RunConfig cfg = load_config_file(config_path);
            SweepSpec sweep;
            if (!sweep_param.empty()) {
                sweep.parameter = sweep_param;
                sweep.from = sweep_from;
                sweep.to = sweep_to;
                sweep.step = sweep_step;
                if (!sweep_values.empty()) {
                    std::stringstream ss(sweep_values);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) sweep.values.push_back(std::stod(tok));
                }
            } else if (cfg.sweep) {
                sweep = *cfg.sweep;
            } else {
                std::cerr << "no sweep given on the command line or in the config\n";
                return 1;
            }
            const SweepRun run = run_sweep(cfg, sweep);
            if (!out_path.empty()) {
                write_file(out_path, run.csv);
            } else {
                std::cout << run.csv;
            }
            return 0;
        }
        if (hs_cmd->parsed()) {
            const HalfspaceRun run =
                run_halfspace(hs_lambda, hs_b, hs_c, hs_q, parse_zeta_range(hs_zeta), hs_ghat,
                              hs_fdecay);
            if (!out_path.empty()) {
                write_file(out_path, run.csv);
            } else {
                std::cout << run.csv;
            }
            std::cout << "ratio band [" << run.band.c_low << ", " << run.band.c_high << "]\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
