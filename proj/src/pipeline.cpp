#include "wentzell/pipeline.hpp"

#include "wentzell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

namespace wentzell {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double endpoint_or_null(Json& j, const char* key, double v) {
    if (std::isinf(v)) {
        j[key] = v > 0 ? "inf" : "-inf";
    } else {
        j[key] = v;
    }
    return v;
}

int sweep_thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("WENTZELL_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return static_cast<int>(hw);
}

std::vector<double> sweep_values(const SweepSpec& sweep) {
    if (!sweep.values.empty()) return sweep.values;
    std::vector<double> vals;
    const int count = static_cast<int>(std::floor((sweep.to - sweep.from) / sweep.step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) vals.push_back(sweep.from + i * sweep.step);
    return vals;
}

std::string solution_csv(const Mesh& mesh, const ProductVector& u) {
    std::ostringstream os;
    os << (mesh.dimension == 2 ? "node,x,y,u,boundary\n" : "node,x,u,boundary\n");
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
        os << i << ',' << fmt(mesh.node_x[i]);
        if (mesh.dimension == 2) os << ',' << fmt(mesh.node_y[i]);
        os << ',' << fmt(u.interior[i]) << ',' << (mesh.node_boundary_index[i] >= 0 ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace

Json solvability_to_json(const SolvabilityReport& rep) {
    Json j;
    j["certificate"] = rep.certificate;
    j["verdict"] = verdict_name(rep.verdict);
    j["aggregate_load"] = rep.aggregate_load;
    Json interval;
    endpoint_or_null(interval, "lo", rep.admissible.lo);
    endpoint_or_null(interval, "hi", rep.admissible.hi);
    interval["lo_attained"] = rep.admissible.lo_attained;
    interval["hi_attained"] = rep.admissible.hi_attained;
    j["admissible_interval"] = interval;
    j["delta2_ok"] = rep.delta2_ok;
    if (rep.certificate == "ground-state") {
        j["lambda"] = rep.lambda;
        j["load_dot_ground_state"] = rep.f_dot_z;
        j["min_z"] = rep.min_z;
        j["max_z"] = rep.max_z;
        Json nec;
        endpoint_or_null(nec, "lo", rep.nec_lo);
        endpoint_or_null(nec, "hi", rep.nec_hi);
        j["necessary_bounds"] = nec;
        Json suf;
        endpoint_or_null(suf, "lo", rep.suf_lo);
        endpoint_or_null(suf, "hi", rep.suf_hi);
        j["sufficient_bounds"] = suf;
    }
    return j;
}

CheckRun run_check(const RunConfig& cfg) {
    MeshPtr mesh = build_mesh(cfg);
    WentzellProblem problem = build_problem(cfg, mesh);

    CheckRun out;
    if (mesh->c_is_zero()) {
        out.report = certify_mean_zero_c(problem);
    } else {
        OperatorMatrices ops = assemble(mesh, cfg.q);
        out.report = certify_ground_state(problem, smallest_eigenpair(ops));
    }
    out.report_json = solvability_to_json(out.report);
    out.exit_code = verdict_exit_code(out.report.verdict);
    return out;
}

SolveRun run_solve(const RunConfig& cfg, bool force) {
    MeshPtr mesh = build_mesh(cfg);
    WentzellProblem problem = build_problem(cfg, mesh);
    OperatorMatrices ops = assemble(mesh, cfg.q);

    SolveRun out;

    if (cfg.shift_ground) {
        const EigenResult eigen = smallest_eigenpair(ops);
        problem.spectral_shift = eigen.lambda;
    }
    out.resolved_shift = problem.spectral_shift;

    // Certify when one of the two certificates applies.
    if (mesh->c_is_zero() && problem.spectral_shift == 0.0) {
        out.certificate = certify_mean_zero_c(problem);
    } else if (!mesh->c_is_zero() && cfg.shift_ground && problem.alpha2.is_zero() && cfg.q == 0.0) {
        const EigenResult eigen = smallest_eigenpair(ops);
        out.certificate = certify_ground_state(problem, eigen);
    }

    if (out.certificate && out.certificate->verdict == Verdict::Infeasible && !force) {
        out.refused = true;
        out.exit_code = 3;
        out.report_json["refused"] = true;
        out.report_json["certificate"] = solvability_to_json(*out.certificate);
        return out;
    }

    SolveOptions opts;
    opts.tol = cfg.solve_tol;
    opts.max_iter = cfg.max_iter;
    if (cfg.gauge == "zero-mean") opts.gauge = SolveOptions::Gauge::ZeroMean;
    if (cfg.gauge == "none") opts.gauge = SolveOptions::Gauge::None;

    out.outcome = solve(problem, ops, opts);

    if (out.outcome.status == SolveStatus::Converged) {
        out.audit_passed = necessity_audit(problem, out.outcome.solution);
        out.exit_code = 0;
    } else if (out.outcome.status == SolveStatus::DivergedAlongNullspace) {
        out.exit_code = 3;
    } else {
        out.exit_code = 4;
    }

    out.solution_csv = solution_csv(*mesh, out.outcome.solution);

    out.report_json["status"] = solve_status_name(out.outcome.status);
    out.report_json["residual"] = out.outcome.residual;
    out.report_json["iterations"] = out.outcome.iterations;
    out.report_json["audit_passed"] = out.audit_passed;
    if (problem.spectral_shift != 0.0) out.report_json["shift"] = problem.spectral_shift;
    if (out.outcome.status == SolveStatus::DivergedAlongNullspace) {
        out.report_json["drift_rate"] = out.outcome.drift_rate;
    }
    if (out.certificate) {
        out.report_json["certificate"] = solvability_to_json(*out.certificate);
    }
    return out;
}

EigenRun run_eigen(const RunConfig& cfg, double null_tol) {
    MeshPtr mesh = build_mesh(cfg);
    OperatorMatrices ops = assemble(mesh, cfg.q);

    EigenRun out;
    out.eigen = smallest_eigenpair(ops);
    out.null_dim = null_space_dim(ops, null_tol);

    out.report_json["lambda"] = out.eigen.lambda;
    out.report_json["residual"] = out.eigen.residual;
    out.report_json["null_space_dim"] = out.null_dim;

    std::ostringstream os;
    os << (mesh->dimension == 2 ? "node,x,y,z,boundary\n" : "node,x,z,boundary\n");
    for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
        os << i << ',' << fmt(mesh->node_x[i]);
        if (mesh->dimension == 2) os << ',' << fmt(mesh->node_y[i]);
        os << ',' << fmt(out.eigen.vec.interior[i]) << ','
           << (mesh->node_boundary_index[i] >= 0 ? 1 : 0) << '\n';
    }
    out.eigenvector_csv = os.str();
    return out;
}

SweepRun run_sweep(const RunConfig& cfg, const SweepSpec& sweep) {
    const std::vector<double> values = sweep_values(sweep);
    std::vector<std::string> rows(values.size());

    auto compute_row = [&](std::size_t i) {
        const double v = values[i];
        RunConfig local = cfg;
        local.sweep.reset();
        std::ostringstream os;
        if (sweep.parameter == "load-scale") {
            local.load_scale = v;
            const CheckRun check = run_check(local);
            os << fmt(v) << ',' << fmt(check.report.aggregate_load) << ','
               << verdict_name(check.report.verdict) << ',' << check.exit_code;
        } else if (sweep.parameter == "q") {
            local.q = v;
            const EigenRun eig = run_eigen(local);
            os << fmt(v) << ',' << fmt(eig.eigen.lambda) << ',' << fmt(eig.eigen.residual);
        } else if (sweep.parameter == "grid-n") {
            const int n = static_cast<int>(std::lround(v));
            if (local.mesh.dimension == 1) {
                local.mesh.n = n;
            } else {
                local.mesh.nx = local.mesh.ny = n;
            }
            const EigenRun eig = run_eigen(local);
            os << n << ',' << fmt(eig.eigen.lambda) << ',' << fmt(eig.eigen.residual);
        } else {
            throw ConfigError("unknown sweep parameter '" + sweep.parameter + "'");
        }
        rows[i] = os.str();
    };

    const int cap = sweep_thread_cap();
    if (cap <= 1 || values.size() <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i) compute_row(i);
    } else {
        std::vector<std::future<void>> pending;
        std::size_t next = 0;
        while (next < values.size() || !pending.empty()) {
            while (next < values.size() && pending.size() < static_cast<std::size_t>(cap)) {
                pending.push_back(std::async(std::launch::async, compute_row, next));
                ++next;
            }
            pending.front().get();
            pending.erase(pending.begin());
        }
    }

    SweepRun out;
    std::ostringstream os;
    if (sweep.parameter == "load-scale") {
        os << "scale,aggregate_load,verdict,exit\n";
    } else if (sweep.parameter == "q") {
        os << "q,lambda,residual\n";
    } else {
        os << "n,lambda,residual\n";
    }
    for (const std::string& r : rows) os << r << '\n';
    out.csv = os.str();
    out.summary["parameter"] = sweep.parameter;
    out.summary["rows"] = values.size();
    return out;
}

HalfspaceRun run_halfspace(double lambda, double b, double c, double q,
                           const std::vector<double>& zetas, double ghat, double fhat_decay) {
    std::vector<FrequencyProblem> sweep;
    sweep.reserve(zetas.size());
    for (double z : zetas) {
        FrequencyProblem fp;
        fp.zeta = z;
        fp.lambda = lambda;
        fp.b = b;
        fp.c = c;
        fp.q = q;
        fp.ghat = ghat;
        if (fhat_decay > 0.0) {
            fp.fhat = [fhat_decay](double t) { return std::exp(-fhat_decay * t); };
        }
        sweep.push_back(fp);
    }

    HalfspaceRun out;
    std::ostringstream os;
    os << "zeta,p,u0,data_norm,solution_norm,ratio,growing_mode\n";
    bool first = true;
    for (const FrequencyProblem& fp : sweep) {
        const FrequencySolution sol = solve_frequency(fp);
        const FrequencyRatios r = frequency_ratio(fp, sol);
        os << fmt(fp.zeta) << ',' << fmt(boundary_symbol(fp)) << ',' << fmt(sol.u0) << ','
           << fmt(r.data_norm) << ',' << fmt(r.solution_norm) << ',' << fmt(r.ratio) << ','
           << fmt(growing_mode_coefficient(sol)) << '\n';
        if (r.ratio > 0.0) {
            if (first) {
                out.band.c_low = out.band.c_high = r.ratio;
                first = false;
            } else {
                out.band.c_low = std::min(out.band.c_low, r.ratio);
                out.band.c_high = std::max(out.band.c_high, r.ratio);
            }
        }
    }
    out.csv = os.str();
    return out;
}

} // namespace wentzell
