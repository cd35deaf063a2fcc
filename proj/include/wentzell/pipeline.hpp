#pragma once

#include "wentzell/config.hpp"
#include "wentzell/halfspace.hpp"
#include "wentzell/solvability.hpp"
#include "wentzell/solver.hpp"
#include "wentzell/spectral.hpp"

#include <optional>
#include <string>

namespace wentzell {

// Orchestration of the certify -> solve -> audit pipelines behind the CLI.
// Everything returns plain data so tests can drive it directly; reports are
// deterministic (no wall clock, stable key order).

struct CheckRun {
    SolvabilityReport report;
    Json report_json;
    int exit_code = 0;
};

CheckRun run_check(const RunConfig& cfg);

struct SolveRun {
    SolveOutcome outcome;
    std::optional<SolvabilityReport> certificate;
    bool refused = false; // certificate said infeasible and force was not given
    bool audit_passed = true;
    int exit_code = 0;
    Json report_json;
    std::string solution_csv;
    double resolved_shift = 0.0;
};

SolveRun run_solve(const RunConfig& cfg, bool force = false);

struct EigenRun {
    EigenResult eigen;
    int null_dim = 0;
    Json report_json;
    std::string eigenvector_csv;
};

EigenRun run_eigen(const RunConfig& cfg, double null_tol = 1e-8);

struct SweepRun {
    std::string csv;
    Json summary;
};

// One row per parameter value. load-scale sweeps certify each scaled load;
// q sweeps re-assemble and report the smallest eigenvalue; grid-n sweeps
// re-mesh and report the smallest eigenvalue. Rows may be computed in
// parallel, capped by the WENTZELL_THREADS environment variable.
SweepRun run_sweep(const RunConfig& cfg, const SweepSpec& sweep);

struct HalfspaceRun {
    std::string csv;
    ConstantsBand band;
};

HalfspaceRun run_halfspace(double lambda, double b, double c, double q,
                           const std::vector<double>& zetas, double ghat = 1.0,
                           double fhat_decay = 0.0);

Json solvability_to_json(const SolvabilityReport& rep);

} // namespace wentzell
