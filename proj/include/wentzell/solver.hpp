#pragma once

#include "wentzell/operators.hpp"

#include <optional>
#include <vector>

namespace wentzell {

enum class SolveStatus { Converged, DivergedAlongNullspace, MaxIter };

const char* solve_status_name(SolveStatus s);

struct SolveOptions {
    double tol = 1e-9;  // M^-1 dual residual at which the state is a weak solution
    int max_iter = 200;
    enum class Gauge { Auto, ZeroMean, None } gauge = Gauge::Auto;
    double drift_threshold = 1e6; // mean magnitude that flags a run along the constants
    std::optional<ProductVector> initial;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::MaxIter;
    ProductVector solution;
    double residual = 0.0;
    std::vector<double> energy_trace; // energy at each accepted iterate
    double drift_rate = 0.0;          // mean drift per iteration when diverging
    int iterations = 0;
};

// Discrete energy whose stationary points are weak solutions:
// 1/2 rho(U,U) - shift/2 |U|_M^2 + sum L1(u) dx + sum L2(u) dS/b - <F,U>.
double energy(const WentzellProblem& problem, const OperatorMatrices& ops, const ProductVector& u);

// M-representer of the energy derivative; vanishes exactly at weak solutions.
ProductVector gradient(const WentzellProblem& problem, const OperatorMatrices& ops,
                       const ProductVector& u);

// Damped Newton with Armijo backtracking on the convex energy; falls back to
// mass-preconditioned descent for nonsmooth (table) nonlinearities. When the
// problem is degenerate along the constants (c == 0, both nonlinearities
// zero, no shift) the zero-mean gauge pins the constant direction. An
// incompatible load is reported as divergence along the constant direction,
// not as an error.
SolveOutcome solve(const WentzellProblem& problem, const OperatorMatrices& ops,
                   const SolveOptions& opts = {});

} // namespace wentzell
