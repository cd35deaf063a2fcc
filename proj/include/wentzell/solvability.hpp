#pragma once

#include "wentzell/operators.hpp"
#include "wentzell/spectral.hpp"

#include <string>

namespace wentzell {

enum class Verdict {
    StrictlyFeasible, // a weak solution exists
    NecessaryOnly,    // only the necessary condition holds; existence not promised
    Infeasible,       // the necessary condition fails; no weak solution
};

const char* verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

struct SolvabilityReport {
    double aggregate_load = 0.0;   // T = integral of f dx + integral of g dS/b
    RangeInterval admissible;      // scaled interval sum of the nonlinearity ranges
    Verdict verdict = Verdict::Infeasible;
    std::string certificate;       // "mean-compatibility" or "ground-state"
    bool delta2_ok = false;

    // Ground-state branch diagnostics.
    double lambda = 0.0;
    double f_dot_z = 0.0;
    double min_z = 0.0;
    double max_z = 0.0;
    double nec_lo = 0.0, nec_hi = 0.0; // bounds of the weighted necessary condition
    double suf_lo = 0.0, suf_hi = 0.0; // bounds of the strict sufficient condition
};

// Relative margin used for strict interior membership at interval endpoints.
inline constexpr double kInteriorMargin = 1e-9;

// Certificate for problems with c identically zero: compares the aggregate
// load against the interval l1*R(alpha1) + l2*R(alpha2). Strict interior
// membership plus the doubling condition gives existence; leaving the closed
// interval rules it out; anything else is necessary-only.
SolvabilityReport certify_mean_zero_c(const WentzellProblem& problem);

// Certificate for q = 0, c > 0 somewhere, alpha2 == 0: weights the load with
// the positive ground state Z of the linear part. `eigen` must be the
// M-normalized smallest eigenpair.
SolvabilityReport certify_ground_state(const WentzellProblem& problem, const EigenResult& eigen);

// Tests the weak form against the constant test function: the nonlinear
// terms (plus the c-term and shift term when present) must balance the
// aggregate load, and for c == 0 the nonlinear aggregate must lie in the
// closure of the admissible interval.
bool necessity_audit(const WentzellProblem& problem, const ProductVector& u_solution,
                     double tol = 1e-6);

} // namespace wentzell
