#include "wentzell/solvability.hpp"

#include "wentzell/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wentzell {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::StrictlyFeasible: return "strictly-feasible";
        case Verdict::NecessaryOnly: return "necessary-only";
        case Verdict::Infeasible: return "infeasible";
    }
    return "?";
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::StrictlyFeasible: return 0;
        case Verdict::NecessaryOnly: return 2;
        case Verdict::Infeasible: return 3;
    }
    return 1;
}

namespace {

double interval_scale(const RangeInterval& i) {
    double s = 1.0;
    if (std::isfinite(i.lo)) s = std::max(s, std::abs(i.lo));
    if (std::isfinite(i.hi)) s = std::max(s, std::abs(i.hi));
    return s;
}

// Strict interior membership with a relative safety margin, so a load that
// lands numerically on an open endpoint is not promoted to feasible.
bool in_interior(const RangeInterval& i, double t) {
    const double margin = kInteriorMargin * interval_scale(i);
    const bool above = std::isinf(i.lo) ? true : t > i.lo + margin;
    const bool below = std::isinf(i.hi) ? true : t < i.hi - margin;
    return above && below;
}

bool in_closure(const RangeInterval& i, double t) {
    const double margin = kInteriorMargin * interval_scale(i);
    const bool above = std::isinf(i.lo) ? true : t >= i.lo - margin;
    const bool below = std::isinf(i.hi) ? true : t <= i.hi + margin;
    return above && below;
}

// Membership in the interval itself, honoring attained endpoints.
bool in_interval(const RangeInterval& i, double t) {
    if (in_interior(i, t)) return true;
    if (!in_closure(i, t)) return false;
    const double margin = kInteriorMargin * interval_scale(i);
    if (std::isfinite(i.lo) && std::abs(t - i.lo) <= margin) return i.lo_attained;
    if (std::isfinite(i.hi) && std::abs(t - i.hi) <= margin) return i.hi_attained;
    return true;
}

double aggregate_load(const WentzellProblem& problem) {
    return integral_mu(problem.load, *problem.mesh);
}

} // namespace

SolvabilityReport certify_mean_zero_c(const WentzellProblem& problem) {
    const Mesh& mesh = *problem.mesh;
    if (!mesh.c_is_zero()) {
        throw CertificateError(
            "mean-compatibility certificate requires c == 0; use the ground-state certificate");
    }

    SolvabilityReport rep;
    rep.certificate = "mean-compatibility";
    rep.aggregate_load = aggregate_load(problem);

    const Measure m = mesh.measure();
    rep.admissible = minkowski_combine(problem.alpha1.range(), m.lambda1,
                                       problem.alpha2.range(), m.lambda2);

    const Delta2Report d1 = delta2_check(problem.alpha1);
    const Delta2Report d2 = delta2_check(problem.alpha2);
    rep.delta2_ok = d1.passes && d2.passes;

    const double t = rep.aggregate_load;
    // A point interval only arises when both nonlinearities vanish; there
    // the problem is linear and the alternative is exact, so compatibility
    // alone is sufficient.
    const bool linear_point = rep.admissible.lo == 0.0 && rep.admissible.hi == 0.0 &&
                              rep.admissible.lo_attained && rep.admissible.hi_attained;
    if (!in_interval(rep.admissible, t)) {
        rep.verdict = Verdict::Infeasible;
    } else if (linear_point || (in_interior(rep.admissible, t) && rep.delta2_ok)) {
        rep.verdict = Verdict::StrictlyFeasible;
    } else {
        rep.verdict = Verdict::NecessaryOnly;
    }
    return rep;
}

SolvabilityReport certify_ground_state(const WentzellProblem& problem, const EigenResult& eigen) {
    const Mesh& mesh = *problem.mesh;
    if (mesh.c_is_zero()) {
        throw CertificateError(
            "ground-state certificate requires c > 0 somewhere; use the mean-compatibility certificate");
    }
    if (problem.q != 0.0) {
        throw CertificateError("ground-state certificate is stated for q == 0");
    }
    if (!problem.alpha2.is_zero()) {
        throw CertificateError("ground-state certificate expects the nonlinearity in the bulk only");
    }

    SolvabilityReport rep;
    rep.certificate = "ground-state";
    rep.aggregate_load = aggregate_load(problem);
    rep.lambda = eigen.lambda;

    const ProductVector& z = eigen.vec;
    double zmin = z.interior[0], zmax = z.interior[0];
    for (double v : z.interior) {
        zmin = std::min(zmin, v);
        zmax = std::max(zmax, v);
    }
    if (!(zmin > 0.0)) {
        throw ConvergenceError("ground state is not positive at every node; refine the mesh", zmin);
    }
    rep.min_z = zmin;
    rep.max_z = zmax;
    rep.f_dot_z = x2_inner_product(problem.load, z, mesh);

    const RangeInterval ra = problem.alpha1.range();
    rep.admissible = ra;
    const double z_dot_one = integral_mu(z, mesh);

    // Weighted necessary window and the strict pointwise sufficient window.
    rep.nec_lo = std::isinf(ra.lo) ? -RangeInterval::inf : ra.lo * z_dot_one;
    rep.nec_hi = std::isinf(ra.hi) ? RangeInterval::inf : ra.hi * z_dot_one;
    rep.suf_lo = std::isinf(ra.lo) ? -RangeInterval::inf : ra.lo / zmin;
    rep.suf_hi = std::isinf(ra.hi) ? RangeInterval::inf : ra.hi / zmax;

    rep.delta2_ok = delta2_check(problem.alpha1).passes;

    const double fz = rep.f_dot_z;
    const double scale =
        std::max({1.0, std::isfinite(rep.nec_lo) ? std::abs(rep.nec_lo) : 0.0,
                  std::isfinite(rep.nec_hi) ? std::abs(rep.nec_hi) : 0.0});
    const double margin = kInteriorMargin * scale;

    const bool nec_ok = fz >= rep.nec_lo - margin && fz <= rep.nec_hi + margin;
    const bool suf_ok = fz > rep.suf_lo + margin && fz < rep.suf_hi - margin;

    if (!nec_ok) {
        rep.verdict = Verdict::Infeasible;
    } else if (suf_ok && rep.delta2_ok) {
        rep.verdict = Verdict::StrictlyFeasible;
    } else {
        rep.verdict = Verdict::NecessaryOnly;
    }
    return rep;
}

bool necessity_audit(const WentzellProblem& problem, const ProductVector& u_solution, double tol) {
    const Mesh& mesh = *problem.mesh;
    require_shape(mesh, u_solution, "necessity_audit");

    const double t = aggregate_load(problem);

    // Weak form tested against the constant function: gradient terms drop,
    // leaving the nonlinear aggregates, the c-term, and the shift term.
    double balance = 0.0;
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
        balance += mesh.quad_weight[i] * problem.alpha1(u_solution.interior[i]);
    }
    double alpha_aggregate = balance;
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        const double w = mesh.boundary_weight[k] / mesh.b_sample[k];
        const double ub = u_solution.boundary[k];
        const double a2 = problem.alpha2(ub) * w;
        balance += a2;
        alpha_aggregate += a2;
        balance += (mesh.c_sample[k] * mesh.boundary_weight[k] + mesh.c_atom[k]) / mesh.b_sample[k] * ub;
    }
    if (problem.spectral_shift != 0.0) {
        balance -= problem.spectral_shift * integral_mu(u_solution, mesh);
    }

    if (std::abs(balance - t) > tol * (1.0 + std::abs(t))) return false;

    if (mesh.c_is_zero() && problem.spectral_shift == 0.0) {
        const Measure m = mesh.measure();
        const RangeInterval admissible = minkowski_combine(
            problem.alpha1.range(), m.lambda1, problem.alpha2.range(), m.lambda2);
        if (!in_closure(admissible, alpha_aggregate)) return false;
    }
    return true;
}

} // namespace wentzell
