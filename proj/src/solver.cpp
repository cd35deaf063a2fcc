#include "wentzell/solver.hpp"

#include "wentzell/errors.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <deque>
#include <limits>
#include <vector>

namespace wentzell {

const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::DivergedAlongNullspace: return "diverged-along-nullspace";
        case SolveStatus::MaxIter: return "max-iter";
    }
    return "?";
}

namespace {

double energy_nodal(const WentzellProblem& problem, const OperatorMatrices& ops,
                    const Eigen::VectorXd& u) {
    const Mesh& mesh = *ops.mesh;
    Eigen::VectorXd ku(u.size());
    ops.apply_stiffness(u.data(), ku.data());
    double e = 0.5 * u.dot(ku);
    if (problem.spectral_shift != 0.0) {
        e -= 0.5 * problem.spectral_shift * u.dot(ops.mass.cwiseProduct(u));
    }
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        e += ops.mass_bulk[i] * problem.alpha1.primitive(u[i]);
    }
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        e += ops.mass_boundary[static_cast<Eigen::Index>(k)] *
             problem.alpha2.primitive(u[mesh.boundary_nodes[k]]);
    }
    e -= load_dual(ops, problem.load).dot(u);
    return e;
}

double dual_norm(const OperatorMatrices& ops, const Eigen::VectorXd& r) {
    return std::sqrt(r.cwiseAbs2().cwiseQuotient(ops.mass).sum());
}

// Newton system matrix: K - shift M + mass-weighted slopes of the
// nonlinearities on the diagonal.
Eigen::SparseMatrix<double> hessian(const WentzellProblem& problem, const OperatorMatrices& ops,
                                    const Eigen::VectorXd& u, double tau) {
    const Mesh& mesh = *ops.mesh;
    const Eigen::Index n = u.size();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(ops.stiffness.nonZeros()) + 2 * n);
    for (int r = 0; r < ops.stiffness.outerSize(); ++r) {
        for (SparseRowMajor::InnerIterator it(ops.stiffness, r); it; ++it) {
            trips.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        double d = ops.mass_bulk[i] * problem.alpha1.derivative(u[i]);
        d += (tau - problem.spectral_shift) * ops.mass[i];
        if (d != 0.0) trips.emplace_back(i, i, d);
    }
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        const int node = mesh.boundary_nodes[k];
        const double d =
            ops.mass_boundary[static_cast<Eigen::Index>(k)] * problem.alpha2.derivative(u[node]);
        if (d != 0.0) trips.emplace_back(node, node, d);
    }
    Eigen::SparseMatrix<double> h(n, n);
    h.setFromTriplets(trips.begin(), trips.end());
    return h;
}

double hessian_scale(const OperatorMatrices& ops) {
    double s = 1.0;
    for (int i = 0; i < ops.stiffness.rows(); ++i) {
        s = std::max(s, std::abs(ops.stiffness.coeff(i, i)) / ops.mass[i]);
    }
    return s;
}

} // namespace

double energy(const WentzellProblem& problem, const OperatorMatrices& ops, const ProductVector& u) {
    const Eigen::VectorXd nodal = nodal_values(*ops.mesh, u, 1e-9, "energy");
    return energy_nodal(problem, ops, nodal);
}

ProductVector gradient(const WentzellProblem& problem, const OperatorMatrices& ops,
                       const ProductVector& u) {
    const Eigen::VectorXd nodal = nodal_values(*ops.mesh, u, 1e-9, "gradient");
    const Eigen::VectorXd g = residual_dual(problem, ops, nodal).cwiseQuotient(ops.mass);
    return coupled_from_nodal(*ops.mesh, std::vector<double>(g.data(), g.data() + g.size()));
}

SolveOutcome solve(const WentzellProblem& problem, const OperatorMatrices& ops,
                   const SolveOptions& opts) {
    const Mesh& mesh = *ops.mesh;
    const Eigen::Index n = static_cast<Eigen::Index>(mesh.num_nodes());
    const double mu_total = mesh.measure().total();
    const bool use_newton = problem.alpha1.smooth() && problem.alpha2.smooth();
    const bool degenerate = problem.alpha1.is_zero() && problem.alpha2.is_zero() &&
                            mesh.c_is_zero() && problem.spectral_shift == 0.0;
    const bool zero_mean_gauge =
        opts.gauge == SolveOptions::Gauge::ZeroMean ||
        (opts.gauge == SolveOptions::Gauge::Auto && degenerate);
    const bool drift_watch = mesh.c_is_zero() && problem.spectral_shift == 0.0;
    const double scale = hessian_scale(ops);

    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    if (opts.initial) {
        u = nodal_values(mesh, *opts.initial, 1e-9, "solve initial guess");
    }

    // Descent metric for merely continuous nonlinearities: the linear part
    // of the operator, regularized, factored once. The search direction uses
    // only (sub)gradients of the energy.
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> descent_metric;
    if (!use_newton) {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(ops.stiffness.nonZeros()) + n);
        for (int r = 0; r < ops.stiffness.outerSize(); ++r) {
            for (SparseRowMajor::InnerIterator it(ops.stiffness, r); it; ++it) {
                trips.emplace_back(it.row(), it.col(), it.value());
            }
        }
        const double tau = 1e-6 * scale;
        for (Eigen::Index i = 0; i < n; ++i) {
            trips.emplace_back(i, i, (tau - problem.spectral_shift) * ops.mass[i]);
        }
        Eigen::SparseMatrix<double> p(n, n);
        p.setFromTriplets(trips.begin(), trips.end());
        descent_metric.compute(p);
    }

    SolveOutcome out;
    std::deque<double> mean_history;

    const double c1 = 1e-4; // Armijo slope fraction
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        Eigen::VectorXd r = residual_dual(problem, ops, u);
        const double resid = dual_norm(ops, r);
        const double e0 = energy_nodal(problem, ops, u);
        out.energy_trace.push_back(e0);

        if (resid <= opts.tol) {
            out.status = SolveStatus::Converged;
            out.residual = resid;
            break;
        }

        if (drift_watch) {
            const double mean = ops.mass.dot(u) / mu_total;
            mean_history.push_back(mean);
            if (mean_history.size() > 6) mean_history.pop_front();
            if (std::abs(mean) > opts.drift_threshold && resid > 10.0 * opts.tol &&
                mean_history.size() >= 3) {
                bool monotone = true;
                for (std::size_t i = 1; i < mean_history.size(); ++i) {
                    if (std::abs(mean_history[i]) <= std::abs(mean_history[i - 1])) {
                        monotone = false;
                        break;
                    }
                }
                if (monotone) {
                    out.status = SolveStatus::DivergedAlongNullspace;
                    out.residual = resid;
                    out.drift_rate = (mean_history.back() - mean_history.front()) /
                                     static_cast<double>(mean_history.size() - 1);
                    break;
                }
            }
        }

        // Full steps that at least halve the residual are taken outright
        // (the quadratic regime, where energy differences drown in
        // roundoff); otherwise Armijo backtracking on the energy, demanding
        // a decrease that is distinguishable from roundoff.
        const double e_noise = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(e0));
        auto try_direction = [&](const Eigen::VectorXd& step) -> bool {
            const Eigen::VectorXd r1 = residual_dual(problem, ops, u + step);
            if (r1.allFinite() && dual_norm(ops, r1) <= 0.5 * resid) {
                const double e1 = energy_nodal(problem, ops, u + step);
                if (std::isfinite(e1) && e1 <= e0 + e_noise) {
                    u += step;
                    return true;
                }
            }
            const double slope = r.dot(step);
            if (slope >= 0.0) return false;
            double t = 1.0;
            for (int bt = 0; bt < 60; ++bt) {
                const double e1 = energy_nodal(problem, ops, u + t * step);
                if (std::isfinite(e1) && e1 <= e0 + c1 * t * slope && e0 - e1 > e_noise) {
                    u += t * step;
                    return true;
                }
                t *= 0.5;
            }
            return false;
        };

        bool moved = false;
        if (use_newton) {
            Eigen::VectorXd step;
            double tau = degenerate ? 1e-12 * scale : 0.0;
            for (int attempt = 0; attempt < 12; ++attempt) {
                Eigen::SparseMatrix<double> h = hessian(problem, ops, u, tau);
                Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(h);
                if (ldlt.info() == Eigen::Success) {
                    step = -ldlt.solve(r);
                    // One round of iterative refinement against the
                    // unregularized residual keeps tiny tau harmless.
                    if (tau > 0.0 && step.allFinite()) {
                        Eigen::VectorXd hr = hessian(problem, ops, u, 0.0) * step + r;
                        step -= ldlt.solve(hr);
                    }
                    if (step.allFinite()) break;
                }
                tau = std::max(tau * 100.0, 1e-12 * scale);
            }
            if (step.size() == r.size() && step.allFinite()) {
                moved = try_direction(step);
            }
        } else if (descent_metric.info() == Eigen::Success) {
            const Eigen::VectorXd step = -descent_metric.solve(r);
            if (step.allFinite()) moved = try_direction(step);
        }
        if (!moved) {
            const Eigen::VectorXd step = -r.cwiseQuotient(ops.mass);
            moved = try_direction(step);
            if (!moved) {
                // Diminishing subgradient step keeps the iteration alive for
                // merely continuous nonlinearities.
                u += (1.0 / (1.0 + static_cast<double>(it))) * step;
            }
        }
    }

    if (it == opts.max_iter) {
        out.status = SolveStatus::MaxIter;
        out.residual = dual_norm(ops, residual_dual(problem, ops, u));
    }
    out.iterations = it;

    if (zero_mean_gauge && out.status == SolveStatus::Converged) {
        const double mean = ops.mass.dot(u) / mu_total;
        u.array() -= mean;
        out.residual = dual_norm(ops, residual_dual(problem, ops, u));
    }

    out.solution = coupled_from_nodal(mesh, std::vector<double>(u.data(), u.data() + u.size()));
    return out;
}

} // namespace wentzell
