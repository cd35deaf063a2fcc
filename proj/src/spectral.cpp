#include "wentzell/spectral.hpp"

#include "wentzell/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <random>

namespace wentzell {

namespace {

double stiffness_scale(const OperatorMatrices& ops) {
    double s = 0.0;
    for (int i = 0; i < ops.stiffness.rows(); ++i) {
        s = std::max(s, std::abs(ops.stiffness.coeff(i, i)) / ops.mass[i]);
    }
    return std::max(s, 1.0);
}

double pair_residual(const OperatorMatrices& ops, double lambda, const Eigen::VectorXd& z) {
    Eigen::VectorXd r(z.size());
    ops.apply_stiffness(z.data(), r.data());
    r -= lambda * ops.mass.cwiseProduct(z);
    return std::sqrt(r.cwiseAbs2().cwiseQuotient(ops.mass).sum());
}

struct PencilEigs {
    std::vector<double> values;
    std::vector<Eigen::VectorXd> vectors; // M-orthonormal
    int iterations = 0;
};

PencilEigs dense_eigs(const OperatorMatrices& ops, int k) {
    const Eigen::Index n = ops.mass.size();
    const Eigen::VectorXd d = ops.mass.cwiseSqrt();
    Eigen::MatrixXd b = ops.stiffness.toDense();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            b(i, j) /= d[i] * d[j];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("dense eigensolver failed", 0.0);
    }
    PencilEigs out;
    const int m = std::min<int>(k, static_cast<int>(n));
    for (int j = 0; j < m; ++j) {
        out.values.push_back(es.eigenvalues()[j]);
        out.vectors.push_back(es.eigenvectors().col(j).cwiseQuotient(d));
    }
    return out;
}

// Shift-and-invert subspace iteration on (K + eps M)^-1 M with Rayleigh-Ritz
// extraction in the M inner product.
PencilEigs sparse_eigs(const OperatorMatrices& ops, int k) {
    const Eigen::Index n = ops.mass.size();
    const int m = std::min<int>(k + 3, static_cast<int>(n));
    const double scale = stiffness_scale(ops);
    const double eps = 1e-6 * scale;

    Eigen::SparseMatrix<double> shifted(n, n);
    {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<std::size_t>(ops.stiffness.nonZeros()) + n);
        for (int r = 0; r < ops.stiffness.outerSize(); ++r) {
            for (SparseRowMajor::InnerIterator it(ops.stiffness, r); it; ++it) {
                trips.emplace_back(it.row(), it.col(), it.value());
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(i, i, eps * ops.mass[i]);
        shifted.setFromTriplets(trips.begin(), trips.end());
    }
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) {
        throw ConvergenceError("factorization of the shifted pencil failed", 0.0);
    }

    std::mt19937 rng(0x5eed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd x(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) x(i, j) = gauss(rng);
    }
    x.col(0).setOnes(); // the kernel candidate when c vanishes

    auto m_orthonormalize = [&](Eigen::MatrixXd& y) {
        for (int j = 0; j < y.cols(); ++j) {
            for (int i = 0; i < j; ++i) {
                const double proj = y.col(i).dot(ops.mass.cwiseProduct(y.col(j)));
                y.col(j) -= proj * y.col(i);
            }
            const double nrm = std::sqrt(y.col(j).dot(ops.mass.cwiseProduct(y.col(j))));
            y.col(j) /= nrm;
        }
    };
    m_orthonormalize(x);

    const double tol = 1e-11 * scale;
    PencilEigs out;
    Eigen::VectorXd ritz(m);
    int it = 0;
    for (; it < 600; ++it) {
        Eigen::MatrixXd y(n, m);
        for (int j = 0; j < m; ++j) {
            y.col(j) = ldlt.solve(ops.mass.cwiseProduct(x.col(j)));
        }
        m_orthonormalize(y);

        Eigen::MatrixXd ky(n, m);
        for (int j = 0; j < m; ++j) {
            ops.apply_stiffness(y.col(j).data(), ky.col(j).data());
        }
        Eigen::MatrixXd h = y.transpose() * ky;
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        x = y * es.eigenvectors();
        ritz = es.eigenvalues();

        bool done = true;
        for (int j = 0; j < std::min(k, m); ++j) {
            if (pair_residual(ops, ritz[j], x.col(j)) > tol) {
                done = false;
                break;
            }
        }
        if (done) break;
    }
    if (it == 600) {
        throw ConvergenceError("eigensolver did not converge",
                               pair_residual(ops, ritz[0], x.col(0)));
    }
    for (int j = 0; j < std::min(k, m); ++j) {
        out.values.push_back(ritz[j]);
        out.vectors.push_back(x.col(j));
    }
    out.iterations = it + 1;
    return out;
}

PencilEigs pencil_eigs(const OperatorMatrices& ops, int k) {
    if (ops.size() <= kDenseEigenThreshold) return dense_eigs(ops, k);
    return sparse_eigs(ops, k);
}

} // namespace

EigenResult smallest_eigenpair(const OperatorMatrices& ops) {
    PencilEigs eigs = pencil_eigs(ops, 1);

    Eigen::VectorXd z = eigs.vectors[0];
    // M-normalize and orient: integral against the combined measure positive.
    z /= std::sqrt(z.dot(ops.mass.cwiseProduct(z)));
    if (ops.mass.dot(z) < 0.0) z = -z;

    EigenResult out;
    out.lambda = eigs.values[0];
    out.iterations = eigs.iterations;
    out.residual = pair_residual(ops, out.lambda, z);
    out.vec = coupled_from_nodal(*ops.mesh, std::vector<double>(z.data(), z.data() + z.size()));
    return out;
}

std::vector<double> smallest_eigenvalues(const OperatorMatrices& ops, int k) {
    return pencil_eigs(ops, k).values;
}

int null_space_dim(const OperatorMatrices& ops, double tol) {
    const int probe = std::min<int>(6, static_cast<int>(ops.size()));
    const std::vector<double> vals = smallest_eigenvalues(ops, probe);
    int dim = 0;
    for (double v : vals) {
        if (v < tol) ++dim;
    }
    return dim;
}

FredholmProjection fredholm_project(const OperatorMatrices& ops, const EigenResult& z,
                                    const ProductVector& f) {
    const Mesh& mesh = *ops.mesh;
    const double znorm = x2_norm(z.vec, mesh);
    if (std::abs(znorm - 1.0) > 1e-8) {
        throw ShapeError("fredholm_project requires an M-normalized eigenvector");
    }
    FredholmProjection out;
    out.defect = x2_inner_product(f, z.vec, mesh);
    out.f_range = f;
    for (std::size_t i = 0; i < f.interior.size(); ++i) {
        out.f_range.interior[i] -= out.defect * z.vec.interior[i];
    }
    for (std::size_t i = 0; i < f.boundary.size(); ++i) {
        out.f_range.boundary[i] -= out.defect * z.vec.boundary[i];
    }
    out.f_range.coupled = f.coupled && z.vec.coupled;
    return out;
}

} // namespace wentzell
