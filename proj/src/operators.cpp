#include "wentzell/operators.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/kernels.hpp"

#include <cmath>
#include <cstring>
#include <ostream>
#include <vector>

namespace wentzell {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t hash_coefficients(const Mesh& mesh, double q) {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(h, &q, sizeof q);
    h = fnv1a(h, mesh.b_sample.data(), mesh.b_sample.size() * sizeof(double));
    h = fnv1a(h, mesh.c_sample.data(), mesh.c_sample.size() * sizeof(double));
    h = fnv1a(h, mesh.c_atom.data(), mesh.c_atom.size() * sizeof(double));
    return h;
}

using Trip = Eigen::Triplet<double, std::int32_t>;

void add_edge(std::vector<Trip>& trips, int a, int b, double k) {
    trips.emplace_back(a, a, k);
    trips.emplace_back(b, b, k);
    trips.emplace_back(a, b, -k);
    trips.emplace_back(b, a, -k);
}

} // namespace

void OperatorMatrices::apply_stiffness(const double* x, double* y) const {
    kernels::csr_matvec(stiffness.outerIndexPtr(), stiffness.innerIndexPtr(),
                        stiffness.valuePtr(), static_cast<std::int32_t>(stiffness.rows()), x, y);
}

OperatorMatrices assemble(MeshPtr mesh, double q) {
    if (!(q >= 0.0)) throw CoefficientError("assemble requires q >= 0");

    OperatorMatrices ops;
    ops.mesh = mesh;
    ops.q = q;
    ops.coefficient_hash = hash_coefficients(*mesh, q);

    const int n_nodes = static_cast<int>(mesh->num_nodes());
    const int n_bnd = static_cast<int>(mesh->num_boundary());

    std::vector<Trip> bulk;
    if (mesh->dimension == 1) {
        const double h = mesh->hx();
        bulk.reserve(4 * mesh->nx);
        for (int i = 0; i < mesh->nx; ++i) add_edge(bulk, i, i + 1, 1.0 / h);
    } else {
        const double hx = mesh->hx();
        const double hy = mesh->hy();
        const int nnx = mesh->nx + 1;
        const int nny = mesh->ny + 1;
        bulk.reserve(static_cast<std::size_t>(8) * nnx * nny);
        auto id = [nnx](int i, int j) { return j * nnx + i; };
        for (int j = 0; j < nny; ++j) {
            const double wy = (j == 0 || j == mesh->ny) ? hy / 2 : hy;
            for (int i = 0; i < mesh->nx; ++i) {
                add_edge(bulk, id(i, j), id(i + 1, j), wy / hx);
            }
        }
        for (int i = 0; i < nnx; ++i) {
            const double wx = (i == 0 || i == mesh->nx) ? hx / 2 : hx;
            for (int j = 0; j < mesh->ny; ++j) {
                add_edge(bulk, id(i, j), id(i, j + 1), wx / hy);
            }
        }
    }

    // Boundary block in boundary-node numbering: c-mass (with point masses)
    // plus q times the tangential stiffness along the chain.
    std::vector<Trip> bnd;
    for (int k = 0; k < n_bnd; ++k) {
        const double cm = (mesh->c_sample[k] * mesh->boundary_weight[k] + mesh->c_atom[k]) /
                          mesh->b_sample[k];
        if (cm != 0.0) bnd.emplace_back(k, k, cm);
    }
    if (mesh->closed_chain && q > 0.0) {
        for (int k = 0; k < n_bnd; ++k) {
            const int k2 = (k + 1) % n_bnd;
            add_edge(bnd, k, k2, q / mesh->chain_segment[k]);
        }
    }

    ops.stiffness_bulk.resize(n_nodes, n_nodes);
    ops.stiffness_bulk.setFromTriplets(bulk.begin(), bulk.end());
    ops.stiffness_bulk.makeCompressed();

    ops.stiffness_boundary.resize(n_bnd, n_bnd);
    ops.stiffness_boundary.setFromTriplets(bnd.begin(), bnd.end());
    ops.stiffness_boundary.makeCompressed();

    // Fold the boundary block onto the shared boundary unknowns.
    std::vector<Trip> all = bulk;
    for (const Trip& t : bnd) {
        all.emplace_back(mesh->boundary_nodes[t.row()], mesh->boundary_nodes[t.col()], t.value());
    }
    ops.stiffness.resize(n_nodes, n_nodes);
    ops.stiffness.setFromTriplets(all.begin(), all.end());
    ops.stiffness.makeCompressed();

    ops.mass_bulk = Eigen::Map<const Eigen::VectorXd>(mesh->quad_weight.data(), n_nodes);
    ops.mass_boundary.resize(n_bnd);
    ops.mass = ops.mass_bulk;
    for (int k = 0; k < n_bnd; ++k) {
        ops.mass_boundary[k] = mesh->boundary_weight[k] / mesh->b_sample[k];
        ops.mass[mesh->boundary_nodes[k]] += ops.mass_boundary[k];
    }
    return ops;
}

double bilinear_rho(const OperatorMatrices& ops, const ProductVector& u, const ProductVector& v) {
    const Mesh& mesh = *ops.mesh;
    require_shape(mesh, u, "bilinear_rho");
    require_shape(mesh, v, "bilinear_rho");

    Eigen::Map<const Eigen::VectorXd> ui(u.interior.data(), u.interior.size());
    Eigen::Map<const Eigen::VectorXd> vi(v.interior.data(), v.interior.size());
    double acc = ui.dot(ops.stiffness_bulk * vi);

    if (mesh.num_boundary() > 0) {
        Eigen::Map<const Eigen::VectorXd> ub(u.boundary.data(), u.boundary.size());
        Eigen::Map<const Eigen::VectorXd> vb(v.boundary.data(), v.boundary.size());
        acc += ub.dot(ops.stiffness_boundary * vb);
    }
    return acc;
}

Eigen::VectorXd nodal_values(const Mesh& mesh, const ProductVector& u, double coupling_tol,
                             const char* what) {
    require_shape(mesh, u, what);
    double scale = 1.0;
    for (double v : u.interior) scale = std::max(scale, std::abs(v));
    if (coupling_defect(mesh, u) > coupling_tol * scale) {
        throw UncoupledError(std::string(what) + ": boundary component is not the trace of the interior");
    }
    return Eigen::Map<const Eigen::VectorXd>(u.interior.data(), u.interior.size());
}

Eigen::VectorXd load_dual(const OperatorMatrices& ops, const ProductVector& f) {
    const Mesh& mesh = *ops.mesh;
    require_shape(mesh, f, "load_dual");
    Eigen::VectorXd d =
        ops.mass_bulk.cwiseProduct(Eigen::Map<const Eigen::VectorXd>(f.interior.data(), f.interior.size()));
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        d[mesh.boundary_nodes[k]] += ops.mass_boundary[static_cast<Eigen::Index>(k)] * f.boundary[k];
    }
    return d;
}

Eigen::VectorXd residual_dual(const WentzellProblem& problem, const OperatorMatrices& ops,
                              const Eigen::VectorXd& nodal) {
    const Mesh& mesh = *ops.mesh;
    Eigen::VectorXd r(nodal.size());
    ops.apply_stiffness(nodal.data(), r.data());
    if (problem.spectral_shift != 0.0) {
        r.noalias() -= problem.spectral_shift * ops.mass.cwiseProduct(nodal);
    }
    for (Eigen::Index i = 0; i < nodal.size(); ++i) {
        r[i] += ops.mass_bulk[i] * problem.alpha1(nodal[i]);
    }
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        const int node = mesh.boundary_nodes[k];
        r[node] += ops.mass_boundary[static_cast<Eigen::Index>(k)] * problem.alpha2(nodal[node]);
    }
    r -= load_dual(ops, problem.load);
    return r;
}

double weak_residual(const WentzellProblem& problem, const OperatorMatrices& ops,
                     const ProductVector& u) {
    const Eigen::VectorXd nodal = nodal_values(*ops.mesh, u, 1e-10, "weak_residual");
    const Eigen::VectorXd r = residual_dual(problem, ops, nodal);
    return std::sqrt(r.cwiseAbs2().cwiseQuotient(ops.mass).sum());
}

void export_coo(const SparseRowMajor& m, std::ostream& os) {
    for (int r = 0; r < m.outerSize(); ++r) {
        for (SparseRowMajor::InnerIterator it(m, r); it; ++it) {
            os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
        }
    }
}

} // namespace wentzell
