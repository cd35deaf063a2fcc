#pragma once

#include "wentzell/mesh.hpp"
#include "wentzell/nonlinearity.hpp"
#include "wentzell/product_vector.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <iosfwd>

namespace wentzell {

using SparseRowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int32_t>;

// Discrete bilinear form and product-space inner product.
//
// `stiffness` is the coupled matrix: one unknown per grid node, with the
// boundary unknowns shared between the bulk gradient stencil and the
// boundary terms (c-mass with optional point masses, and q times the
// tangential stiffness along the boundary chain). `stiffness_bulk` and
// `stiffness_boundary` are the two blocks separately so the form can also be
// evaluated on uncoupled pairs. The mass is diagonal: bulk trapezoid weights
// plus the b-weighted surface weights folded onto boundary nodes.
struct OperatorMatrices {
    MeshPtr mesh;
    double q = 0.0;

    SparseRowMajor stiffness;          // N x N, coupled
    SparseRowMajor stiffness_bulk;     // N x N, gradient part
    SparseRowMajor stiffness_boundary; // B x B, c-mass + q-chain

    Eigen::VectorXd mass;          // N, coupled diagonal
    Eigen::VectorXd mass_bulk;     // N, bulk weights
    Eigen::VectorXd mass_boundary; // B, surface weight / b

    std::uint64_t coefficient_hash = 0;

    std::size_t size() const { return static_cast<std::size_t>(mass.size()); }

    // y = stiffness * x through the kernel layer.
    void apply_stiffness(const double* x, double* y) const;
};

struct WentzellProblem {
    MeshPtr mesh;
    double q = 0.0;
    Nonlinearity alpha1; // bulk nonlinearity
    Nonlinearity alpha2; // boundary nonlinearity
    ProductVector load;  // F = (f, g)
    // Optional spectral shift: the operator acts as K - shift * M. Used for
    // problems posed relative to the smallest eigenvalue of the linear part.
    double spectral_shift = 0.0;
};

OperatorMatrices assemble(MeshPtr mesh, double q);

// rho(U, V); defined for uncoupled pairs through the block form.
double bilinear_rho(const OperatorMatrices& ops, const ProductVector& u, const ProductVector& v);

// Dual-vector residual of the semilinear problem at a coupled state:
// r = K u - shift M u + M (alpha1(u); alpha2(tr u)) - M F.
Eigen::VectorXd residual_dual(const WentzellProblem& problem, const OperatorMatrices& ops,
                              const Eigen::VectorXd& nodal);

// M^-1 dual norm of the residual; requires a coupled vector.
double weak_residual(const WentzellProblem& problem, const OperatorMatrices& ops,
                     const ProductVector& u);

// Loads the coupled dual vector of F (mass-weighted, boundary part folded in).
Eigen::VectorXd load_dual(const OperatorMatrices& ops, const ProductVector& f);

Eigen::VectorXd nodal_values(const Mesh& mesh, const ProductVector& u, double coupling_tol,
                             const char* what);

// Coordinate-format text export of the coupled stiffness ("row col value"
// per line) for cross-checking with external tools.
void export_coo(const SparseRowMajor& m, std::ostream& os);

} // namespace wentzell
