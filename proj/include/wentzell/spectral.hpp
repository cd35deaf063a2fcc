#pragma once

#include "wentzell/operators.hpp"
#include "wentzell/product_vector.hpp"

#include <vector>

namespace wentzell {

// One eigenpair of K Z = lambda M Z, M-normalized and sign-oriented so that
// the integral of Z against the combined measure is positive.
struct EigenResult {
    double lambda = 0.0;
    ProductVector vec;      // coupled
    double residual = 0.0;  // ||K Z - lambda M Z|| in the M^-1 dual norm
    int iterations = 0;
};

// Smallest generalized eigenpair. Dense solve below a size threshold,
// shift-and-invert subspace iteration above it.
EigenResult smallest_eigenpair(const OperatorMatrices& ops);

// The k smallest generalized eigenvalues (ascending).
std::vector<double> smallest_eigenvalues(const OperatorMatrices& ops, int k);

// Number of generalized eigenvalues below tol.
int null_space_dim(const OperatorMatrices& ops, double tol);

struct FredholmProjection {
    ProductVector f_range;
    double defect = 0.0; // <F, Z> in the product-space inner product
};

// Splits F into its component along the normalized kernel vector Z and the
// orthogonal remainder; <f_range, Z> vanishes to machine precision.
FredholmProjection fredholm_project(const OperatorMatrices& ops, const EigenResult& z,
                                    const ProductVector& f);

// Size at and below which the dense eigensolver is used (also the oracle
// path for small problems).
inline constexpr std::size_t kDenseEigenThreshold = 2000;

} // namespace wentzell
