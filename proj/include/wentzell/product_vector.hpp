#pragma once

#include "wentzell/mesh.hpp"

#include <vector>

namespace wentzell {

// An element U = (u_interior, u_boundary) of the discrete product space: one
// value per grid node plus an independent value per boundary node. The two
// components need not be related; `coupled` records that the boundary
// component is the trace (restriction) of the interior one.
struct ProductVector {
    std::vector<double> interior;
    std::vector<double> boundary;
    bool coupled = false;
};

ProductVector zero_vector(const Mesh& mesh);
ProductVector constant_vector(const Mesh& mesh, double value);

// Builds a coupled vector from nodal values; the boundary component is the
// restriction to the boundary nodes.
ProductVector coupled_from_nodal(const Mesh& mesh, std::vector<double> nodal);

// Largest deviation |u_boundary - trace(u_interior)|.
double coupling_defect(const Mesh& mesh, const ProductVector& u);

void require_shape(const Mesh& mesh, const ProductVector& u, const char* what);

// Weighted product-space inner product: bulk trapezoid weights plus
// b-weighted boundary weights. Symmetric, bilinear, positive definite.
double x2_inner_product(const ProductVector& u, const ProductVector& v, const Mesh& mesh);

double x2_norm(const ProductVector& u, const Mesh& mesh);

// Mean of F against the combined measure: (sum f dx + sum g dS/b) / (l1+l2).
double average_mu(const ProductVector& f, const Mesh& mesh);

// Integral of F against the combined measure (the aggregate load when F is
// the right-hand side).
double integral_mu(const ProductVector& f, const Mesh& mesh);

} // namespace wentzell
