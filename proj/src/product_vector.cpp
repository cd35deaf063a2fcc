#include "wentzell/product_vector.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/kernels.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace wentzell {

ProductVector zero_vector(const Mesh& mesh) {
    ProductVector u;
    u.interior.assign(mesh.num_nodes(), 0.0);
    u.boundary.assign(mesh.num_boundary(), 0.0);
    u.coupled = true;
    return u;
}

ProductVector constant_vector(const Mesh& mesh, double value) {
    ProductVector u;
    u.interior.assign(mesh.num_nodes(), value);
    u.boundary.assign(mesh.num_boundary(), value);
    u.coupled = true;
    return u;
}

ProductVector coupled_from_nodal(const Mesh& mesh, std::vector<double> nodal) {
    if (nodal.size() != mesh.num_nodes()) {
        throw ShapeError("nodal vector size does not match mesh");
    }
    ProductVector u;
    u.boundary.resize(mesh.num_boundary());
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        u.boundary[k] = nodal[mesh.boundary_nodes[k]];
    }
    u.interior = std::move(nodal);
    u.coupled = true;
    return u;
}

double coupling_defect(const Mesh& mesh, const ProductVector& u) {
    require_shape(mesh, u, "coupling_defect");
    double m = 0.0;
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        m = std::max(m, std::abs(u.boundary[k] - u.interior[mesh.boundary_nodes[k]]));
    }
    return m;
}

void require_shape(const Mesh& mesh, const ProductVector& u, const char* what) {
    if (u.interior.size() != mesh.num_nodes() || u.boundary.size() != mesh.num_boundary()) {
        throw ShapeError(std::string(what) + ": vector shape does not match mesh");
    }
}

double x2_inner_product(const ProductVector& u, const ProductVector& v, const Mesh& mesh) {
    require_shape(mesh, u, "x2_inner_product");
    require_shape(mesh, v, "x2_inner_product");
    double acc = kernels::weighted_dot(mesh.quad_weight.data(), u.interior.data(),
                                       v.interior.data(), mesh.num_nodes());
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        acc += mesh.boundary_weight[k] / mesh.b_sample[k] * u.boundary[k] * v.boundary[k];
    }
    return acc;
}

double x2_norm(const ProductVector& u, const Mesh& mesh) {
    return std::sqrt(x2_inner_product(u, u, mesh));
}

double integral_mu(const ProductVector& f, const Mesh& mesh) {
    require_shape(mesh, f, "integral_mu");
    double acc = kernels::weighted_sum(mesh.quad_weight.data(), f.interior.data(), mesh.num_nodes());
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        acc += mesh.boundary_weight[k] / mesh.b_sample[k] * f.boundary[k];
    }
    return acc;
}

double average_mu(const ProductVector& f, const Mesh& mesh) {
    return integral_mu(f, mesh) / mesh.measure().total();
}

} // namespace wentzell
