#include "wentzell/mesh.hpp"

#include "wentzell/errors.hpp"

#include <cmath>
#include <string>

namespace wentzell {

bool Mesh::c_is_zero() const {
    for (double c : c_sample) {
        if (c != 0.0) return false;
    }
    for (double a : c_atom) {
        if (a != 0.0) return false;
    }
    return true;
}

Measure Mesh::measure() const {
    Measure m;
    for (double w : quad_weight) m.lambda1 += w;
    for (std::size_t j = 0; j < num_boundary(); ++j) {
        m.lambda2 += boundary_weight[j] / b_sample[j];
    }
    return m;
}

namespace {

void sample_boundary_coeffs(Mesh& mesh, const BoundaryFn& b_coeff, const BoundaryFn& c_coeff) {
    const std::size_t nb = mesh.num_boundary();
    mesh.b_sample.resize(nb);
    mesh.c_sample.resize(nb);
    mesh.c_atom.assign(nb, 0.0);
    for (std::size_t j = 0; j < nb; ++j) {
        const int node = mesh.boundary_nodes[j];
        const double x = mesh.node_x[node];
        const double y = mesh.dimension == 2 ? mesh.node_y[node] : 0.0;
        const double s = mesh.arc_coord[j];
        const double bv = b_coeff(x, y, s);
        const double cv = c_coeff(x, y, s);
        if (!(bv > 0.0)) {
            throw CoefficientError("b must be positive on the boundary, got " +
                                   std::to_string(bv) + " at s=" + std::to_string(s));
        }
        if (!(cv >= 0.0)) {
            throw CoefficientError("c must be nonnegative on the boundary, got " +
                                   std::to_string(cv) + " at s=" + std::to_string(s));
        }
        mesh.b_sample[j] = bv;
        mesh.c_sample[j] = cv;
    }
}

} // namespace

std::shared_ptr<Mesh> build_interval_mesh(double a, double b_end, int n,
                                          const BoundaryFn& b_coeff, const BoundaryFn& c_coeff) {
    if (!(a < b_end)) throw ShapeError("interval mesh requires a < b_end");
    if (n < 2) throw ShapeError("interval mesh requires n >= 2");

    auto mesh = std::make_shared<Mesh>();
    mesh->dimension = 1;
    mesh->x0 = a;
    mesh->x1 = b_end;
    mesh->nx = n;

    const double h = (b_end - a) / n;
    mesh->node_x.resize(n + 1);
    mesh->quad_weight.assign(n + 1, h);
    for (int i = 0; i <= n; ++i) mesh->node_x[i] = a + i * h;
    mesh->quad_weight.front() = h / 2;
    mesh->quad_weight.back() = h / 2;

    mesh->boundary_nodes = {0, n};
    mesh->boundary_weight = {1.0, 1.0};
    mesh->arc_coord = {0.0, 1.0};
    mesh->closed_chain = false;

    mesh->node_boundary_index.assign(n + 1, -1);
    mesh->node_boundary_index[0] = 0;
    mesh->node_boundary_index[n] = 1;

    sample_boundary_coeffs(*mesh, b_coeff, c_coeff);
    return mesh;
}

std::shared_ptr<Mesh> build_rectangle_mesh(double lx, double ly, int nx, int ny,
                                            const BoundaryFn& b_coeff, const BoundaryFn& c_coeff) {
    if (!(lx > 0.0) || !(ly > 0.0)) throw ShapeError("rectangle mesh requires positive extents");
    if (nx < 2 || ny < 2) throw ShapeError("rectangle mesh requires nx, ny >= 2");

    auto mesh = std::make_shared<Mesh>();
    mesh->dimension = 2;
    mesh->x0 = 0.0;
    mesh->x1 = lx;
    mesh->y0 = 0.0;
    mesh->y1 = ly;
    mesh->nx = nx;
    mesh->ny = ny;

    const double hx = lx / nx;
    const double hy = ly / ny;
    const int nnx = nx + 1;
    const int nny = ny + 1;
    const std::size_t n_nodes = static_cast<std::size_t>(nnx) * nny;

    mesh->node_x.resize(n_nodes);
    mesh->node_y.resize(n_nodes);
    mesh->quad_weight.resize(n_nodes);

    auto node_id = [nnx](int i, int j) { return j * nnx + i; };

    for (int j = 0; j < nny; ++j) {
        const double wy = (j == 0 || j == ny) ? hy / 2 : hy;
        for (int i = 0; i < nnx; ++i) {
            const double wx = (i == 0 || i == nx) ? hx / 2 : hx;
            const int id = node_id(i, j);
            mesh->node_x[id] = i * hx;
            mesh->node_y[id] = j * hy;
            mesh->quad_weight[id] = wx * wy;
        }
    }

    // Closed boundary chain: bottom left->right, right bottom->top,
    // top right->left, left top->bottom.
    std::vector<int> chain;
    std::vector<double> seg;
    chain.reserve(2 * (nx + ny));
    for (int i = 0; i < nx; ++i) { chain.push_back(node_id(i, 0)); seg.push_back(hx); }
    for (int j = 0; j < ny; ++j) { chain.push_back(node_id(nx, j)); seg.push_back(hy); }
    for (int i = nx; i > 0; --i) { chain.push_back(node_id(i, ny)); seg.push_back(hx); }
    for (int j = ny; j > 0; --j) { chain.push_back(node_id(0, j)); seg.push_back(hy); }

    const std::size_t nb = chain.size();
    mesh->boundary_nodes = chain;
    mesh->chain_segment = seg;
    mesh->closed_chain = true;
    mesh->boundary_weight.resize(nb);
    mesh->arc_coord.resize(nb);

    double s = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
        mesh->arc_coord[k] = s;
        s += seg[k];
        const double prev = seg[(k + nb - 1) % nb];
        mesh->boundary_weight[k] = 0.5 * (prev + seg[k]);
    }

    mesh->node_boundary_index.assign(n_nodes, -1);
    for (std::size_t k = 0; k < nb; ++k) {
        mesh->node_boundary_index[chain[k]] = static_cast<int>(k);
    }

    sample_boundary_coeffs(*mesh, b_coeff, c_coeff);
    return mesh;
}

double square_ground_state_c(double q) { return 2.0 + std::tan(0.5) - q; }

double square_ground_state_q_bound() { return 2.0 * std::cos(0.5) - std::tan(0.5); }

void calibrate_square_ground_state(Mesh& mesh, double q) {
    if (mesh.dimension != 2 || mesh.x1 - mesh.x0 != 1.0 || mesh.y1 - mesh.y0 != 1.0) {
        throw CoefficientError("ground-state calibration is defined on the unit square");
    }
    const double c_edge = square_ground_state_c(q);
    if (!(c_edge > 0.0)) {
        throw CoefficientError("q too large for a positive boundary coefficient");
    }
    const double atom = 2.0 * q * std::tan(0.5);
    for (std::size_t k = 0; k < mesh.num_boundary(); ++k) {
        const int node = mesh.boundary_nodes[k];
        const double x = mesh.node_x[node];
        const double y = mesh.node_y[node];
        mesh.c_sample[k] = c_edge;
        const bool corner = (x == mesh.x0 || x == mesh.x1) && (y == mesh.y0 || y == mesh.y1);
        mesh.c_atom[k] = corner ? atom : 0.0;
    }
}

} // namespace wentzell
