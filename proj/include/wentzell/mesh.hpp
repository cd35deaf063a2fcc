#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace wentzell {

// A coefficient sampled on the boundary. Receives the node position (x, y)
// and the arc-length coordinate s along the boundary.
using BoundaryFn = std::function<double(double x, double y, double s)>;

inline BoundaryFn constant_coeff(double v) {
    return [v](double, double, double) { return v; };
}

struct Measure {
    double lambda1 = 0.0; // volume of the bulk, integral of dx
    double lambda2 = 0.0; // b-weighted boundary mass, integral of dS/b
    double total() const { return lambda1 + lambda2; }
};

// Uniform tensor mesh of an interval or an axis-aligned rectangle.
//
// All grid nodes (including boundary nodes) carry a bulk trapezoidal
// quadrature weight; boundary nodes additionally carry a surface weight and
// samples of the boundary coefficients b > 0 and c >= 0. In two dimensions
// the boundary nodes form one closed chain traversed counterclockwise
// starting at the lower-left corner; in one dimension the boundary is the
// two endpoints. The c coefficient may carry point masses on top of its
// density samples (c_atom); they enter the boundary mass term of the
// operator as-is, without a quadrature weight.
struct Mesh {
    int dimension = 1;

    // extents and resolution
    double x0 = 0.0, x1 = 1.0;
    double y0 = 0.0, y1 = 1.0;
    int nx = 0, ny = 0;

    std::vector<double> node_x;
    std::vector<double> node_y;       // empty in 1d
    std::vector<double> quad_weight;  // bulk quadrature weight per node

    std::vector<int> boundary_nodes;      // node index per boundary node, chain order
    std::vector<double> boundary_weight;  // dS weight per boundary node
    std::vector<double> arc_coord;        // arc-length coordinate per boundary node
    std::vector<double> b_sample;         // b at boundary nodes
    std::vector<double> c_sample;         // c at boundary nodes
    std::vector<double> c_atom;           // point masses in the c measure
    std::vector<double> chain_segment;    // 2d: length of chain segment k -> k+1 (mod size)
    bool closed_chain = false;

    std::vector<int> node_boundary_index; // -1 for interior nodes

    std::size_t num_nodes() const { return node_x.size(); }
    std::size_t num_boundary() const { return boundary_nodes.size(); }

    double hx() const { return (x1 - x0) / nx; }
    double hy() const { return dimension == 2 ? (y1 - y0) / ny : 0.0; }

    bool c_is_zero() const;
    Measure measure() const;
};

// Meshes are immutable once handed out; builders return a mutable pointer so
// callers can finish coefficient setup before freezing them behind MeshPtr.
using MeshPtr = std::shared_ptr<const Mesh>;

// Uniform grid on (a, b_end) with n cells. The boundary is the two endpoints,
// each with unit surface weight.
std::shared_ptr<Mesh> build_interval_mesh(double a, double b_end, int n,
                                          const BoundaryFn& b_coeff, const BoundaryFn& c_coeff);

// Tensor grid on (0, lx) x (0, ly) with nx x ny cells. Boundary nodes are
// ordered as a single closed chain with trapezoidal dS weights; the four
// corner nodes are shared between adjacent edges and carry the averaged
// spacing.
std::shared_ptr<Mesh> build_rectangle_mesh(double lx, double ly, int nx, int ny,
                                           const BoundaryFn& b_coeff, const BoundaryFn& c_coeff);

// Calibrates c on the boundary of the unit square so that
// z(x,y) = cos(x-1/2) cos(y-1/2) is the positive ground state of the
// assembled operator with eigenvalue 2 for the given q: the edge density is
// the constant 2 + tan(1/2) - q and each corner receives a point mass of
// 2 q tan(1/2) that absorbs the kink of the tangential derivative of z at
// the corners of the closed chain. Requires a mesh built on (0,1)^2 and
// q < 2 + tan(1/2) so that c stays positive.
void calibrate_square_ground_state(Mesh& mesh, double q);

// Edge density used by calibrate_square_ground_state.
double square_ground_state_c(double q);

// Safe upper bound used by the bundled presets when sweeping q.
double square_ground_state_q_bound();

} // namespace wentzell
