#include "wentzell/errors.hpp"
#include "wentzell/spectral.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace wentzell;

namespace {

// One-dimensional calibrated problem: with c = 1 + tan(1/2) at both
// endpoints the smallest eigenvalue is 1 with eigenfunction cos(x - 1/2).
OperatorMatrices calibrated_interval(int n) {
    const double c_end = 1.0 + std::tan(0.5);
    auto mesh = build_interval_mesh(0.0, 1.0, n, constant_coeff(1.0), constant_coeff(c_end));
    return assemble(mesh, 0.0);
}

// Independent dense oracle for the generalized pencil, bypassing the
// production eigensolver path entirely.
std::vector<double> dense_oracle_eigs(const OperatorMatrices& ops, int k) {
    const Eigen::MatrixXd kd = ops.stiffness.toDense();
    const Eigen::VectorXd d = ops.mass.cwiseSqrt();
    Eigen::MatrixXd b = kd;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) /= d[i] * d[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    std::vector<double> out;
    for (int i = 0; i < k; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("calibrated interval ground state converges to the closed form") {
    double prev_err = 0.0;
    for (int n : {50, 100, 200, 400}) {
        const OperatorMatrices ops = calibrated_interval(n);
        const EigenResult eig = smallest_eigenpair(ops);
        const double err = std::abs(eig.lambda - 1.0);
        if (n == 400) CHECK(err <= 5e-5);
        if (prev_err > 0.0) {
            CHECK(std::log2(prev_err / err) == doctest::Approx(2.0).epsilon(0.15));
        }
        prev_err = err;

        // eigenvector against cos(x - 1/2) after least-squares scale matching
        const Mesh& mesh = *ops.mesh;
        double num = 0.0, den = 0.0;
        std::vector<double> exact(mesh.num_nodes());
        for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
            exact[i] = std::cos(mesh.node_x[i] - 0.5);
        }
        const ProductVector ze = coupled_from_nodal(mesh, exact);
        num = x2_inner_product(eig.vec, ze, mesh);
        den = x2_inner_product(eig.vec, eig.vec, mesh);
        const double s = num / den;
        double max_err = 0.0;
        for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
            max_err = std::max(max_err, std::abs(s * eig.vec.interior[i] - exact[i]));
        }
        if (n == 400) CHECK(max_err <= 1e-3);

        // positivity and sign convention
        CHECK(eig.lambda > 0.0);
        for (double v : eig.vec.interior) CHECK(v > 0.0);
        CHECK(integral_mu(eig.vec, mesh) > 0.0);
        CHECK(x2_norm(eig.vec, mesh) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("square ground state with tangential diffusion converges to 2") {
    const double q = 0.5 * square_ground_state_q_bound();
    double prev_err = 0.0;
    for (int n : {16, 32, 64}) {
        auto mesh = build_rectangle_mesh(1.0, 1.0, n, n, constant_coeff(1.0), constant_coeff(0.0));
        calibrate_square_ground_state(*mesh, q);
        const OperatorMatrices ops = assemble(MeshPtr(mesh), q);
        const EigenResult eig = smallest_eigenpair(ops);
        const double err = std::abs(eig.lambda - 2.0);
        if (prev_err > 0.0) CHECK(err < prev_err);
        prev_err = err;
        if (n == 32) {
            // the ground eigenvalue is simple: a clear gap to the next one
            const std::vector<double> two = smallest_eigenvalues(ops, 2);
            CHECK(two[1] - two[0] > 1e-2);
        }
        if (n == 64) {
            CHECK(err <= 2e-4);
            // eigenvector matches the product-cosine profile
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
                const double ze = std::cos(mesh->node_x[i] - 0.5) * std::cos(mesh->node_y[i] - 0.5);
                num += ze * eig.vec.interior[i];
                den += eig.vec.interior[i] * eig.vec.interior[i];
            }
            const double s = num / den;
            double max_err = 0.0;
            for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
                const double ze = std::cos(mesh->node_x[i] - 0.5) * std::cos(mesh->node_y[i] - 0.5);
                max_err = std::max(max_err, std::abs(s * eig.vec.interior[i] - ze));
            }
            CHECK(max_err <= 5e-3);
        }
    }
}

TEST_CASE("kernel of the c = 0 operator is the constants") {
    for (double q : {0.0, 0.3}) {
        SUBCASE("interval") {
            auto mesh = build_interval_mesh(0.0, 1.0, 40, constant_coeff(1.0), constant_coeff(0.0));
            const OperatorMatrices ops = assemble(mesh, q);
            CHECK(null_space_dim(ops, 1e-8) == 1);
            const EigenResult eig = smallest_eigenpair(ops);
            CHECK(std::abs(eig.lambda) <= 1e-12);
            // eigenvector is the normalized constant
            const double expect = 1.0 / std::sqrt(mesh->measure().total());
            for (double v : eig.vec.interior) CHECK(v == doctest::Approx(expect).epsilon(1e-8));
        }
        SUBCASE("square") {
            auto mesh = build_rectangle_mesh(1.0, 1.0, 10, 10, constant_coeff(1.0), constant_coeff(0.0));
            const OperatorMatrices ops = assemble(mesh, q);
            CHECK(null_space_dim(ops, 1e-8) == 1);
        }
    }
}

TEST_CASE("positive c on part of the boundary removes the kernel") {
    // c > 0 at one endpoint only
    auto mesh = build_interval_mesh(0.0, 1.0, 30, constant_coeff(1.0),
                                    [](double x, double, double) { return x < 0.5 ? 1.0 : 0.0; });
    const OperatorMatrices ops = assemble(mesh, 0.0);
    CHECK(null_space_dim(ops, 1e-8) == 0);

    // ground state stays positive and the eigenvalue strictly so
    const EigenResult eig = smallest_eigenpair(ops);
    CHECK(eig.lambda > 1e-8);
    for (double v : eig.vec.interior) CHECK(v > 0.0);

    // oracle comparison on the same matrices
    const std::vector<double> oracle = dense_oracle_eigs(ops, 3);
    CHECK(oracle[0] > 1e-8);
    const std::vector<double> mine = smallest_eigenvalues(ops, 3);
    for (int i = 0; i < 3; ++i) CHECK(mine[i] == doctest::Approx(oracle[i]).epsilon(1e-9));

    SUBCASE("positive c everywhere gives a positive simple ground eigenvalue") {
        const OperatorMatrices cal = calibrated_interval(100);
        const std::vector<double> eigs = smallest_eigenvalues(cal, 2);
        CHECK(eigs[0] > 0.0);
        CHECK(eigs[1] - eigs[0] > 1e-3); // simplicity gap
    }
}

TEST_CASE("eigen residual identity holds against random test vectors") {
    const OperatorMatrices ops = calibrated_interval(60);
    const EigenResult eig = smallest_eigenpair(ops);
    CHECK(eig.residual <= 1e-8);

    std::vector<double> kz(ops.size());
    ops.apply_stiffness(eig.vec.interior.data(), kz.data());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const double mz = ops.mass[static_cast<Eigen::Index>(i)] * eig.vec.interior[i];
        CHECK(kz[i] == doctest::Approx(eig.lambda * mz).epsilon(1e-7));
    }
}

TEST_CASE("fredholm projection") {
    auto mesh = build_interval_mesh(0.0, 1.0, 24, constant_coeff(1.0), constant_coeff(0.0));
    const OperatorMatrices ops = assemble(mesh, 0.0);
    const EigenResult z = smallest_eigenpair(ops);

    SUBCASE("constant load against the constant kernel") {
        const ProductVector f = constant_vector(*mesh, 1.0);
        const FredholmProjection proj = fredholm_project(ops, z, f);
        CHECK(proj.defect == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
        CHECK(std::abs(x2_inner_product(proj.f_range, z.vec, *mesh)) <= 1e-12);

        // idempotent
        const FredholmProjection again = fredholm_project(ops, z, proj.f_range);
        CHECK(std::abs(again.defect) <= 1e-12);
        for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
            CHECK(again.f_range.interior[i] == doctest::Approx(proj.f_range.interior[i]).epsilon(1e-12));
        }
    }

    SUBCASE("orthogonal load is untouched") {
        ProductVector f = zero_vector(*mesh);
        for (std::size_t i = 0; i < mesh->num_nodes(); ++i) f.interior[i] = mesh->node_x[i] - 0.5;
        f.boundary = {0.5, -0.5};
        f.coupled = false;
        const FredholmProjection proj = fredholm_project(ops, z, f);
        CHECK(std::abs(proj.defect) <= 1e-12);
    }

    SUBCASE("two-point boundary load against the positive-c ground state") {
        const OperatorMatrices cal = calibrated_interval(64);
        const EigenResult zc = smallest_eigenpair(cal);
        ProductVector f = zero_vector(*cal.mesh);
        f.boundary = {1.0, 2.0};
        f.coupled = false;
        const FredholmProjection proj = fredholm_project(cal, zc, f);
        // oracle: the ground state is positive at both endpoints, so the
        // defect 1*z(0) + 2*z(1) is strictly positive
        const double oracle = zc.vec.boundary[0] + 2.0 * zc.vec.boundary[1];
        CHECK(proj.defect == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(proj.defect > 0.5);
    }

    SUBCASE("unnormalized eigenvector is rejected") {
        EigenResult bad = z;
        for (double& v : bad.vec.interior) v *= 2.0;
        for (double& v : bad.vec.boundary) v *= 2.0;
        CHECK_THROWS_AS(fredholm_project(ops, bad, constant_vector(*mesh, 1.0)), ShapeError);
    }
}

TEST_CASE("sparse path agrees with the dense oracle") {
    // force the sparse path by exceeding the dense threshold
    const double c_end = 1.0 + std::tan(0.5);
    auto mesh = build_interval_mesh(0.0, 1.0, 2200, constant_coeff(1.0), constant_coeff(c_end));
    const OperatorMatrices ops = assemble(mesh, 0.0);
    REQUIRE(ops.size() > kDenseEigenThreshold);
    const EigenResult eig = smallest_eigenpair(ops);
    CHECK(eig.lambda == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(eig.iterations > 0);
}

} // TEST_SUITE
