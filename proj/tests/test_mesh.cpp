#include "wentzell/errors.hpp"
#include "wentzell/mesh.hpp"
#include "wentzell/product_vector.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wentzell;

TEST_SUITE("mesh") {

TEST_CASE("interval mesh basics") {
    auto mesh = build_interval_mesh(0.0, 1.0, 10, constant_coeff(1.0), constant_coeff(1.0));
    CHECK(mesh->num_nodes() == 11);
    CHECK(mesh->hx() == doctest::Approx(0.1));
    CHECK(mesh->boundary_nodes[0] == 0);
    CHECK(mesh->boundary_nodes[1] == 10);
    CHECK(mesh->node_x[0] == 0.0);
    CHECK(mesh->node_x[10] == 1.0);

    SUBCASE("unit measures on a 3-node grid") {
        auto m2 = build_interval_mesh(0.0, 1.0, 2, constant_coeff(1.0), constant_coeff(0.0));
        const Measure m = m2->measure();
        CHECK(m.lambda1 == doctest::Approx(1.0));
        CHECK(m.lambda2 == doctest::Approx(2.0));
    }
    SUBCASE("b-weighting of the boundary measure") {
        auto m3 = build_interval_mesh(0.0, 2.0, 4, constant_coeff(2.0), constant_coeff(0.0));
        CHECK(m3->measure().lambda2 == doctest::Approx(1.0)); // 1/2 + 1/2
        CHECK(m3->measure().lambda1 == doctest::Approx(2.0));
    }
}

TEST_CASE("invalid interval inputs") {
    CHECK_THROWS_AS(build_interval_mesh(1.0, 0.0, 4, constant_coeff(1.0), constant_coeff(0.0)),
                    ShapeError);
    CHECK_THROWS_AS(build_interval_mesh(0.0, 1.0, 1, constant_coeff(1.0), constant_coeff(0.0)),
                    ShapeError);
    CHECK_THROWS_AS(build_interval_mesh(0.0, 1.0, 4, constant_coeff(0.0), constant_coeff(0.0)),
                    CoefficientError);
    CHECK_THROWS_AS(build_interval_mesh(0.0, 1.0, 4, constant_coeff(1.0), constant_coeff(-1.0)),
                    CoefficientError);
}

TEST_CASE("rectangle mesh measures and chain") {
    auto mesh = build_rectangle_mesh(1.0, 1.0, 4, 4, constant_coeff(1.0), constant_coeff(0.0));
    const Measure m = mesh->measure();
    CHECK(m.lambda1 == doctest::Approx(1.0));
    CHECK(m.lambda2 == doctest::Approx(4.0)); // perimeter with b = 1

    SUBCASE("perimeter of a 2x1 box") {
        auto m2 = build_rectangle_mesh(2.0, 1.0, 4, 2, constant_coeff(1.0), constant_coeff(0.0));
        CHECK(m2->measure().lambda2 == doctest::Approx(6.0));
        CHECK(m2->measure().lambda1 == doctest::Approx(2.0));
    }

    SUBCASE("chain is a single closed cycle over all boundary nodes") {
        const std::size_t expected = 2 * (4 + 4);
        CHECK(mesh->num_boundary() == expected);
        CHECK(mesh->closed_chain);
        // every boundary node appears exactly once
        std::vector<int> seen(mesh->num_nodes(), 0);
        for (int n : mesh->boundary_nodes) seen[n]++;
        int on_boundary = 0;
        for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
            const double x = mesh->node_x[i], y = mesh->node_y[i];
            const bool bnd = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
            if (bnd) {
                ++on_boundary;
                CHECK(seen[i] == 1);
            } else {
                CHECK(seen[i] == 0);
            }
        }
        CHECK(static_cast<std::size_t>(on_boundary) == expected);
        // consecutive chain nodes are grid neighbors along the boundary
        for (std::size_t k = 0; k < expected; ++k) {
            const int a = mesh->boundary_nodes[k];
            const int b = mesh->boundary_nodes[(k + 1) % expected];
            const double dist = std::abs(mesh->node_x[a] - mesh->node_x[b]) +
                                std::abs(mesh->node_y[a] - mesh->node_y[b]);
            CHECK(dist == doctest::Approx(mesh->chain_segment[k]));
        }
    }

    SUBCASE("boundary weights and samples are positive") {
        for (std::size_t k = 0; k < mesh->num_boundary(); ++k) {
            CHECK(mesh->boundary_weight[k] > 0.0);
            CHECK(mesh->b_sample[k] > 0.0);
        }
    }

    SUBCASE("measures are exactly grid independent under refinement") {
        for (int n : {6, 12, 24}) {
            auto fine = build_rectangle_mesh(1.0, 1.0, n, n, constant_coeff(1.0), constant_coeff(0.0));
            CHECK(fine->measure().lambda1 == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(fine->measure().lambda2 == doctest::Approx(4.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("ground-state calibration samples are positive with corner masses") {
    auto mesh = build_rectangle_mesh(1.0, 1.0, 8, 8, constant_coeff(1.0), constant_coeff(0.0));
    const double q = 0.5 * square_ground_state_q_bound();
    calibrate_square_ground_state(*mesh, q);
    int corners = 0;
    for (std::size_t k = 0; k < mesh->num_boundary(); ++k) {
        CHECK(mesh->c_sample[k] > 0.0);
        if (mesh->c_atom[k] > 0.0) ++corners;
    }
    CHECK(corners == 4);
    CHECK(mesh->c_sample[0] == doctest::Approx(square_ground_state_c(q)));
}

TEST_CASE("product space inner product") {
    auto mesh = build_interval_mesh(0.0, 1.0, 10, constant_coeff(1.0), constant_coeff(1.0));
    const ProductVector one = constant_vector(*mesh, 1.0);
    const ProductVector zero = zero_vector(*mesh);

    CHECK(x2_inner_product(one, one, *mesh) == doctest::Approx(3.0)); // lambda1 + lambda2
    CHECK(x2_inner_product(one, zero, *mesh) == doctest::Approx(0.0));

    SUBCASE("orthogonal boundary parts") {
        ProductVector u = zero_vector(*mesh), v = zero_vector(*mesh);
        u.boundary = {1.0, 1.0};
        v.boundary = {1.0, -1.0};
        u.coupled = v.coupled = false;
        CHECK(x2_inner_product(u, v, *mesh) == doctest::Approx(0.0));
    }

    SUBCASE("symmetry, bilinearity, positivity on random vectors") {
        std::mt19937 rng(3);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 20; ++trial) {
            ProductVector u = zero_vector(*mesh), v = zero_vector(*mesh);
            for (double& x : u.interior) x = g(rng);
            for (double& x : u.boundary) x = g(rng);
            for (double& x : v.interior) x = g(rng);
            for (double& x : v.boundary) x = g(rng);
            u.coupled = v.coupled = false;
            const double uv = x2_inner_product(u, v, *mesh);
            const double vu = x2_inner_product(v, u, *mesh);
            CHECK(uv == doctest::Approx(vu).epsilon(1e-13));
            CHECK(x2_inner_product(u, u, *mesh) > 0.0);

            ProductVector w = u;
            for (std::size_t i = 0; i < w.interior.size(); ++i) w.interior[i] = 2 * u.interior[i] + v.interior[i];
            for (std::size_t i = 0; i < w.boundary.size(); ++i) w.boundary[i] = 2 * u.boundary[i] + v.boundary[i];
            const double lin = x2_inner_product(w, v, *mesh);
            CHECK(lin == doctest::Approx(2 * uv + x2_inner_product(v, v, *mesh)).epsilon(1e-12));
        }
    }

    SUBCASE("shape mismatch throws") {
        ProductVector bad;
        bad.interior.assign(3, 0.0);
        bad.boundary.assign(2, 0.0);
        CHECK_THROWS_AS(x2_inner_product(bad, one, *mesh), ShapeError);
    }
}

TEST_CASE("mu average") {
    auto mesh = build_interval_mesh(0.0, 1.0, 16, constant_coeff(1.0), constant_coeff(1.0));

    CHECK(average_mu(constant_vector(*mesh, 1.0), *mesh) == doctest::Approx(1.0));

    SUBCASE("boundary-only load on the unit interval") {
        ProductVector f = zero_vector(*mesh);
        f.boundary = {1.0, 2.0};
        f.coupled = false;
        CHECK(average_mu(f, *mesh) == doctest::Approx(1.0)); // (1 + 2) / 3
    }

    SUBCASE("odd bulk load about the midpoint") {
        ProductVector f = zero_vector(*mesh);
        for (std::size_t i = 0; i < mesh->num_nodes(); ++i) f.interior[i] = mesh->node_x[i] - 0.5;
        f.boundary = {0.0, 0.0};
        f.coupled = false;
        CHECK(average_mu(f, *mesh) == doctest::Approx(0.0).epsilon(1e-14));
    }

    SUBCASE("linearity and normalization on every mesh") {
        auto m2 = build_rectangle_mesh(2.0, 1.0, 6, 4, constant_coeff(2.0), constant_coeff(0.0));
        CHECK(average_mu(constant_vector(*m2, 1.0), *m2) == doctest::Approx(1.0));
        std::mt19937 rng(11);
        std::normal_distribution<double> g;
        ProductVector u = zero_vector(*m2), v = zero_vector(*m2);
        for (double& x : u.interior) x = g(rng);
        for (double& x : u.boundary) x = g(rng);
        for (double& x : v.interior) x = g(rng);
        for (double& x : v.boundary) x = g(rng);
        ProductVector w = u;
        for (std::size_t i = 0; i < w.interior.size(); ++i) w.interior[i] += 3.0 * v.interior[i];
        for (std::size_t i = 0; i < w.boundary.size(); ++i) w.boundary[i] += 3.0 * v.boundary[i];
        CHECK(average_mu(w, *m2) ==
              doctest::Approx(average_mu(u, *m2) + 3.0 * average_mu(v, *m2)).epsilon(1e-12));
    }
}

TEST_CASE("coupling helpers") {
    auto mesh = build_interval_mesh(0.0, 1.0, 5, constant_coeff(1.0), constant_coeff(0.0));
    std::vector<double> nodal(mesh->num_nodes());
    for (std::size_t i = 0; i < nodal.size(); ++i) nodal[i] = static_cast<double>(i);
    const ProductVector u = coupled_from_nodal(*mesh, nodal);
    CHECK(u.coupled);
    CHECK(u.boundary[0] == 0.0);
    CHECK(u.boundary[1] == 5.0);
    CHECK(coupling_defect(*mesh, u) == 0.0);

    ProductVector v = u;
    v.boundary[1] += 0.25;
    CHECK(coupling_defect(*mesh, v) == doctest::Approx(0.25));
}

} // TEST_SUITE
