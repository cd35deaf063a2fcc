#include "wentzell/errors.hpp"
#include "wentzell/nonlinearity.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace wentzell;

namespace {

const double kPi = 4.0 * std::atan(1.0);

// alpha(s) = 2 s e^{s^2}, whose even envelope is e^{t^2} - 1; sampled densely
// enough that the interpolant tracks the doubling ratio.
Nonlinearity gaussian_growth_table(double s_max = 8.0, int n = 4001) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double s = -s_max + 2.0 * s_max * i / (n - 1);
        pts.emplace_back(s, 2.0 * s * std::exp(s * s));
    }
    return make_table(pts);
}

} // namespace

TEST_SUITE("nonlinearity") {

TEST_CASE("family construction and closed-form primitives") {
    SUBCASE("power(1,2)") {
        const Nonlinearity a = make_power(1.0, 2.0);
        CHECK(a(2.0) == doctest::Approx(4.0));
        CHECK(a(-2.0) == doctest::Approx(-4.0));
        CHECK(a.primitive(2.0) == doctest::Approx(8.0 / 3.0));
        CHECK(a.young(2.0) == doctest::Approx(8.0 / 3.0));
        CHECK(a.young(-2.0) == doctest::Approx(8.0 / 3.0));
    }
    SUBCASE("arctan") {
        const Nonlinearity a = make_arctan();
        CHECK(a(1.0) == doctest::Approx(kPi / 4.0));
        const double t = 1.7;
        CHECK(a.primitive(t) ==
              doctest::Approx(t * std::atan(t) - std::log(std::sqrt(1.0 + t * t))));
        CHECK(a.young(t) == doctest::Approx(a.primitive(t)));
    }
    SUBCASE("zero") {
        const Nonlinearity a = make_zero();
        CHECK(a(3.0) == 0.0);
        CHECK(a.primitive(3.0) == 0.0);
        CHECK(a.young(3.0) == 0.0);
        const RangeInterval r = a.range();
        CHECK(r.lo == 0.0);
        CHECK(r.hi == 0.0);
        CHECK(r.lo_attained);
        CHECK(r.hi_attained);
    }
    SUBCASE("primitive matches quadrature of alpha") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> ts(-3.0, 3.0);
        for (const Nonlinearity& a : {make_power(0.7, 1.5), make_arctan(), gaussian_growth_table(2.0, 801)}) {
            for (int trial = 0; trial < 10; ++trial) {
                const double t = ts(rng);
                const int n = 4000;
                double quad = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double u0 = t * i / n, u1 = t * (i + 1) / n;
                    quad += 0.5 * (a(u0) + a(u1)) * (u1 - u0);
                }
                CHECK(a.primitive(t) == doctest::Approx(quad).epsilon(1e-5));
            }
        }
    }
    SUBCASE("invalid constructions") {
        CHECK_THROWS_AS(make_power(-1.0, 2.0), CoefficientError);
        CHECK_THROWS_AS(make_power(1.0, 0.0), CoefficientError);
        CHECK_THROWS_AS(make_table({{0.0, 0.0}, {1.0, -1.0}}), CoefficientError); // decreasing
        CHECK_THROWS_AS(make_table({{-1.0, 0.5}, {1.0, 1.0}}), CoefficientError); // alpha(0) != 0
    }
}

TEST_CASE("structural invariants of built nonlinearities") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> span(-6.0, 6.0);
    for (const Nonlinearity& a :
         {make_zero(), make_power(1.0, 2.0), make_power(2.0, 1.0), make_arctan(),
          gaussian_growth_table(3.0, 1201)}) {
        CHECK(a(0.0) == doctest::Approx(0.0).epsilon(1e-14));
        for (int trial = 0; trial < 50; ++trial) {
            double s1 = span(rng), s2 = span(rng);
            if (s1 > s2) std::swap(s1, s2);
            CHECK(a(s1) <= a(s2) + 1e-12 * (1.0 + std::abs(a(s1))));
            const double t = span(rng);
            CHECK(a.primitive(t) >= -1e-12);           // L >= 0 under monotonicity
            CHECK(a.young(t) >= std::abs(a.primitive(t)) - 1e-12);
            CHECK(a.young(t) == doctest::Approx(a.young(-t)).epsilon(1e-13));
            // midpoint convexity of L
            const double m = 0.5 * (s1 + s2);
            const double bound = 0.5 * (a.primitive(s1) + a.primitive(s2));
            CHECK(a.primitive(m) <= bound + 1e-10 * (1.0 + std::abs(bound)));
        }
    }
}

TEST_CASE("ranges") {
    const RangeInterval arct = make_arctan().range();
    CHECK(arct.lo == doctest::Approx(-kPi / 2));
    CHECK(arct.hi == doctest::Approx(kPi / 2));
    CHECK_FALSE(arct.lo_attained);
    CHECK_FALSE(arct.hi_attained);

    const RangeInterval pow = make_power(1.0, 2.0).range();
    CHECK(std::isinf(pow.lo));
    CHECK(std::isinf(pow.hi));

    SUBCASE("flat-ended table attains its endpoints") {
        const Nonlinearity flat = make_table({{-2.0, -1.0}, {-1.0, -1.0}, {0.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}});
        const RangeInterval r = flat.range();
        CHECK(r.lo == -1.0);
        CHECK(r.hi == 1.0);
        CHECK(r.lo_attained);
        CHECK(r.hi_attained);
    }
    SUBCASE("steep-ended table reports unattained") {
        const Nonlinearity steep = make_table({{-1.0, -2.0}, {0.0, 0.0}, {1.0, 2.0}});
        const RangeInterval r = steep.range();
        CHECK_FALSE(r.lo_attained);
        CHECK_FALSE(r.hi_attained);
    }
}

TEST_CASE("interval combination") {
    const RangeInterval arct = make_arctan().range();
    const RangeInterval zero = make_zero().range();
    const RangeInterval full = make_power(1.0, 2.0).range();

    SUBCASE("adding a point interval") {
        const RangeInterval r = minkowski_combine(arct, 1.0, zero, 2.0);
        CHECK(r.lo == doctest::Approx(-kPi / 2));
        CHECK(r.hi == doctest::Approx(kPi / 2));
        CHECK_FALSE(r.lo_attained);
        CHECK_FALSE(r.hi_attained);
    }
    SUBCASE("absorbing the full line") {
        const RangeInterval r = minkowski_combine(full, 1.0, arct, 2.0);
        CHECK(std::isinf(r.lo));
        CHECK(std::isinf(r.hi));
    }
    SUBCASE("two bounded intervals against a dense sampling oracle") {
        const RangeInterval r = minkowski_combine(arct, 1.0, arct, 2.0);
        CHECK(r.lo == doctest::Approx(-3.0 * kPi / 2));
        CHECK(r.hi == doctest::Approx(3.0 * kPi / 2));
        // oracle: sample both functions over a huge window and form the sums
        const Nonlinearity a = make_arctan();
        double lo = 0, hi = 0;
        for (double s1 = -1e6; s1 <= 1e6; s1 += 4e4) {
            for (double s2 = -1e6; s2 <= 1e6; s2 += 4e4) {
                const double v = 1.0 * a(s1) + 2.0 * a(s2);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        CHECK(lo > r.lo);
        CHECK(hi < r.hi);
        CHECK(lo == doctest::Approx(r.lo).epsilon(1e-4));
        CHECK(hi == doctest::Approx(r.hi).epsilon(1e-4));
    }
    SUBCASE("zero scale contributes an attained point") {
        const RangeInterval r = minkowski_combine(full, 0.0, arct, 1.0);
        CHECK(r.lo == doctest::Approx(-kPi / 2));
        CHECK_FALSE(r.lo_attained);
    }
    SUBCASE("monotone in the inputs") {
        const RangeInterval small = minkowski_combine(arct, 1.0, zero, 1.0);
        const RangeInterval grown = minkowski_combine(arct, 1.0, arct, 1.0);
        CHECK(grown.lo <= small.lo);
        CHECK(grown.hi >= small.hi);
    }
    SUBCASE("negative scale rejected") {
        CHECK_THROWS_AS(minkowski_combine(arct, -1.0, zero, 1.0), CoefficientError);
    }
}

TEST_CASE("doubling condition") {
    SUBCASE("power families: empirical constant is 2^(p+1)") {
        for (double p : {1.0, 2.0, 3.0}) {
            const Delta2Report rep = delta2_check(make_power(1.0, p));
            CHECK(rep.passes);
            const double expected = std::pow(2.0, p + 1.0);
            CHECK(rep.empirical_c == doctest::Approx(expected).epsilon(0.01));
        }
    }
    SUBCASE("arctan passes") {
        const Delta2Report rep = delta2_check(make_arctan());
        CHECK(rep.passes);
        CHECK(rep.empirical_c < 4.0);
    }
    SUBCASE("zero passes trivially") {
        CHECK(delta2_check(make_zero()).passes);
    }
    SUBCASE("e^(t^2)-type growth fails with an unbounded ratio") {
        const Delta2Report rep = delta2_check(gaussian_growth_table(), 4.0, 32);
        CHECK_FALSE(rep.passes);
        CHECK(rep.empirical_c > 1e4);
        CHECK(rep.witness_t > 0.0);
    }
    SUBCASE("a plateau through the origin does not divide by zero") {
        // alpha vanishes on [-2, 2] and rises linearly outside; the envelope
        // is zero on part of the sampled window and the doubling condition
        // holds from the onset onwards
        const Nonlinearity plateau =
            make_table({{-6.0, -4.0}, {-2.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}, {6.0, 4.0}});
        const Delta2Report rep = delta2_check(plateau, 3.0, 32);
        CHECK(rep.passes);
        CHECK(rep.onset_t > 2.0);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(delta2_check(make_arctan(), 0.5, 32), CoefficientError);
        CHECK_THROWS_AS(delta2_check(make_arctan(), 10.0, 8), CoefficientError);
        CHECK_THROWS_AS(growth_check(make_arctan(), 0, 0.0), CoefficientError);
    }
}

TEST_CASE("young gap") {
    SUBCASE("linear family is self-conjugate") {
        const Nonlinearity a = make_power(1.0, 1.0);
        CHECK(young_gap(a, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("gap vanishes at the equality configuration") {
        const Nonlinearity a = make_arctan();
        CHECK(young_gap(a, std::atan(1.0), 1.0) == doctest::Approx(0.0).epsilon(1e-8));
        CHECK(young_gap(a, 0.0, 0.0) == doctest::Approx(0.0));
    }
    SUBCASE("nonnegative on a grid, zero along s = alpha(t)") {
        for (const Nonlinearity& a : {make_power(1.0, 2.0), make_arctan()}) {
            for (int i = 0; i < 100; ++i) {
                const double t = -5.0 + 10.0 * i / 99.0;
                for (int j = 0; j < 100; ++j) {
                    const double s = -1.4 + 2.8 * j / 99.0;
                    const double gap = young_gap(a, s, t);
                    CHECK(gap >= -1e-9);
                }
                CHECK(std::abs(young_gap(a, a(t), std::abs(t))) <= 1e-6);
            }
        }
    }
}

TEST_CASE("growth classification") {
    SUBCASE("cubic growth is admissible in dimension 3") {
        const GrowthReport rep = growth_check(make_power(1.0, 2.0), 3, 0.0);
        CHECK(rep.cls == GrowthClass::GC1);
        CHECK(rep.fitted_r == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("bounded nonlinearity passes any dimension") {
        for (int dim : {1, 2, 3, 4}) {
            CHECK(growth_check(make_arctan(), dim, 0.0).cls != GrowthClass::None);
        }
    }
    SUBCASE("quintic growth fails in dimension 3") {
        const GrowthReport rep = growth_check(make_power(1.0, 5.0), 3, 0.0);
        CHECK(rep.cls == GrowthClass::None);
        CHECK(rep.fitted_r == doctest::Approx(5.0).epsilon(0.05));
    }
    SUBCASE("dimension 1 always passes") {
        CHECK(growth_check(make_power(1.0, 5.0), 1, 0.0).cls == GrowthClass::GC1);
    }
    SUBCASE("q > 0 tightens the admissible exponent") {
        CHECK(growth_check(make_power(1.0, 2.0), 3, 1.0).cls == GrowthClass::GC2);
        CHECK(growth_check(make_power(1.0, 3.0), 4, 1.0).cls == GrowthClass::None);
    }
}

} // TEST_SUITE
