#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace wentzell {

enum class AlphaFamily { Zero, Power, Arctan, Table };

// Closed interval data with extended-real endpoints. Attained flags record
// whether the endpoint value is taken by the underlying function.
struct RangeInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_attained = false;
    bool hi_attained = false;

    static constexpr double inf = std::numeric_limits<double>::infinity();

    bool contains_closure(double t) const { return t >= lo && t <= hi; }
};

// A continuous nondecreasing function alpha with alpha(0) = 0, together with
// its primitive L(t) = integral of alpha from 0 to t and the even convex
// envelope Lambda(t) = max(L(t), L(-t)). The conjugate Lambda~ is evaluated
// by a discrete Legendre transform, never by inverting alpha.
class Nonlinearity {
public:
    double operator()(double s) const;  // alpha(s)
    double primitive(double t) const;   // L(t)
    double young(double t) const;       // Lambda(t)
    double conjugate(double s) const;   // Lambda~(s), +inf outside the range of alpha
    double derivative(double s) const;  // slope of alpha (one-sided at table breakpoints)

    AlphaFamily family() const { return family_; }
    bool is_zero() const { return family_ == AlphaFamily::Zero; }
    // Smooth enough for Newton steps.
    bool smooth() const;

    double power_r() const { return r_; }
    double power_p() const { return p_; }

    RangeInterval range() const;

    // Largest |s| covered by a sample table; 0 for closed-form families.
    double sample_span() const;

    friend Nonlinearity make_zero();
    friend Nonlinearity make_power(double r, double p);
    friend Nonlinearity make_arctan();
    friend Nonlinearity make_table(std::vector<std::pair<double, double>> points);

private:
    AlphaFamily family_ = AlphaFamily::Zero;
    double r_ = 0.0, p_ = 0.0;
    std::vector<double> ts_;      // table abscissae (strictly increasing)
    std::vector<double> as_;      // table values (nondecreasing)
    std::vector<double> prim_;    // primitive at the table abscissae, anchored at 0

    double table_alpha(double s) const;
    double table_primitive(double t) const;
};

Nonlinearity make_zero();
Nonlinearity make_power(double r, double p); // alpha(s) = r |s|^(p-1) s, r > 0, p > 0
Nonlinearity make_arctan();
// Piecewise-linear alpha through the given sample points; the table must be
// nondecreasing and pass through (0, 0). Outside the sampled window alpha is
// extended by its endpoint values.
Nonlinearity make_table(std::vector<std::pair<double, double>> points);

RangeInterval range_of(const Nonlinearity& alpha);

// Endpoint-wise scaled interval sum l1*i1 + l2*i2 with extended-real
// arithmetic. A sum endpoint is attained iff both contributions are attained
// (a zero scale contributes the attained point {0}).
RangeInterval minkowski_combine(const RangeInterval& i1, double l1,
                                const RangeInterval& i2, double l2);

struct Delta2Report {
    bool passes = false;
    double empirical_c = 1.0;  // max sampled ratio Lambda(2t)/Lambda(t)
    double onset_t = 1.0;      // first sampled t with Lambda(t) > 0
    double witness_t = 0.0;    // first violating t when the check fails
};

// Samples the doubling ratio of Lambda on a geometric grid in [1, t_max] and
// rejects an unbounded monotone blow-up across the top decade. A sampled
// test, not a proof; the power and zero families are classified analytically.
// t_max = 0 picks 100 for closed-form families and half the sampled span for
// tables (beyond which the constant extension would flatten the ratio).
Delta2Report delta2_check(const Nonlinearity& alpha, double t_max = 0.0, int samples = 64);

// Lambda(t) + Lambda~(s) - |s t|; nonnegative, and zero exactly at s = alpha(t)
// for odd-symmetric families.
double young_gap(const Nonlinearity& alpha, double s, double t);

enum class GrowthClass { GC1, GC2, None };

struct GrowthReport {
    GrowthClass cls = GrowthClass::None;
    double fitted_r = 0.0;
};

// Fits the growth exponent of alpha on s in [10, 1e4] and compares it with
// the admissible exponent for the space dimension and q. Dimension 1 always
// passes.
GrowthReport growth_check(const Nonlinearity& alpha, int dim, double q);

} // namespace wentzell
