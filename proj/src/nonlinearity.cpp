#include "wentzell/nonlinearity.hpp"

#include "wentzell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wentzell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double power_alpha(double r, double p, double s) {
    return s == 0.0 ? 0.0 : r * std::pow(std::abs(s), p - 1.0) * s;
}

} // namespace

double Nonlinearity::operator()(double s) const {
    switch (family_) {
        case AlphaFamily::Zero: return 0.0;
        case AlphaFamily::Power: return power_alpha(r_, p_, s);
        case AlphaFamily::Arctan: return std::atan(s);
        case AlphaFamily::Table: return table_alpha(s);
    }
    return 0.0;
}

double Nonlinearity::primitive(double t) const {
    switch (family_) {
        case AlphaFamily::Zero: return 0.0;
        case AlphaFamily::Power: return r_ / (p_ + 1.0) * std::pow(std::abs(t), p_ + 1.0);
        case AlphaFamily::Arctan: return t * std::atan(t) - 0.5 * std::log1p(t * t);
        case AlphaFamily::Table: return table_primitive(t);
    }
    return 0.0;
}

double Nonlinearity::young(double t) const {
    return std::max(primitive(t), primitive(-t));
}

double Nonlinearity::derivative(double s) const {
    switch (family_) {
        case AlphaFamily::Zero: return 0.0;
        case AlphaFamily::Power:
            if (p_ == 1.0) return r_;
            return s == 0.0 ? (p_ > 1.0 ? 0.0 : kInf)
                            : r_ * p_ * std::pow(std::abs(s), p_ - 1.0);
        case AlphaFamily::Arctan: return 1.0 / (1.0 + s * s);
        case AlphaFamily::Table: {
            if (ts_.size() < 2) return 0.0;
            if (s <= ts_.front() || s >= ts_.back()) return 0.0;
            auto it = std::upper_bound(ts_.begin(), ts_.end(), s);
            std::size_t hi = static_cast<std::size_t>(it - ts_.begin());
            std::size_t lo = hi - 1;
            return (as_[hi] - as_[lo]) / (ts_[hi] - ts_[lo]);
        }
    }
    return 0.0;
}

bool Nonlinearity::smooth() const {
    switch (family_) {
        case AlphaFamily::Zero:
        case AlphaFamily::Arctan: return true;
        case AlphaFamily::Power: return p_ >= 1.0;
        case AlphaFamily::Table: return false;
    }
    return false;
}

double Nonlinearity::table_alpha(double s) const {
    if (s <= ts_.front()) return as_.front();
    if (s >= ts_.back()) return as_.back();
    auto it = std::upper_bound(ts_.begin(), ts_.end(), s);
    std::size_t hi = static_cast<std::size_t>(it - ts_.begin());
    std::size_t lo = hi - 1;
    const double w = (s - ts_[lo]) / (ts_[hi] - ts_[lo]);
    return (1.0 - w) * as_[lo] + w * as_[hi];
}

double Nonlinearity::table_primitive(double t) const {
    // Exact integral of the piecewise-linear interpolant, constant-extended
    // outside the sampled window; anchored so that L(0) = 0.
    if (t >= ts_.back()) {
        return prim_.back() + as_.back() * (t - ts_.back());
    }
    if (t <= ts_.front()) {
        return prim_.front() + as_.front() * (t - ts_.front());
    }
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - ts_.begin());
    std::size_t lo = hi - 1;
    const double dt = t - ts_[lo];
    const double slope = (as_[hi] - as_[lo]) / (ts_[hi] - ts_[lo]);
    return prim_[lo] + as_[lo] * dt + 0.5 * slope * dt * dt;
}

Nonlinearity make_zero() {
    Nonlinearity a;
    a.family_ = AlphaFamily::Zero;
    return a;
}

Nonlinearity make_power(double r, double p) {
    if (!(r > 0.0) || !(p > 0.0)) {
        throw CoefficientError("power nonlinearity requires r > 0 and p > 0");
    }
    Nonlinearity a;
    a.family_ = AlphaFamily::Power;
    a.r_ = r;
    a.p_ = p;
    return a;
}

Nonlinearity make_arctan() {
    Nonlinearity a;
    a.family_ = AlphaFamily::Arctan;
    return a;
}

Nonlinearity make_table(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw CoefficientError("table nonlinearity needs at least two points");
    std::sort(points.begin(), points.end());
    Nonlinearity a;
    a.family_ = AlphaFamily::Table;
    a.ts_.reserve(points.size());
    a.as_.reserve(points.size());
    for (const auto& [s, v] : points) {
        if (!a.ts_.empty()) {
            if (s <= a.ts_.back()) throw CoefficientError("table abscissae must be strictly increasing");
            if (v < a.as_.back()) {
                throw CoefficientError("table nonlinearity must be nondecreasing, violated at s=" +
                                       std::to_string(s));
            }
        }
        a.ts_.push_back(s);
        a.as_.push_back(v);
    }

    // Cumulative integral at the breakpoints, then shift so L(0) = 0.
    a.prim_.assign(a.ts_.size(), 0.0);
    for (std::size_t k = 1; k < a.ts_.size(); ++k) {
        const double dt = a.ts_[k] - a.ts_[k - 1];
        a.prim_[k] = a.prim_[k - 1] + 0.5 * (a.as_[k] + a.as_[k - 1]) * dt;
    }
    const double at_zero = a.table_primitive(0.0);
    for (double& v : a.prim_) v -= at_zero;

    if (std::abs(a.table_alpha(0.0)) > 1e-14) {
        throw CoefficientError("table nonlinearity must pass through (0, 0)");
    }
    return a;
}

double Nonlinearity::conjugate(double s) const {
    const double a = std::abs(s);
    if (a == 0.0) return 0.0;

    // Slope of Lambda on the positive axis.
    auto lambda_slope = [this](double t) {
        return std::max((*this)(t), -(*this)(-t));
    };

    // The supremum of a*t - Lambda(t) is finite only while the slope of
    // Lambda eventually exceeds a; expand the bracket until that happens.
    double hi = 1.0;
    while (lambda_slope(hi) < a) {
        hi *= 2.0;
        if (hi > 1e12) return kInf;
    }

    // Golden-section search for the concave objective.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    auto g = [this, a](double t) { return a * t - young(t); };
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 140 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        if (g1 < g2) {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + gr * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - gr * (hi - lo);
            g1 = g(x1);
        }
    }
    return std::max({g1, g2, 0.0});
}

RangeInterval Nonlinearity::range() const {
    RangeInterval r;
    switch (family_) {
        case AlphaFamily::Zero:
            r = {0.0, 0.0, true, true};
            break;
        case AlphaFamily::Power:
            r = {-kInf, kInf, false, false};
            break;
        case AlphaFamily::Arctan: {
            const double half_pi = 2.0 * std::atan(1.0);
            r = {-half_pi, half_pi, false, false};
            break;
        }
        case AlphaFamily::Table: {
            // The constant extension makes the endpoint samples the limits;
            // they are reported attained only when the table itself is flat
            // at the corresponding end.
            r.lo = as_.front();
            r.hi = as_.back();
            const std::size_t m = as_.size();
            r.lo_attained = m >= 2 && as_[0] == as_[1];
            r.hi_attained = m >= 2 && as_[m - 1] == as_[m - 2];
            break;
        }
    }
    return r;
}

RangeInterval range_of(const Nonlinearity& alpha) { return alpha.range(); }

RangeInterval minkowski_combine(const RangeInterval& i1, double l1,
                                const RangeInterval& i2, double l2) {
    if (l1 < 0.0 || l2 < 0.0) throw CoefficientError("minkowski_combine requires nonnegative scales");

    struct End {
        double v;
        bool att;
    };
    auto scaled = [](double l, double e, bool att) -> End {
        if (l == 0.0) return {0.0, true};
        return {l * e, att};
    };
    auto add = [](End a, End b) -> End {
        if (std::isinf(a.v) && std::isinf(b.v) && (a.v > 0) != (b.v > 0)) {
            throw std::logic_error("indeterminate endpoint sum");
        }
        return {a.v + b.v, a.att && b.att};
    };

    const End lo = add(scaled(l1, i1.lo, i1.lo_attained), scaled(l2, i2.lo, i2.lo_attained));
    const End hi = add(scaled(l1, i1.hi, i1.hi_attained), scaled(l2, i2.hi, i2.hi_attained));
    return {lo.v, hi.v, lo.att, hi.att};
}

double Nonlinearity::sample_span() const {
    if (family_ != AlphaFamily::Table) return 0.0;
    return std::max(std::abs(ts_.front()), std::abs(ts_.back()));
}

Delta2Report delta2_check(const Nonlinearity& alpha, double t_max, int samples) {
    if (t_max == 0.0) {
        const double span = alpha.sample_span();
        t_max = span > 0.0 ? std::max(2.0, span / 2.0) : 100.0;
    }
    if (!(t_max > 1.0)) throw CoefficientError("delta2_check requires t_max > 1");
    if (samples < 16) throw CoefficientError("delta2_check requires at least 16 samples");

    Delta2Report rep;

    std::vector<double> ts(samples), ratios;
    std::vector<double> ratio_t;
    const double log_max = std::log(t_max);
    for (int i = 0; i < samples; ++i) {
        ts[i] = std::exp(log_max * i / (samples - 1));
    }

    bool onset_found = false;
    for (double t : ts) {
        const double lt = alpha.young(t);
        // The doubling condition only has to hold from some onset onwards;
        // samples where Lambda still vanishes are skipped, which also guards
        // the division.
        if (lt <= 0.0) continue;
        if (!onset_found) {
            rep.onset_t = t;
            onset_found = true;
        }
        ratios.push_back(alpha.young(2.0 * t) / lt);
        ratio_t.push_back(t);
    }

    if (ratios.empty()) {
        // Lambda vanishes on the whole sampled window.
        rep.passes = true;
        rep.empirical_c = 1.0;
        return rep;
    }

    rep.empirical_c = *std::max_element(ratios.begin(), ratios.end());

    bool fails = false;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
        if (ratios[k] > 1e8) {
            fails = true;
            rep.witness_t = ratio_t[k];
            break;
        }
    }
    if (!fails) {
        // Monotone blow-up across the top decade.
        std::size_t first = 0;
        while (first < ratio_t.size() && ratio_t[first] < t_max / 10.0) ++first;
        if (first + 1 < ratios.size()) {
            bool nondecreasing = true;
            for (std::size_t k = first + 1; k < ratios.size(); ++k) {
                if (ratios[k] < ratios[k - 1] * (1.0 - 1e-9)) {
                    nondecreasing = false;
                    break;
                }
            }
            if (nondecreasing && ratios.back() > 2.0 * ratios[first]) {
                fails = true;
                for (std::size_t k = first; k < ratios.size(); ++k) {
                    if (ratios[k] > 2.0 * ratios[first]) {
                        rep.witness_t = ratio_t[k];
                        break;
                    }
                }
            }
        }
    }

    rep.passes = !fails;

    // Families with closed-form Lambda are classified analytically.
    if (alpha.family() == AlphaFamily::Zero) {
        rep.passes = true;
        rep.empirical_c = 1.0;
    } else if (alpha.family() == AlphaFamily::Power) {
        rep.passes = true;
    }
    return rep;
}

double young_gap(const Nonlinearity& alpha, double s, double t) {
    const double conj = alpha.conjugate(s);
    if (std::isinf(conj)) return conj;
    return alpha.young(t) + conj - std::abs(s * t);
}

GrowthReport growth_check(const Nonlinearity& alpha, int dim, double q) {
    if (dim < 1) throw CoefficientError("growth_check requires dim >= 1");

    GrowthReport rep;
    const GrowthClass pass_class = q > 0.0 ? GrowthClass::GC2 : GrowthClass::GC1;

    // Log-log fit of |alpha| over s in [10, 1e4], split in two windows to
    // catch superpolynomial growth.
    const int n = 40;
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) {
        const double s = std::pow(10.0, 1.0 + 3.0 * i / (n - 1));
        const double v = std::abs(alpha(s));
        if (v > 0.0) {
            xs.push_back(std::log(s));
            ys.push_back(std::log(v));
        }
    }
    auto slope = [](const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t b, std::size_t e) {
        double mx = 0, my = 0;
        for (std::size_t i = b; i < e; ++i) { mx += x[i]; my += y[i]; }
        const double m = static_cast<double>(e - b);
        mx /= m;
        my /= m;
        double num = 0, den = 0;
        for (std::size_t i = b; i < e; ++i) {
            num += (x[i] - mx) * (y[i] - my);
            den += (x[i] - mx) * (x[i] - mx);
        }
        return den > 0 ? num / den : 0.0;
    };

    bool superpoly = false;
    if (xs.size() >= 8) {
        rep.fitted_r = slope(xs, ys, 0, xs.size());
        const double lo = slope(xs, ys, 0, xs.size() / 2);
        const double hi = slope(xs, ys, xs.size() / 2, xs.size());
        superpoly = hi > lo + 0.5;
        if (superpoly) rep.fitted_r = hi;
    } else {
        rep.fitted_r = 0.0; // bounded or identically zero on the window
    }

    if (dim == 1) {
        rep.cls = pass_class;
        return rep;
    }
    if (dim == 2) {
        rep.cls = superpoly ? GrowthClass::None : pass_class;
        return rep;
    }
    const double r_adm = q > 0.0 ? static_cast<double>(dim - 1) / (dim - 2)
                                 : static_cast<double>(dim) / (dim - 2);
    if (!superpoly && rep.fitted_r <= r_adm + 0.05) {
        rep.cls = pass_class;
    } else {
        rep.cls = GrowthClass::None;
    }
    return rep;
}

} // namespace wentzell
