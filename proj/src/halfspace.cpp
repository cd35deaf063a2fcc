#include "wentzell/halfspace.hpp"

#include "wentzell/errors.hpp"

#include <cmath>

namespace wentzell {

namespace {

void validate(const FrequencyProblem& fp) {
    if (!(fp.lambda > 0.0)) throw CoefficientError("frequency problem requires lambda > 0");
    if (!(fp.b > 0.0)) throw CoefficientError("frequency problem requires b > 0");
    if (fp.c < 0.0 || fp.q < 0.0 || fp.zeta < 0.0) {
        throw CoefficientError("frequency problem requires c, q, zeta >= 0");
    }
    if (fp.n_grid < 16) throw CoefficientError("frequency grid too coarse");
}

double trapezoid_l2(const std::vector<double>& v, double dz) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        acc += 0.5 * dz * (v[i] * v[i] + v[i + 1] * v[i + 1]);
    }
    return std::sqrt(acc);
}

} // namespace

double boundary_symbol(const FrequencyProblem& fp) {
    validate(fp);
    return fp.c + fp.lambda + fp.q * fp.b * fp.zeta * fp.zeta +
           fp.b * std::sqrt(fp.zeta * fp.zeta + fp.lambda);
}

FrequencySolution solve_frequency(const FrequencyProblem& fp) {
    validate(fp);
    const double m = std::sqrt(fp.zeta * fp.zeta + fp.lambda);
    const double z_max = fp.z_max > 0.0 ? fp.z_max : 10.0 / std::sqrt(fp.lambda);
    const int n = fp.n_grid;
    const double dz = z_max / (n - 1);
    const double decay = std::exp(-m * dz);

    FrequencySolution sol;
    sol.decay_rate = m;
    sol.z.resize(n);
    sol.u.resize(n);

    std::vector<double> f(n, 0.0);
    if (fp.fhat) {
        for (int k = 0; k < n; ++k) f[k] = fp.fhat(k * dz);
    }
    for (int k = 0; k < n; ++k) sol.z[k] = k * dz;

    // Convolution with the decaying Green kernel, split into the causal and
    // anticausal parts and accumulated by stable one-step recurrences:
    //   j1(z) = int_0^z e^{-m (z-t)} f(t) dt,  j2(z) = int_z^Z e^{-m (t-z)} f dt.
    // The per-cell integral uses the exact exponential weights of the linear
    // interpolant of f, so only the interpolation error remains.
    const double theta = m * dz;
    const double ramp = (1.0 - decay) / theta;          // (1 - e^-theta)/theta
    const double w_near = (1.0 - ramp) / m;             // node where the kernel is 1
    const double w_far = (ramp - decay) / m;            // node where the kernel is e^-theta
    std::vector<double> j1(n, 0.0), j2(n, 0.0);
    for (int k = 1; k < n; ++k) {
        j1[k] = decay * j1[k - 1] + w_near * f[k] + w_far * f[k - 1];
    }
    for (int k = n - 2; k >= 0; --k) {
        j2[k] = decay * j2[k + 1] + w_near * f[k] + w_far * f[k + 1];
    }

    sol.u_particular.resize(n);
    for (int k = 0; k < n; ++k) sol.u_particular[k] = -(j1[k] + j2[k]) / (2.0 * m);
    const double up0 = sol.u_particular[0];
    const double dup0 = 0.5 * (j1[0] - j2[0]); // derivative of the particular solution at 0

    const double beta = fp.c + fp.lambda + fp.q * fp.b * fp.zeta * fp.zeta;
    const double p = beta + fp.b * m;
    if (!(p > 0.0)) throw CoefficientError("boundary symbol is not positive");

    const double coeff = (fp.ghat + fp.b * dup0 - beta * up0) / p;
    for (int k = 0; k < n; ++k) {
        sol.u[k] = sol.u_particular[k] + coeff * std::exp(-m * sol.z[k]);
    }
    sol.boundary_coefficient = coeff;
    sol.u0 = sol.u[0];
    sol.du0 = dup0 - m * coeff;
    return sol;
}

double growing_mode_coefficient(const FrequencySolution& sol) {
    // The homogeneous remainder u - u_particular must be spanned by the
    // decaying mode alone. Fit it against e^{-m z} (anchored at 0) and
    // e^{+m (z - zm)} (anchored at z_max), so both basis columns stay O(1),
    // and report the weight of the growing column.
    const std::size_t n = sol.z.size();
    const double m = sol.decay_rate;
    const double zm = sol.z.back();

    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e1 = std::exp(-m * sol.z[k]);
        const double e2 = std::exp(m * (sol.z[k] - zm));
        const double h = sol.u[k] - sol.u_particular[k];
        s11 += e1 * e1;
        s12 += e1 * e2;
        s22 += e2 * e2;
        r1 += e1 * h;
        r2 += e2 * h;
    }
    const double det = s11 * s22 - s12 * s12;
    if (det == 0.0) return 0.0;
    return std::abs((s11 * r2 - s12 * r1) / det);
}

FrequencyRatios frequency_ratio(const FrequencyProblem& fp, const FrequencySolution& sol) {
    const double dz = sol.z[1] - sol.z[0];
    const int n = static_cast<int>(sol.z.size());
    const double m2 = sol.decay_rate * sol.decay_rate;

    std::vector<double> f(n, 0.0);
    if (fp.fhat) {
        for (int k = 0; k < n; ++k) f[k] = fp.fhat(sol.z[k]);
    }
    // u'' is recovered from the equation itself: u'' = f + m^2 u.
    std::vector<double> upp(n);
    for (int k = 0; k < n; ++k) upp[k] = f[k] + m2 * sol.u[k];

    FrequencyRatios out;
    const double fn = trapezoid_l2(f, dz);
    out.data_norm = std::sqrt(fn * fn + fp.ghat * fp.ghat / fp.b);
    const double un = trapezoid_l2(sol.u, dz);
    out.solution_norm = un + fp.zeta * fp.zeta * un + trapezoid_l2(upp, dz);
    out.ratio = out.solution_norm > 0.0 ? out.data_norm / out.solution_norm : 0.0;
    return out;
}

ConstantsBand estimate_constants(const std::vector<FrequencyProblem>& sweep) {
    if (sweep.empty()) throw CoefficientError("estimate_constants requires a nonempty sweep");
    ConstantsBand band;
    bool first = true;
    for (const FrequencyProblem& fp : sweep) {
        const FrequencySolution sol = solve_frequency(fp);
        const FrequencyRatios r = frequency_ratio(fp, sol);
        if (r.ratio <= 0.0) continue;
        if (first) {
            band.c_low = band.c_high = r.ratio;
            first = false;
        } else {
            band.c_low = std::min(band.c_low, r.ratio);
            band.c_high = std::max(band.c_high, r.ratio);
        }
    }
    if (first) throw CoefficientError("estimate_constants saw only trivial solutions");
    return band;
}

} // namespace wentzell
