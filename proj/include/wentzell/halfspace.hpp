#pragma once

#include <functional>
#include <vector>

namespace wentzell {

// One radial frequency of the constant-coefficient half-space problem
//   u'' - (zeta^2 + lambda) u = f on z >= 0,
//   -b u'(0) + (c + lambda + q b zeta^2) u(0) = g,
// with the outward-normal sign convention at z = 0, which keeps the boundary
// symbol strictly positive for every frequency.
struct FrequencyProblem {
    double zeta = 0.0;   // |zeta| >= 0
    double lambda = 1.0; // > 0
    double b = 1.0;      // > 0
    double c = 0.0;      // >= 0
    double q = 0.0;      // >= 0
    std::function<double(double)> fhat; // right-hand side; empty means zero
    double ghat = 0.0;
    double z_max = 0.0; // 0 picks 10 / sqrt(lambda)
    int n_grid = 2000;
};

// p(zeta) = c + lambda + q b zeta^2 + b sqrt(zeta^2 + lambda).
double boundary_symbol(const FrequencyProblem& fp);

struct FrequencySolution {
    std::vector<double> z;
    std::vector<double> u;
    std::vector<double> u_particular;  // Green-kernel convolution part
    double decay_rate = 0.0;           // sqrt(zeta^2 + lambda)
    double boundary_coefficient = 0.0; // weight of the decaying mode
    double u0 = 0.0;                   // u(0)
    double du0 = 0.0;                  // u'(0)
};

// Square-integrable solution: variation of constants with the decaying Green
// kernel plus the decaying homogeneous mode fixed by the boundary condition.
FrequencySolution solve_frequency(const FrequencyProblem& fp);

// Least-squares weight of the growing mode e^{+m z} in the homogeneous part
// u - u_particular, normalized at z_max; vanishes for admissible solutions.
double growing_mode_coefficient(const FrequencySolution& sol);

struct FrequencyRatios {
    double data_norm = 0.0;     // ||(fhat, ghat)|| per frequency
    double solution_norm = 0.0; // ||u|| + zeta^2 ||u|| + ||u''||
    double ratio = 0.0;
};

FrequencyRatios frequency_ratio(const FrequencyProblem& fp, const FrequencySolution& sol);

struct ConstantsBand {
    double c_low = 0.0;
    double c_high = 0.0;
};

// Empirical two-sided norm-equivalence constants over a frequency sweep:
// extreme ratios of data norm to solution norm.
ConstantsBand estimate_constants(const std::vector<FrequencyProblem>& sweep);

} // namespace wentzell
