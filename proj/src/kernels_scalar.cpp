#include "wentzell/kernels.hpp"

#include <cmath>

namespace wentzell::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double weighted_dot_scalar(const double* w, const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * y[i];
    return acc;
}

double weighted_sum_scalar(const double* w, const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

void csr_matvec_scalar(const std::int32_t* row_ptr, const std::int32_t* col,
                       const double* val, std::int32_t n_rows,
                       const double* x, double* y) {
    for (std::int32_t r = 0; r < n_rows; ++r) {
        double acc = 0.0;
        for (std::int32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        dot_scalar,
        weighted_dot_scalar,
        weighted_sum_scalar,
        axpy_scalar,
        scale_scalar,
        sum_scalar,
        max_abs_diff_scalar,
        csr_matvec_scalar,
        "scalar",
    };
    return ops;
}

} // namespace wentzell::kernels
