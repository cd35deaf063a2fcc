#include "wentzell/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace wentzell::kernels {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double weighted_dot_neon(const double* w, const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t wx = vmulq_f64(vld1q_f64(w + i), vld1q_f64(x + i));
        acc = vfmaq_f64(acc, wx, vld1q_f64(y + i));
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += w[i] * x[i] * y[i];
    return r;
}

double weighted_sum_neon(const double* w, const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(w + i), vld1q_f64(x + i));
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += w[i] * x[i];
    return r;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t yi = vld1q_f64(y + i);
        yi = vfmaq_f64(yi, av, vld1q_f64(x + i));
        vst1q_f64(y + i, yi);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double a, double* x, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmulq_f64(av, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double max_abs_diff_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
        acc = vmaxq_f64(acc, d);
    }
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

void csr_matvec_neon(const std::int32_t* row_ptr, const std::int32_t* col,
                     const double* val, std::int32_t n_rows,
                     const double* x, double* y) {
    for (std::int32_t r = 0; r < n_rows; ++r) {
        const std::int32_t end = row_ptr[r + 1];
        std::int32_t k = row_ptr[r];
        float64x2_t acc = vdupq_n_f64(0.0);
        for (; k + 2 <= end; k += 2) {
            float64x2_t xv = {x[col[k]], x[col[k + 1]]};
            acc = vfmaq_f64(acc, vld1q_f64(val + k), xv);
        }
        double a = vaddvq_f64(acc);
        for (; k < end; ++k) a += val[k] * x[col[k]];
        y[r] = a;
    }
}

} // namespace

const Ops* neon_ops_impl() {
    static const Ops ops = {
        dot_neon,
        weighted_dot_neon,
        weighted_sum_neon,
        axpy_neon,
        scale_neon,
        sum_neon,
        max_abs_diff_neon,
        csr_matvec_neon,
        "neon",
    };
    return &ops;
}

} // namespace wentzell::kernels

#endif // aarch64
