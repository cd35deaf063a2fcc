#pragma once

#include <cstddef>
#include <cstdint>

// Dense vector primitives used by the inner loops of the toolkit.
//
// Every primitive has a scalar reference implementation and, where the
// hardware provides it, a SIMD variant (AVX2 on x86-64, NEON on aarch64).
// The active variant is chosen once at runtime from cpu capabilities; the
// scalar path is always available and is the semantic reference the SIMD
// paths are equivalence-tested against.

namespace wentzell::kernels {

struct Ops {
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i w[i] * x[i] * y[i]
    double (*weighted_dot)(const double* w, const double* x, const double* y, std::size_t n);
    // sum_i w[i] * x[i]
    double (*weighted_sum)(const double* w, const double* x, std::size_t n);
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x[i] *= a
    void (*scale)(double a, double* x, std::size_t n);
    // sum_i x[i]
    double (*sum)(const double* x, std::size_t n);
    // max_i |x[i] - y[i]|
    double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
    // y = A x for a CSR matrix with int32 indices
    void (*csr_matvec)(const std::int32_t* row_ptr, const std::int32_t* col,
                       const double* val, std::int32_t n_rows,
                       const double* x, double* y);
    const char* name;
};

// Reference implementation; always valid.
const Ops& scalar_ops();

// Currently dispatched implementation.
const Ops& active();

// Names the dispatched variant ("scalar", "avx2", "neon").
const char* active_isa();

// Test hook: force a variant by name, or pass nullptr to restore automatic
// selection. Throws std::invalid_argument for unknown/unsupported names.
void force_isa(const char* name);

inline double dot(const double* x, const double* y, std::size_t n) {
    return active().dot(x, y, n);
}
inline double weighted_dot(const double* w, const double* x, const double* y, std::size_t n) {
    return active().weighted_dot(w, x, y, n);
}
inline double weighted_sum(const double* w, const double* x, std::size_t n) {
    return active().weighted_sum(w, x, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
    active().axpy(a, x, y, n);
}
inline void scale(double a, double* x, std::size_t n) {
    active().scale(a, x, n);
}
inline double sum(const double* x, std::size_t n) {
    return active().sum(x, n);
}
inline double max_abs_diff(const double* x, const double* y, std::size_t n) {
    return active().max_abs_diff(x, y, n);
}
inline void csr_matvec(const std::int32_t* row_ptr, const std::int32_t* col,
                       const double* val, std::int32_t n_rows,
                       const double* x, double* y) {
    active().csr_matvec(row_ptr, col, val, n_rows, x, y);
}

} // namespace wentzell::kernels
