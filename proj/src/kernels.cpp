#include "vb/kernels.hpp"

#include <stdexcept>

namespace vb::kernels {

namespace {

bool avx2_available() {
#if VB_KERNELS_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend& backend_slot() {
    static Backend b = avx2_available() ? Backend::avx2 : Backend::scalar;
    return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available())
        throw std::runtime_error("kernels: AVX2 backend requested but CPU lacks AVX2");
    backend_slot() = b;
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

#if VB_KERNELS_HAVE_AVX2
#define VB_DISPATCH(fn, ...) \
    return backend_slot() == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#define VB_DISPATCH_VOID(fn, ...)                     \
    if (backend_slot() == Backend::avx2)              \
        avx2::fn(__VA_ARGS__);                        \
    else                                              \
        scalar::fn(__VA_ARGS__)
#else
#define VB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#define VB_DISPATCH_VOID(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double max_abs(std::span<const double> x) { VB_DISPATCH(max_abs, x); }

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    VB_DISPATCH(max_abs_diff, x, y);
}

double max_abs_row_sum(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper) {
    VB_DISPATCH(max_abs_row_sum, lower, diag, upper);
}

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> y) {
    VB_DISPATCH_VOID(tridiag_apply, lower, diag, upper, x, y);
}

void scale_rows(std::span<const double> m, std::span<double> lower, std::span<double> diag,
                std::span<double> upper, std::span<double> rhs) {
    VB_DISPATCH_VOID(scale_rows, m, lower, diag, upper, rhs);
}

}  // namespace vb::kernels
