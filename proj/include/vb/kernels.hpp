#pragma once

#include <span>
#include <string>

// Data-parallel inner loops used by the assembly, norm, and scaling
// paths. Each kernel has a scalar reference implementation and an AVX2
// variant; the backend is picked once at startup from CPUID and can be
// forced for equivalence testing. The tridiagonal elimination itself is
// a sequential recurrence and is not dispatched here.

namespace vb::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();

/// Forces a backend (tests only). Requesting avx2 on a CPU without it
/// throws std::runtime_error.
void force_backend(Backend b);

std::string backend_name(Backend b);

/// max_i |x_i|
double max_abs(std::span<const double> x);

/// max_i |x_i - y_i|; sizes must match
double max_abs_diff(std::span<const double> x, std::span<const double> y);

/// Subordinate infinity norm of a tridiagonal matrix: max absolute row
/// sum over (lower, diag, upper) with the boundary rows' missing entries
/// treated as zero.
double max_abs_row_sum(std::span<const double> lower,
                       std::span<const double> diag,
                       std::span<const double> upper);

/// y = A x for the tridiagonal A given by its three diagonals.
void tridiag_apply(std::span<const double> lower,
                   std::span<const double> diag,
                   std::span<const double> upper,
                   std::span<const double> x,
                   std::span<double> y);

/// In-place row scaling by a diagonal matrix m: row i of (lower, diag,
/// upper) and rhs[i] are multiplied by m[i].
void scale_rows(std::span<const double> m,
                std::span<double> lower,
                std::span<double> diag,
                std::span<double> upper,
                std::span<double> rhs);

namespace scalar {
double max_abs(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
double max_abs_row_sum(std::span<const double> lower,
                       std::span<const double> diag,
                       std::span<const double> upper);
void tridiag_apply(std::span<const double> lower,
                   std::span<const double> diag,
                   std::span<const double> upper,
                   std::span<const double> x,
                   std::span<double> y);
void scale_rows(std::span<const double> m,
                std::span<double> lower,
                std::span<double> diag,
                std::span<double> upper,
                std::span<double> rhs);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define VB_KERNELS_HAVE_AVX2 1
namespace avx2 {
double max_abs(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);
double max_abs_row_sum(std::span<const double> lower,
                       std::span<const double> diag,
                       std::span<const double> upper);
void tridiag_apply(std::span<const double> lower,
                   std::span<const double> diag,
                   std::span<const double> upper,
                   std::span<const double> x,
                   std::span<double> y);
void scale_rows(std::span<const double> m,
                std::span<double> lower,
                std::span<double> diag,
                std::span<double> upper,
                std::span<double> rhs);
}  // namespace avx2
#else
#define VB_KERNELS_HAVE_AVX2 0
#endif

}  // namespace vb::kernels
