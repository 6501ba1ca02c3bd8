#include <cmath>
#include <cstddef>

#include "vb/kernels.hpp"

namespace vb::kernels::scalar {

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

double max_abs_row_sum(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper) {
    const std::size_t rows = diag.size();
    double m = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double s = std::abs(diag[i]);
        if (i > 0) s += std::abs(lower[i - 1]);
        if (i + 1 < rows) s += std::abs(upper[i]);
        m = std::max(m, s);
    }
    return m;
}

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> y) {
    const std::size_t rows = diag.size();
    y[0] = diag[0] * x[0] + upper[0] * x[1];
    for (std::size_t i = 1; i + 1 < rows; ++i)
        y[i] = lower[i - 1] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
    y[rows - 1] = lower[rows - 2] * x[rows - 2] + diag[rows - 1] * x[rows - 1];
}

void scale_rows(std::span<const double> m, std::span<double> lower, std::span<double> diag,
                std::span<double> upper, std::span<double> rhs) {
    const std::size_t rows = diag.size();
    for (std::size_t i = 0; i < rows; ++i) {
        diag[i] *= m[i];
        rhs[i] *= m[i];
        if (i > 0) lower[i - 1] *= m[i];
        if (i + 1 < rows) upper[i] *= m[i];
    }
}

}  // namespace vb::kernels::scalar
