#include "vb/linalg.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vb/kernels.hpp"

namespace vb {

SolveResult thomas_solve(const TridiagonalMatrix& t, std::span<const double> rhs) {
    const std::size_t n = t.rows();
    if (rhs.size() != n) throw std::invalid_argument("thomas_solve: rhs size mismatch");
    if (n == 0) throw std::invalid_argument("thomas_solve: empty matrix");

    std::vector<double> c_star(n, 0.0), d_star(n, 0.0);

    double pivot = t.diag[0];
    if (std::abs(pivot) < 1e-300) throw std::runtime_error("thomas_solve: singular pivot at row 0");
    if (n > 1) c_star[0] = t.upper[0] / pivot;
    d_star[0] = rhs[0] / pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = t.diag[i] - t.lower[i - 1] * c_star[i - 1];
        if (std::abs(pivot) < 1e-300)
            throw std::runtime_error("thomas_solve: singular pivot at row " + std::to_string(i));
        if (i + 1 < n) c_star[i] = t.upper[i] / pivot;
        d_star[i] = (rhs[i] - t.lower[i - 1] * d_star[i - 1]) / pivot;
    }

    SolveResult res;
    res.solution.resize(n);
    res.solution[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        res.solution[i] = d_star[i] - c_star[i] * res.solution[i + 1];

    std::vector<double> ax(n);
    if (n == 1) {
        ax[0] = t.diag[0] * res.solution[0];
    } else {
        kernels::tridiag_apply(t.lower, t.diag, t.upper, res.solution, ax);
    }
    res.residual_norm = kernels::max_abs_diff(ax, rhs);
    return res;
}

double inf_norm_matrix(const TridiagonalMatrix& t) {
    return kernels::max_abs_row_sum(t.lower, t.diag, t.upper);
}

double inverse_inf_norm_inverse_positive(const TridiagonalMatrix& t) {
    // for A^{-1} >= 0 the absolute row sums of A^{-1} are exactly
    // A^{-1} * ones, so one solve gives the subordinate norm
    std::vector<double> ones(t.rows(), 1.0);
    const SolveResult r = thomas_solve(t, ones);
    return kernels::max_abs(r.solution);
}

double condition_number(const TridiagonalMatrix& t) {
    return inf_norm_matrix(t) * inverse_inf_norm_inverse_positive(t);
}

namespace {

// Compensated 3-term dot product (error-free transformations via fma).
// The row entries scale like N^2/eps while the result is O(1), so a
// plain evaluation loses every significant digit at small eps.
double row_dot(std::span<const double> coeffs, std::span<const double> vals) {
    double sum = 0.0, err = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double p = coeffs[k] * vals[k];
        const double pe = std::fma(coeffs[k], vals[k], -p);
        const double s = sum + p;
        const double bb = s - sum;
        err += (sum - (s - bb)) + (p - bb) + pe;
        sum = s;
    }
    return sum + err;
}

}  // namespace

MCriterionResult m_criterion_check(const TridiagonalMatrix& t, std::span<const double> w) {
    if (!is_l_matrix(t)) throw std::invalid_argument("m_criterion_check: not an L-matrix");
    if (w.size() != t.rows()) throw std::invalid_argument("m_criterion_check: w size mismatch");
    for (double wi : w)
        if (!(wi > 0.0)) throw std::invalid_argument("m_criterion_check: w must be positive");

    const std::size_t rows = t.rows();
    double gamma = row_dot(std::array{t.diag[0], t.upper[0]}, std::array{w[0], w[1]});
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        const double v = row_dot(std::array{t.lower[i - 1], t.diag[i], t.upper[i]},
                                 std::array{w[i - 1], w[i], w[i + 1]});
        gamma = std::min(gamma, v);
    }
    gamma = std::min(gamma, row_dot(std::array{t.lower[rows - 2], t.diag[rows - 1]},
                                    std::array{w[rows - 2], w[rows - 1]}));

    MCriterionResult res;
    res.gamma = gamma;
    res.bound = kernels::max_abs(w) / gamma;
    return res;
}

}  // namespace vb
