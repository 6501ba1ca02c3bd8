#pragma once

#include <span>
#include <vector>

#include "vb/tridiagonal.hpp"

namespace vb {

struct SolveResult {
    std::vector<double> solution;
    double residual_norm;  // max-norm of A x - rhs
};

/// Direct tridiagonal elimination without pivoting. The systems solved
/// here are M-matrices, so pivoting is not needed for stability; a
/// residual is recorded as a guard. Throws std::runtime_error on a
/// pivot below 1e-300 in magnitude.
SolveResult thomas_solve(const TridiagonalMatrix& t, std::span<const double> rhs);

/// Subordinate infinity norm (max absolute row sum).
double inf_norm_matrix(const TridiagonalMatrix& t);

/// Exact ||A^{-1}||_inf for inverse-positive A: one solve against the
/// all-ones vector, then the max component. The caller certifies
/// inverse positivity (L-matrix plus a positive barrier).
double inverse_inf_norm_inverse_positive(const TridiagonalMatrix& t);

/// kappa(A) = ||A|| * ||A^{-1}|| in the infinity norm.
double condition_number(const TridiagonalMatrix& t);

struct MCriterionResult {
    double gamma;  // min_i (A w)_i
    double bound;  // ||w||_inf / gamma; valid bound on ||A^{-1}|| when gamma > 0
};

/// M-criterion: for an L-matrix A and w > 0 with A w >= gamma > 0, A is
/// an M-matrix and ||A^{-1}|| <= ||w||/gamma. Throws std::invalid_argument
/// when A is not an L-matrix or w is not componentwise positive.
MCriterionResult m_criterion_check(const TridiagonalMatrix& t, std::span<const double> w);

}  // namespace vb
