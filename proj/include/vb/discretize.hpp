#pragma once

#include <vector>

#include "vb/mesh.hpp"
#include "vb/problem.hpp"
#include "vb/tridiagonal.hpp"

namespace vb {

/// Assembled system A U = rhs. Rows 0 and N are identity rows with zero
/// right-hand side (homogeneous boundary conditions).
struct DiscreteSystem {
    TridiagonalMatrix matrix;
    std::vector<double> rhs;
    VBMesh mesh;
    bool preconditioned = false;
};

/// Upwind scheme on the given mesh: interior row i encodes
///   -eps D'' U_i - b_i D' U_i + c_i U_i = f_i
/// with the averaged second difference D'' and the forward difference D'
/// (with -b u' and b > 0, forward is the upwind direction). Explicitly
///   lower_i = -eps/(hbar_i h_i)
///   upper_i = -eps/(hbar_i h_{i+1}) - b_i/h_{i+1}
///   diag_i  = -lower_i - upper_i + c_i.
DiscreteSystem assemble_upwind(const TestProblem& p, const VBMesh& m);

/// min_i (A_N w)_i for the barrier w_i = 2 - x_i, evaluated in
/// double-double precision directly from the assembly formulas. The
/// stored double matrix cannot carry an O(1) row sum when its entries
/// reach N^2/eps (the diagonal's ulp alone exceeds any reasonable
/// slack), so the inequality (A_N w)_i >= min{1, beta} is verified
/// against the exact assembly instead.
double m_criterion_gamma(const TestProblem& p, const VBMesh& m);

/// Consistency error tau_i = (A u - rhs)_i at interior rows, where u
/// samples the exact solution on the mesh. Returned vector has N-1
/// entries, tau_1..tau_{N-1} at [0..N-2].
std::vector<double> consistency_error(const TestProblem& p, const VBMesh& m,
                                      const ExactFn& u_exact);

}  // namespace vb
