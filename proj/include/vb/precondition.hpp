#pragma once

#include <vector>

#include "vb/discretize.hpp"

namespace vb {

/// Diagonal row scaling M = diag(m_0..m_N) that equilibrates the fine
/// rows: m_0 = 1, m_i = hbar_i/H for i = 1..J, m_i = 1 for i > J.
struct Preconditioner {
    std::vector<double> m_diag;
    int j_index;
    double h_coarse;
};

Preconditioner build_preconditioner(const VBMesh& m);

/// Forms the scaled system (M A, M rhs). The scaled entries are
/// cross-checked row by row against the closed forms
///   l_i = -eps/(h_i H),                 r_i = -eps/(h_{i+1} H) - b_i hbar_i/(h_{i+1} H)   (1 <= i <= J-1)
///   l_J = -eps/(h_J H),                 r_J = -eps/H^2 - b_J hbar_J/H^2
///   l_i = -eps/H^2,                     r_i = -eps/H^2 - b_i/H                            (J+1 <= i <= N-1)
///   d_i = -l_i - r_i + (hbar_i/H) c_i (i <= J) or -l_i - r_i + c_i (i > J);
/// a relative mismatch above 1e-12 throws std::logic_error. The check
/// needs the problem coefficients, hence the TestProblem argument.
DiscreteSystem apply_preconditioner(const Preconditioner& pc, const DiscreteSystem& s,
                                    const TestProblem& p);

/// Scaled consistency error: tau_tilde_i = m_i * tau_i.
std::vector<double> scaled_consistency(const TestProblem& p, const VBMesh& m,
                                       const Preconditioner& pc, const ExactFn& u_exact);

/// Stability certificate for the scaled matrix, built from the barrier
///   v_i = c_shift - H i + c_decay                                  (i <= J-1)
///   v_i = c_shift - H i + c_decay (1+rho)^{J-i} / (1+rho_j)        (i >= J)
/// with rho = beta H/(2 eps), rho_j = beta h_J/(2 eps). sigma_i is the
/// barrier pushed through the scaled matrix rows; min sigma_i >= delta
/// together with v > 0 certifies ||Atilde^{-1}|| <= max v / delta.
struct BarrierCertificate {
    std::vector<double> v;      // N+1 entries
    std::vector<double> sigma;  // N-1 entries, interior rows
    double delta;               // beta/2 - 2/a
    double rho;
    double rho_j;
    double c_shift;
    double c_decay;
    double min_sigma;
    double min_v;
    double max_v;
    bool eps_small_enough;  // zeta sqrt(eps)/(a q) <= 2/a held
    bool certified;         // min_sigma >= delta, v > 0, eps condition held
};

/// Default barrier constants: c_shift = 3, c_decay = max(1, 8/(a q beta)).
double default_c_shift();
double default_c_decay(double a, double q, double beta);

/// Throws std::invalid_argument when delta = beta/2 - 2/a <= 0 or when
/// some v_i <= 0 (c_shift too small).
BarrierCertificate build_barrier(const TestProblem& p, const VBMesh& m,
                                 const Preconditioner& pc, double c_shift,
                                 double c_decay);

}  // namespace vb
