#pragma once

#include <vector>

namespace vb {

/// Inputs of the graded-mesh construction. The grading function is
/// psi(t) = a*eps*t/(q-t) on [0, alpha], continued by its tangent line
/// through (1,1) on [alpha, 1].
struct MeshParams {
    double a;        // grading strength, a > 4/beta for the theory to apply
    double q;        // grading denominator parameter, 0 < q < 1
    int n;           // number of mesh intervals, even, >= 4
    double epsilon;  // perturbation parameter

    /// Throws std::invalid_argument when q is outside (0,1), n < 4,
    /// epsilon <= 0, a <= 0, or a*epsilon >= q.
    void validate() const;
};

struct VBMesh {
    std::vector<double> points;  // x_0 .. x_N
    double alpha;                // tangency parameter, 0 < alpha < q
    double zeta;                 // (q - alpha)/sqrt(eps)
    int j_index;                 // smallest J with t_J >= alpha
    double h_coarse;             // uniform step H on [x_J, 1]
    double psi_alpha;            // transition point psi(alpha)
    MeshParams params;           // generating parameters (epsilon in particular)

    int n() const { return static_cast<int>(points.size()) - 1; }
};

/// Closed-form root of psi(alpha) + psi'(alpha)(1 - alpha) = 1:
///   alpha = (q - sqrt(a eps q (1 - q + a eps))) / (1 + a eps).
/// Guarantees 0 < alpha < q; throws on a*eps >= q.
double solve_alpha(const MeshParams& p);

/// Mesh points x_i = lambda(i/N) with lambda from the grading function.
VBMesh generate_vb_mesh(const MeshParams& p);

struct MeshSteps {
    std::vector<double> h;     // h_i = x_i - x_{i-1}, i = 1..N (stored at [i-1])
    std::vector<double> hbar;  // (h_i + h_{i+1})/2, i = 1..N-1 (stored at [i-1])
};

MeshSteps mesh_steps(const VBMesh& m);

/// The exact left-hand sides of the two graded-mesh step inequalities:
///   g[i-1]  = eps (h_{i+1} - h_i) / (h_i h_{i+1}),  i = 1..J-2
///   g_j     = eps (H - h_J) / (h_J H)
/// Bounds asserted by callers: g_i <= 2/a and g_j <= zeta sqrt(eps)/(a q).
struct Lemma1Quantities {
    std::vector<double> g;
    double g_j;
};

/// Throws std::domain_error when J < 3 (fine region too small).
Lemma1Quantities lemma1_quantities(const VBMesh& m);

/// Piecewise-uniform Shishkin mesh, comparison baseline only. Transition
/// point min(1/2, sigma*eps/beta * ln N) is recorded in psi_alpha;
/// alpha and zeta are set to 0.
VBMesh generate_shishkin_mesh(const MeshParams& p, double sigma, double beta);

}  // namespace vb
