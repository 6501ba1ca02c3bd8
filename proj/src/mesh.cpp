#include "vb/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vb {

namespace {

double psi(double t, double a, double q, double eps) { return a * eps * t / (q - t); }
double psi_prime(double t, double a, double q, double eps) {
    const double d = q - t;
    return a * eps * q / (d * d);
}

}  // namespace

void MeshParams::validate() const {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("mesh: q must lie in (0,1)");
    if (!(a > 0.0)) throw std::invalid_argument("mesh: a must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("mesh: epsilon must be positive");
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("mesh: n must be even and >= 4");
    if (!(a * epsilon < q))
        throw std::invalid_argument("mesh: a*epsilon = " + std::to_string(a * epsilon) +
                                    " must be < q = " + std::to_string(q) +
                                    " (grading ill-posed)");
}

double solve_alpha(const MeshParams& p) {
    p.validate();
    const double ae = p.a * p.epsilon;
    double alpha = (p.q - std::sqrt(ae * p.q * (1.0 - p.q + ae))) / (1.0 + ae);
    // A last-ulp error in the closed form is amplified by psi''/(q-alpha)
    // when eps is tiny; a couple of Newton steps on the tangency equation
    // bring the residual down to evaluation noise.
    for (int iter = 0; iter < 3; ++iter) {
        const double g =
            psi(alpha, p.a, p.q, p.epsilon) + psi_prime(alpha, p.a, p.q, p.epsilon) * (1.0 - alpha) -
            1.0;
        if (std::abs(g) < 1e-15) break;
        const double d = p.q - alpha;
        const double gprime = 2.0 * p.a * p.epsilon * p.q / (d * d * d) * (1.0 - alpha);
        alpha -= g / gprime;
    }
    // a*eps < q guarantees the root lies in (0, q)
    if (!(alpha > 0.0 && alpha < p.q))
        throw std::logic_error("solve_alpha: root escaped (0, q)");
    return alpha;
}

VBMesh generate_vb_mesh(const MeshParams& p) {
    const double alpha = solve_alpha(p);
    const double xa = psi(alpha, p.a, p.q, p.epsilon);
    const double slope = psi_prime(alpha, p.a, p.q, p.epsilon);

    const int n = p.n;
    VBMesh m;
    m.params = p;
    m.alpha = alpha;
    m.zeta = (p.q - alpha) / std::sqrt(p.epsilon);
    m.psi_alpha = xa;
    m.h_coarse = slope / n;

    int j = static_cast<int>(std::ceil(alpha * n));  // smallest J with t_J >= alpha
    m.j_index = j;

    m.points.resize(n + 1);
    m.points[0] = 0.0;
    for (int i = 1; i < j; ++i)
        m.points[i] = psi(static_cast<double>(i) / n, p.a, p.q, p.epsilon);
    // Coarse part anchored at the right endpoint: the tangent line passes
    // through (1,1), and stepping back from 1 keeps every coarse step
    // exactly H instead of accumulating the tangency roundoff.
    for (int i = j; i < n; ++i) m.points[i] = 1.0 - (n - i) * m.h_coarse;
    m.points[n] = 1.0;

    for (int i = 0; i < n; ++i)
        if (!(m.points[i + 1] > m.points[i]))
            throw std::logic_error("generate_vb_mesh: points not strictly increasing at i=" +
                                   std::to_string(i));
    return m;
}

MeshSteps mesh_steps(const VBMesh& m) {
    const int n = m.n();
    MeshSteps s;
    s.h.resize(n);
    for (int i = 1; i <= n; ++i) s.h[i - 1] = m.points[i] - m.points[i - 1];
    s.hbar.resize(n - 1);
    for (int i = 1; i <= n - 1; ++i) s.hbar[i - 1] = 0.5 * (s.h[i - 1] + s.h[i]);
    return s;
}

Lemma1Quantities lemma1_quantities(const VBMesh& m) {
    const int j = m.j_index;
    if (j < 3) throw std::domain_error("lemma1_quantities: degenerate mesh, J = " +
                                       std::to_string(j) + " < 3");
    const MeshSteps s = mesh_steps(m);
    const double eps = m.params.epsilon;

    Lemma1Quantities out;
    out.g.resize(j - 2);
    for (int i = 1; i <= j - 2; ++i) {
        const double hi = s.h[i - 1], hn = s.h[i];
        out.g[i - 1] = eps * (hn - hi) / (hi * hn);
    }
    const double hj = s.h[j - 1];
    out.g_j = eps * (m.h_coarse - hj) / (hj * m.h_coarse);
    return out;
}

VBMesh generate_shishkin_mesh(const MeshParams& p, double sigma, double beta) {
    p.validate();
    if (!(sigma > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("generate_shishkin_mesh: sigma and beta must be positive");

    const int n = p.n;
    const double tau = std::min(0.5, sigma * p.epsilon / beta * std::log(static_cast<double>(n)));

    VBMesh m;
    m.params = p;
    m.alpha = 0.0;
    m.zeta = 0.0;
    m.psi_alpha = tau;
    m.j_index = n / 2;
    m.h_coarse = (1.0 - tau) / (n / 2);

    const double h_fine = tau / (n / 2);
    m.points.resize(n + 1);
    for (int i = 0; i <= n / 2; ++i) m.points[i] = i * h_fine;
    for (int i = n / 2 + 1; i < n; ++i) m.points[i] = tau + (i - n / 2) * m.h_coarse;
    m.points[n] = 1.0;
    return m;
}

}  // namespace vb
