#include "vb/discretize.hpp"

#include <stdexcept>

#include "vb/kernels.hpp"

#include "double_double.hpp"

namespace vb {

DiscreteSystem assemble_upwind(const TestProblem& p, const VBMesh& m) {
    const int n = m.n();
    const double eps = m.params.epsilon;
    const MeshSteps s = mesh_steps(m);

    DiscreteSystem sys;
    sys.mesh = m;
    sys.matrix.lower.assign(n, 0.0);
    sys.matrix.diag.assign(n + 1, 0.0);
    sys.matrix.upper.assign(n, 0.0);
    sys.rhs.assign(n + 1, 0.0);

    sys.matrix.diag[0] = 1.0;
    sys.matrix.diag[n] = 1.0;

    for (int i = 1; i <= n - 1; ++i) {
        const double hi = s.h[i - 1];
        const double hn = s.h[i];
        const double hb = s.hbar[i - 1];
        const double x = m.points[i];
        const double lo = -eps / (hb * hi);
        const double up = -eps / (hb * hn) - p.b(x) / hn;
        sys.matrix.lower[i - 1] = lo;
        sys.matrix.upper[i] = up;
        sys.matrix.diag[i] = -lo - up + p.c(x);
        sys.rhs[i] = p.f(x);
    }
    return sys;
}

double m_criterion_gamma(const TestProblem& p, const VBMesh& m) {
    using dd::DD;
    const int n = m.n();
    const double eps = m.params.epsilon;

    // boundary rows: (A w)_0 = w_0 = 2, (A w)_N = w_N = 1
    double gamma = 1.0;

    for (int i = 1; i <= n - 1; ++i) {
        const DD hi = dd::sub(m.points[i], m.points[i - 1]);
        const DD hn = dd::sub(m.points[i + 1], m.points[i]);
        const DD hb = dd::mul(dd::add(hi, hn), 0.5);
        const DD lo = dd::div(DD{-eps, 0.0}, dd::mul(hb, hi));
        const DD up = dd::sub(dd::div(DD{-eps, 0.0}, dd::mul(hb, hn)),
                              dd::div(DD{p.b(m.points[i]), 0.0}, hn));
        const DD dg = dd::add(dd::sub(DD{0.0, 0.0}, dd::add(lo, up)), p.c(m.points[i]));

        const DD w_prev = dd::sub(2.0, m.points[i - 1]);
        const DD w_cur = dd::sub(2.0, m.points[i]);
        const DD w_next = dd::sub(2.0, m.points[i + 1]);
        const DD row = dd::add(dd::add(dd::mul(lo, w_prev), dd::mul(dg, w_cur)),
                               dd::mul(up, w_next));
        gamma = std::min(gamma, dd::to_double(row));
    }
    return gamma;
}

std::vector<double> consistency_error(const TestProblem& p, const VBMesh& m,
                                      const ExactFn& u_exact) {
    if (!u_exact) throw std::invalid_argument("consistency_error: exact solution required");
    const int n = m.n();
    const double eps = m.params.epsilon;

    const DiscreteSystem sys = assemble_upwind(p, m);
    std::vector<double> u(n + 1);
    for (int i = 0; i <= n; ++i) u[i] = u_exact(m.points[i], eps);

    std::vector<double> au(n + 1);
    kernels::tridiag_apply(sys.matrix.lower, sys.matrix.diag, sys.matrix.upper, u, au);

    std::vector<double> tau(n - 1);
    for (int i = 1; i <= n - 1; ++i) tau[i - 1] = au[i] - sys.rhs[i];
    return tau;
}

}  // namespace vb
