#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "vb/discretize.hpp"
#include "vb/kernels.hpp"
#include "vb/linalg.hpp"

using namespace vb;

namespace {

VBMesh uniform_mesh(int n, double eps) {
    VBMesh m;
    m.params = {5.0, 0.5, n, eps};
    m.points.resize(n + 1);
    for (int i = 0; i <= n; ++i) m.points[i] = static_cast<double>(i) / n;
    m.alpha = 0.0;
    m.zeta = 0.0;
    m.j_index = 0;
    m.h_coarse = 1.0 / n;
    m.psi_alpha = 0.0;
    return m;
}

TestProblem variable_problem() {
    TestProblem p;
    p.name = "variable";
    p.b = [](double x) { return 2.0 + x; };
    p.c = [](double x) { return x * x; };
    p.f = [](double x) { return 1.0 + x; };
    p.beta = 2.0;
    return p;
}

// compensated 3-term dot product, test-side oracle for row evaluations
double dot3(double a1, double x1, double a2, double x2, double a3, double x3) {
    double sum = 0.0, err = 0.0;
    for (auto [a, x] : {std::pair{a1, x1}, {a2, x2}, {a3, x3}}) {
        const double p = a * x;
        const double pe = std::fma(a, x, -p);
        const double s = sum + p;
        const double bb = s - sum;
        err += (sum - (s - bb)) + (p - bb) + pe;
        sum = s;
    }
    return sum + err;
}

}  // namespace

TEST_CASE("boundary rows are identity with zero rhs") {
    const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 64, 1e-6});
    const DiscreteSystem sys = assemble_upwind(builtin_layer_problem(), m);
    const int n = m.n();
    CHECK(sys.matrix.diag[0] == 1.0);
    CHECK(sys.matrix.upper[0] == 0.0);
    CHECK(sys.matrix.diag[n] == 1.0);
    CHECK(sys.matrix.lower[n - 1] == 0.0);
    CHECK(sys.rhs[0] == 0.0);
    CHECK(sys.rhs[n] == 0.0);
}

TEST_CASE("interior row sums equal c_i") {
    const TestProblem p = variable_problem();
    const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 128, 1e-4});
    const DiscreteSystem sys = assemble_upwind(p, m);
    for (int i = 1; i < m.n(); ++i) {
        const double lo = sys.matrix.lower[i - 1];
        const double up = sys.matrix.upper[i];
        const double dg = sys.matrix.diag[i];
        const double scale = std::abs(lo) + std::abs(dg) + std::abs(up);
        CHECK(std::abs(lo + dg + up - p.c(m.points[i])) <= 1e-14 * scale);
    }
}

TEST_CASE("A applied to the ones vector gives c_i inside, 1 at the boundary") {
    const TestProblem p = variable_problem();
    const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 64, 1e-3});
    const DiscreteSystem sys = assemble_upwind(p, m);
    std::vector<double> ones(m.n() + 1, 1.0);
    for (int i = 1; i < m.n(); ++i) {
        const double v = dot3(sys.matrix.lower[i - 1], 1.0, sys.matrix.diag[i], 1.0,
                              sys.matrix.upper[i], 1.0);
        CHECK(v == doctest::Approx(p.c(m.points[i])).epsilon(1e-10).scale(1.0));
    }
    CHECK(sys.matrix.diag[0] * ones[0] == 1.0);
}

TEST_CASE("M-criterion barrier w = 2 - x") {
    const TestProblem p = builtin_layer_problem();
    for (double eps : {1e-2, 1e-6, 1e-10}) {
        for (int n : {64, 256, 1024}) {
            const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, n, eps});
            CHECK(m_criterion_gamma(p, m) >= std::min(1.0, p.beta) - 1e-12);
        }
    }
}

TEST_CASE("uniform-mesh stencil matches the hand expansion") {
    // b=1, c=0 on h=1/N: interior row (-eps/h^2, 2 eps/h^2 + N, -eps/h^2 - N)
    const int n = 32;
    const double eps = 1e-2;
    const VBMesh m = uniform_mesh(n, eps);
    const DiscreteSystem sys = assemble_upwind(builtin_layer_problem(), m);
    const double h = 1.0 / n;
    for (int i = 1; i < n; ++i) {
        CHECK(sys.matrix.lower[i - 1] == doctest::Approx(-eps / (h * h)).epsilon(1e-12));
        CHECK(sys.matrix.diag[i] == doctest::Approx(2.0 * eps / (h * h) + n).epsilon(1e-12));
        CHECK(sys.matrix.upper[i] == doctest::Approx(-eps / (h * h) - n).epsilon(1e-12));
    }
}

TEST_CASE("with c = 0 the interior stencil maps the identity function to -b_i") {
    TestProblem p;
    p.b = [](double x) { return 1.5 + x; };
    p.c = [](double) { return 0.0; };
    p.f = [](double) { return 0.0; };
    p.beta = 1.5;
    const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 64, 1e-3});
    const DiscreteSystem sys = assemble_upwind(p, m);
    for (int i = 1; i < m.n(); ++i) {
        const double v = dot3(sys.matrix.lower[i - 1], m.points[i - 1], sys.matrix.diag[i],
                              m.points[i], sys.matrix.upper[i], m.points[i + 1]);
        CHECK(v == doctest::Approx(-p.b(m.points[i])).epsilon(1e-12));
    }
}

TEST_CASE("assembled matrices are L-matrices") {
    for (double eps : {1e-2, 1e-6, 1e-10}) {
        const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 128, eps});
        CHECK(is_l_matrix(assemble_upwind(variable_problem(), m).matrix));
        CHECK(is_l_matrix(assemble_upwind(builtin_layer_problem(), m).matrix));
    }
    TridiagonalMatrix id = TridiagonalMatrix::identity(5);
    CHECK(is_l_matrix(id));
    id.upper[2] = 0.1;
    CHECK(!is_l_matrix(id));
}

TEST_CASE("consistency error of the zero solution is zero") {
    TestProblem p;
    p.b = [](double) { return 1.0; };
    p.c = [](double) { return 0.0; };
    p.f = [](double) { return 0.0; };
    p.beta = 1.0;
    const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 64, 1e-4});
    const auto tau = consistency_error(p, m, [](double, double) { return 0.0; });
    for (double t : tau) CHECK(t == 0.0);
}

TEST_CASE("consistency error for a quadratic solution on a uniform mesh is exactly h") {
    // u = x(1-x), b=1, c=0, f = 2 eps + 2x - 1: D'' is exact for
    // quadratics and the upwind D' misses u' by exactly h
    const int n = 64;
    const double eps = 1e-2;
    TestProblem p;
    p.b = [](double) { return 1.0; };
    p.c = [](double) { return 0.0; };
    p.f = [eps](double x) { return 2.0 * eps + 2.0 * x - 1.0; };
    p.beta = 1.0;
    const VBMesh m = uniform_mesh(n, eps);
    const auto tau = consistency_error(p, m, [](double x, double) { return x * (1.0 - x); });
    for (double t : tau) CHECK(t == doctest::Approx(1.0 / n).epsilon(1e-9));
}

TEST_CASE("unscaled consistency error blows up near the layer (negative control)") {
    const TestProblem p = builtin_layer_problem();
    const VBMesh m = generate_vb_mesh(MeshParams{5.0, 0.5, 256, 1e-6});
    const auto tau = consistency_error(p, m, p.exact);
    const double max_tau = kernels::max_abs(tau);
    CHECK(max_tau > 100.0 / 256.0);  // far above any O(1/N) bound
}
