// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Exercises the full (N, eps) sweep at desk scale.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <vector>

#include "vb/discretize.hpp"
#include "vb/kernels.hpp"
#include "vb/linalg.hpp"
#include "vb/mesh.hpp"
#include "vb/precondition.hpp"
#include "vb/problem.hpp"

using namespace vb;

namespace {

const std::vector<int> kNs = {64, 128, 256, 512, 1024, 2048, 4096};
const std::vector<double> kEps = {1e-2, 1e-3, 1e-4,  1e-5,  1e-6,
                                  1e-7, 1e-8, 1e-9, 1e-10};

struct Cell {
    double error = 0.0;
    double kappa_raw = 0.0;
    double kappa_precond = 0.0;
    double inv_raw = 0.0;
    double inv_precond = 0.0;
    double gamma = 0.0;
    double min_sigma = 0.0;
    double barrier_bound = 0.0;
    bool lemma1_ok = false;
    bool identity_ok = false;
};

int failures = 0;

void report(int id, const char* what, bool ok, const char* detail) {
    std::printf("%s: criterion %d (%s) %s\n", ok ? "PASS" : "FAIL", id, what, detail);
    if (!ok) ++failures;
}

// dense Gaussian elimination with partial pivoting, independent oracle
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (int i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            if (m == 0.0) continue;
            for (int j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace

int main() {
    const TestProblem p = builtin_layer_problem();  // beta = 1
    const double a = 5.0, q = 0.5;
    const double beta_min = std::min(1.0, p.beta);

    // ---- sweep: everything criteria 1-5 need, one pass ----------------
    std::map<std::pair<int, int>, Cell> cells;  // (n index, eps index)
    bool sweep_ok = true;
    for (std::size_t ie = 0; ie < kEps.size(); ++ie) {
        for (std::size_t in = 0; in < kNs.size(); ++in) {
            const int n = kNs[in];
            const double eps = kEps[ie];
            Cell c;
            try {
                const VBMesh m = generate_vb_mesh(MeshParams{a, q, n, eps});
                const DiscreteSystem sys = assemble_upwind(p, m);
                const Preconditioner pc = build_preconditioner(m);
                const DiscreteSystem scaled = apply_preconditioner(pc, sys, p);

                const SolveResult r = thomas_solve(scaled.matrix, scaled.rhs);
                for (std::size_t i = 0; i < r.solution.size(); ++i)
                    c.error = std::max(
                        c.error, std::abs(r.solution[i] - p.exact(m.points[i], eps)));

                c.inv_raw = inverse_inf_norm_inverse_positive(sys.matrix);
                c.inv_precond = inverse_inf_norm_inverse_positive(scaled.matrix);
                c.kappa_raw = inf_norm_matrix(sys.matrix) * c.inv_raw;
                c.kappa_precond = inf_norm_matrix(scaled.matrix) * c.inv_precond;
                c.gamma = m_criterion_gamma(p, m);

                const Lemma1Quantities lq = lemma1_quantities(m);
                c.lemma1_ok = lq.g_j <= m.zeta * std::sqrt(eps) / (a * q) + 1e-12;
                c.identity_ok = true;
                for (std::size_t k = 0; k < lq.g.size(); ++k) {
                    if (lq.g[k] > 2.0 / a + 1e-12) c.lemma1_ok = false;
                    const double ti = static_cast<double>(k + 1) / n;
                    const double ref = 2.0 * (1.0 - ti / q) / a;
                    if (std::abs(lq.g[k] - ref) > 1e-10 * std::max(1.0, std::abs(ref)))
                        c.identity_ok = false;
                }

                const BarrierCertificate cert = build_barrier(
                    p, m, pc, default_c_shift(), default_c_decay(a, q, p.beta));
                c.min_sigma = cert.min_sigma;
                c.barrier_bound = cert.max_v / cert.delta;
            } catch (const std::exception& e) {
                std::printf("sweep cell N=%d eps=%.0e threw: %s\n", n, eps, e.what());
                sweep_ok = false;
            }
            cells[{static_cast<int>(in), static_cast<int>(ie)}] = c;
        }
    }

    // ---- criterion 1: uniform first-order convergence ------------------
    {
        bool ok = sweep_ok;
        double worst_rate_lo = 2.0, worst_rate_hi = 0.0;
        const int last = static_cast<int>(kNs.size()) - 1;
        for (std::size_t ie = 0; ie < kEps.size(); ++ie) {
            const double e_prev = cells[{last - 1, static_cast<int>(ie)}].error;
            const double e_last = cells[{last, static_cast<int>(ie)}].error;
            const double rate = std::log2(e_prev / e_last);
            worst_rate_lo = std::min(worst_rate_lo, rate);
            worst_rate_hi = std::max(worst_rate_hi, rate);
            if (rate < 0.85 || rate > 1.15) ok = false;
        }
        double emax_64 = 0.0, emax_4096 = 0.0;
        for (std::size_t ie = 0; ie < kEps.size(); ++ie) {
            emax_64 = std::max(emax_64, cells[{0, static_cast<int>(ie)}].error);
            emax_4096 = std::max(emax_4096, cells[{last, static_cast<int>(ie)}].error);
        }
        const double gain = emax_64 / emax_4096;
        if (gain < 32.0) ok = false;
        char d[160];
        std::snprintf(d, sizeof d,
                      "rates at N=4096 in [%.3f, %.3f], uniform error gain 64->4096 = %.1fx",
                      worst_rate_lo, worst_rate_hi, gain);
        report(1, "uniform first-order convergence", ok, d);
    }

    // ---- criterion 2: conditioning separation --------------------------
    {
        bool ok = sweep_ok;
        double worst_spread = 0.0, raw_lo = 1e300, raw_hi = 0.0;
        for (std::size_t in = 0; in < kNs.size(); ++in) {
            const double n2 = static_cast<double>(kNs[in]) * kNs[in];
            double lo = 1e300, hi = 0.0;
            for (std::size_t ie = 0; ie < kEps.size(); ++ie) {
                const Cell& c = cells[{static_cast<int>(in), static_cast<int>(ie)}];
                lo = std::min(lo, c.kappa_precond / n2);
                hi = std::max(hi, c.kappa_precond / n2);
                const double scaled_raw = c.kappa_raw * kEps[ie] / n2;
                raw_lo = std::min(raw_lo, scaled_raw);
                raw_hi = std::max(raw_hi, scaled_raw);
            }
            worst_spread = std::max(worst_spread, hi / lo);
        }
        if (worst_spread > 10.0) ok = false;
        if (raw_lo < 1e-2 || raw_hi > 1e2) ok = false;
        char d[160];
        std::snprintf(d, sizeof d,
                      "kappa~/N^2 spread %.2f (<=10), kappa*eps/N^2 in [%.3g, %.3g]",
                      worst_spread, raw_lo, raw_hi);
        report(2, "conditioning separation", ok, d);
    }

    // ---- criterion 3: M-criterion and stability -------------------------
    {
        bool ok = sweep_ok;
        double min_gamma = 1e300, max_inv = 0.0;
        for (auto& [key, c] : cells) {
            min_gamma = std::min(min_gamma, c.gamma);
            max_inv = std::max(max_inv, c.inv_raw);
            if (c.gamma < beta_min - 1e-12) ok = false;
            if (c.inv_raw > 2.0 / beta_min * (1.0 + 1e-12)) ok = false;
        }
        char d[160];
        std::snprintf(d, sizeof d, "min (A w)_i = %.12f >= %.0f, max ||A^-1|| = %.6f <= %.0f",
                      min_gamma, beta_min, max_inv, 2.0 / beta_min);
        report(3, "M-criterion and stability bound", ok, d);
    }

    // ---- criterion 4: Lemma 1 inequalities ------------------------------
    {
        bool ok = sweep_ok;
        for (auto& [key, c] : cells)
            if (!c.lemma1_ok || !c.identity_ok) ok = false;
        report(4, "graded-step (Lemma 1) bounds and identity", ok,
               "g_i <= 2/a and g_J <= zeta*sqrt(eps)/(aq) (+1e-12), identity to 1e-10");
    }

    // ---- criterion 5: barrier certificate -------------------------------
    {
        bool ok = sweep_ok;
        double min_sigma_all = 1e300, worst_var = 0.0;
        for (std::size_t in = 0; in < kNs.size(); ++in) {
            double lo = 1e300, hi = 0.0;
            for (std::size_t ie = 0; ie < kEps.size(); ++ie) {
                if (kEps[ie] > 1e-4) continue;
                const Cell& c = cells[{static_cast<int>(in), static_cast<int>(ie)}];
                min_sigma_all = std::min(min_sigma_all, c.min_sigma);
                if (c.min_sigma < 0.1 - 1e-12) ok = false;
                if (c.inv_precond > c.barrier_bound * (1.0 + 1e-12)) ok = false;
                lo = std::min(lo, c.inv_precond);
                hi = std::max(hi, c.inv_precond);
            }
            worst_var = std::max(worst_var, hi / lo);
        }
        if (worst_var >= 5.0) ok = false;
        char d[160];
        std::snprintf(d, sizeof d,
                      "min sigma = %.4f >= 0.1, ||A~^-1|| <= max v/delta, eps-variation %.2fx (<5)",
                      min_sigma_all, worst_var);
        report(5, "barrier (Lemma 2) certificate", ok, d);
    }

    // ---- criterion 6: scaled vs unscaled consistency error --------------
    {
        bool ok = true;
        double s_max = 0.0, worst_growth = 0.0;
        for (double eps : kEps) {
            std::vector<double> s;
            for (int n : kNs) {
                const VBMesh m = generate_vb_mesh(MeshParams{a, q, n, eps});
                const Preconditioner pc = build_preconditioner(m);
                s.push_back(n * kernels::max_abs(scaled_consistency(p, m, pc, p.exact)));
            }
            const double growth = s.back() / s.front();
            worst_growth = std::max(worst_growth, growth);
            s_max = std::max(s_max, *std::max_element(s.begin(), s.end()));
            // bounded: no doubling-driven growth across a 64x range of N
            if (growth > 1.25) ok = false;
            if (s.back() > 50.0) ok = false;
        }
        // negative control: unscaled N*max|tau| grows like 1/eps
        auto raw_at = [&](double eps) {
            const VBMesh m = generate_vb_mesh(MeshParams{a, q, 1024, eps});
            return 1024 * kernels::max_abs(consistency_error(p, m, p.exact));
        };
        const double blowup = raw_at(1e-10) / raw_at(1e-2);
        if (blowup < 100.0) ok = false;
        char d[160];
        std::snprintf(d, sizeof d,
                      "N*max|tau~| <= %.1f, growth over 64x N <= %.3fx; unscaled grows %.1ex",
                      s_max, worst_growth, blowup);
        report(6, "scaled consistency (Lemma 3) boundedness", ok, d);
    }

    // ---- criterion 7: solver oracle equivalence --------------------------
    {
        bool ok = true;
        std::mt19937 rng(31337);
        std::uniform_int_distribution<int> usize(2, 50);
        std::uniform_real_distribution<double> off(-1.0, 1.0);
        std::uniform_real_distribution<double> bump(0.1, 2.0);
        std::uniform_real_distribution<double> urhs(-10.0, 10.0);
        double worst = 0.0;
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            const int n = usize(rng);
            TridiagonalMatrix t;
            t.lower.resize(n - 1);
            t.upper.resize(n - 1);
            t.diag.resize(n);
            for (int i = 0; i < n - 1; ++i) {
                t.lower[i] = off(rng);
                t.upper[i] = off(rng);
            }
            for (int i = 0; i < n; ++i)
                t.diag[i] = (i > 0 ? std::abs(t.lower[i - 1]) : 0.0) +
                            (i + 1 < n ? std::abs(t.upper[i]) : 0.0) + bump(rng);
            std::vector<double> rhs(n);
            for (double& r : rhs) r = urhs(rng);

            std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
            for (int i = 0; i < n; ++i) {
                dense[i][i] = t.diag[i];
                if (i > 0) dense[i][i - 1] = t.lower[i - 1];
                if (i + 1 < n) dense[i][i + 1] = t.upper[i];
            }
            const std::vector<double> want = dense_solve(dense, rhs);
            const SolveResult got = thomas_solve(t, rhs);
            double scale = 1.0;
            for (double w : want) scale = std::max(scale, std::abs(w));
            for (int i = 0; i < n; ++i) {
                const double rel = std::abs(got.solution[i] - want[i]) / scale;
                worst = std::max(worst, rel);
                if (rel > 1e-12) ok = false;
            }
        }
        char d[96];
        std::snprintf(d, sizeof d, "1000 systems n<=50, worst relative deviation %.2e", worst);
        report(7, "tridiagonal solver vs dense oracle", ok, d);
    }

    if (failures == 0) {
        std::printf("ALL ACCEPTANCE CRITERIA PASSED\n");
        return 0;
    }
    std::printf("%d ACCEPTANCE CRITERIA FAILED\n", failures);
    return 1;
}
