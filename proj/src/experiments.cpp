#include "vb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vb/kernels.hpp"
#include "vb/linalg.hpp"
#include "vb/precondition.hpp"

namespace vb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16g", v);
    return buf;
}

VBMesh make_mesh(const StudyConfig& cfg, const MeshParams& mp, double beta) {
    if (cfg.mesh_kind == MeshKind::shishkin)
        return generate_shishkin_mesh(mp, cfg.shishkin_sigma, beta);
    return generate_vb_mesh(mp);
}

// one solve through the requested path; preconditioned and raw
// solutions coincide up to roundoff since M is a positive row scaling
std::vector<double> solve_cell(const TestProblem& p, const VBMesh& mesh, bool preconditioned) {
    DiscreteSystem sys = assemble_upwind(p, mesh);
    if (preconditioned) sys = apply_preconditioner(build_preconditioner(mesh), sys, p);
    return thomas_solve(sys.matrix, sys.rhs).solution;
}

}  // namespace

bool StudyRecord::skipped() const {
    return std::find(flags.begin(), flags.end(), "inadmissible") != flags.end();
}

double double_mesh_error(const VBMesh& mesh_n, std::span<const double> u_n,
                         const VBMesh& mesh_2n, std::span<const double> u_2n) {
    const int n = mesh_n.n();
    if (mesh_2n.n() != 2 * n) throw std::invalid_argument("double_mesh_error: meshes not N/2N");
    double err = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double xi = mesh_n.points[i];
        const double xi2 = mesh_2n.points[2 * i];
        if (std::abs(xi - xi2) > 1e-9 * std::max(1.0, std::abs(xi)))
            throw std::invalid_argument("double_mesh_error: meshes not nested at i=" +
                                        std::to_string(i));
        err = std::max(err, std::abs(u_n[i] - u_2n[2 * i]));
    }
    return err;
}

StudyReport run_convergence_study(const StudyConfig& cfg) {
    return run_convergence_study(cfg, problem_by_name(cfg.problem));
}

StudyReport run_convergence_study(const StudyConfig& cfg, const TestProblem& problem) {
    if (cfg.n_values.empty() || cfg.eps_values.empty())
        throw std::invalid_argument("study: empty N or eps list");
    for (int n : cfg.n_values)
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("study: N values must be even, >= 4");

    StudyReport report;
    report.config = cfg;
    report.beta = problem.beta;
    const double a = cfg.a_explicit ? cfg.a : 4.0 / problem.beta + 1.0;
    report.config.a = a;
    report.config.a_explicit = true;

    const double min1beta = std::min(1.0, problem.beta);

    for (int n : cfg.n_values) {
        for (double eps : cfg.eps_values) {
            StudyRecord rec;
            rec.n = n;
            rec.eps = eps;
            rec.error = kNaN;
            rec.kappa_raw = kNaN;
            rec.kappa_precond = kNaN;
            rec.inv_norm = kNaN;
            rec.min_sigma = kNaN;
            rec.lemma1_max = kNaN;

            if (!(a * eps < cfg.q)) {
                rec.flags.push_back("inadmissible");
                report.records.push_back(std::move(rec));
                continue;
            }

            try {
                const MeshParams mp{a, cfg.q, n, eps};
                const VBMesh mesh = make_mesh(report.config, mp, problem.beta);

                DiscreteSystem raw = assemble_upwind(problem, mesh);
                const Preconditioner pc = build_preconditioner(mesh);
                DiscreteSystem scaled = apply_preconditioner(pc, raw, problem);

                if (!is_l_matrix(raw.matrix)) rec.flags.push_back("raw-not-L-matrix");
                if (!is_l_matrix(scaled.matrix)) rec.flags.push_back("scaled-not-L-matrix");

                // M-criterion with the barrier w_i = 2 - x_i, evaluated
                // against the exact assembly (see m_criterion_gamma)
                const double gamma = m_criterion_gamma(problem, mesh);
                if (!(gamma >= min1beta - 1e-12)) rec.flags.push_back("mcrit-fail");

                const double inv_raw = inverse_inf_norm_inverse_positive(raw.matrix);
                if (!(inv_raw <= 2.0 / min1beta * (1.0 + 1e-12)))
                    rec.flags.push_back("stability-bound-fail");
                rec.kappa_raw = inf_norm_matrix(raw.matrix) * inv_raw;

                rec.inv_norm = inverse_inf_norm_inverse_positive(scaled.matrix);
                rec.kappa_precond = inf_norm_matrix(scaled.matrix) * rec.inv_norm;

                // graded-step inequalities, VB mesh only
                if (cfg.mesh_kind == MeshKind::vb) {
                    if (mesh.j_index >= 3) {
                        const Lemma1Quantities lq = lemma1_quantities(mesh);
                        double lhs_max = lq.g.empty()
                                             ? 0.0
                                             : *std::max_element(lq.g.begin(), lq.g.end());
                        rec.lemma1_max = std::max(lhs_max, lq.g_j);
                        const double fine_bound = 2.0 / a + 1e-12;
                        const double gj_bound =
                            mesh.zeta * std::sqrt(eps) / (a * cfg.q) + 1e-12;
                        if (lhs_max > fine_bound || lq.g_j > gj_bound)
                            rec.flags.push_back("lemma1-fail");
                    } else {
                        rec.flags.push_back("degenerate");
                    }

                    const double delta = problem.beta / 2.0 - 2.0 / a;
                    if (delta > 0.0) {
                        const BarrierCertificate cert = build_barrier(
                            problem, mesh, pc, default_c_shift(),
                            default_c_decay(a, cfg.q, problem.beta));
                        rec.min_sigma = cert.min_sigma;
                        if (!cert.certified) rec.flags.push_back("not-certified");
                        if (cert.eps_small_enough && cert.min_sigma < cert.delta)
                            rec.flags.push_back("sigma-below-delta");
                    }
                }

                // solve; in "both" mode assert the two paths agree
                const bool use_precond = cfg.precondition != PrecondMode::off;
                std::vector<double> u = solve_cell(problem, mesh, use_precond);
                if (cfg.precondition == PrecondMode::both) {
                    const std::vector<double> u_raw = solve_cell(problem, mesh, false);
                    const double diff = kernels::max_abs_diff(u, u_raw);
                    if (diff > 1e-8 * (1.0 + kernels::max_abs(u)))
                        rec.flags.push_back("precond-disagree");
                }

                if (cfg.error_method == ErrorMethod::exact) {
                    if (!problem.has_exact())
                        throw std::invalid_argument("study: exact error requested but problem '" +
                                                    problem.name + "' has no exact solution");
                    double err = 0.0;
                    for (std::size_t i = 0; i < u.size(); ++i)
                        err = std::max(err, std::abs(u[i] - problem.exact(mesh.points[i], eps)));
                    rec.error = err;
                } else {
                    const MeshParams mp2{a, cfg.q, 2 * n, eps};
                    const VBMesh mesh2 = make_mesh(report.config, mp2, problem.beta);
                    const std::vector<double> u2 = solve_cell(problem, mesh2, use_precond);
                    rec.error = double_mesh_error(mesh, u, mesh2, u2);
                }
            } catch (const std::exception& e) {
                rec.flags.push_back(std::string("error:") + e.what());
            }

            report.records.push_back(std::move(rec));
        }
    }

    // convergence rates where the half-size row exists
    for (auto& rec : report.records) {
        if (std::isnan(rec.error)) continue;
        for (const auto& prev : report.records) {
            if (prev.n * 2 == rec.n && prev.eps == rec.eps && !std::isnan(prev.error) &&
                rec.error > 0.0) {
                rec.rate = std::log2(prev.error / rec.error);
                break;
            }
        }
    }

    for (const auto& rec : report.records)
        for (const auto& f : rec.flags)
            if (f != "inadmissible" && f != "degenerate" && f != "not-certified")
                report.any_invariant_failed = true;

    return report;
}

namespace {

std::string joined_flags(const StudyRecord& rec) {
    if (rec.flags.empty()) return "ok";
    std::string s;
    for (const auto& f : rec.flags) {
        if (!s.empty()) s += ';';
        s += f;
    }
    return s;
}

void emit_csv(const StudyReport& r, std::ostream& out) {
    const auto& c = r.config;
    out << "# problem=" << c.problem << " a=" << fmt(c.a) << " q=" << fmt(c.q)
        << " beta=" << fmt(r.beta) << " mesh=" << (c.mesh_kind == MeshKind::vb ? "vb" : "shishkin")
        << " precondition="
        << (c.precondition == PrecondMode::on
                ? "on"
                : c.precondition == PrecondMode::off ? "off" : "both")
        << " error=" << (c.error_method == ErrorMethod::exact ? "exact" : "double-mesh") << "\n";
    out << "N,eps,error,rate,kappa_raw,kappa_precond,inv_norm,min_sigma,lemma1_max,flags\n";
    for (const auto& rec : r.records) {
        out << rec.n << ',' << fmt(rec.eps) << ',' << fmt(rec.error) << ','
            << (rec.rate ? fmt(*rec.rate) : "") << ',' << fmt(rec.kappa_raw) << ','
            << fmt(rec.kappa_precond) << ',' << fmt(rec.inv_norm) << ',' << fmt(rec.min_sigma)
            << ',' << fmt(rec.lemma1_max) << ',' << joined_flags(rec) << "\n";
    }
}

void emit_md(const StudyReport& r, std::ostream& out) {
    out << "## Convergence study: " << r.config.problem << " (a=" << fmt(r.config.a)
        << ", q=" << fmt(r.config.q) << ")\n\n";
    for (double eps : r.config.eps_values) {
        out << "### eps = " << fmt(eps) << "\n\n";
        out << "| N | error | rate | kappa(A) | kappa(A~) | min sigma | flags |\n";
        out << "|---|-------|------|----------|-----------|-----------|-------|\n";
        for (const auto& rec : r.records) {
            if (rec.eps != eps) continue;
            out << "| " << rec.n << " | " << fmt(rec.error) << " | "
                << (rec.rate ? fmt(*rec.rate) : "-") << " | " << fmt(rec.kappa_raw) << " | "
                << fmt(rec.kappa_precond) << " | " << fmt(rec.min_sigma) << " | "
                << joined_flags(rec) << " |\n";
        }
        out << "\n";
    }
    out << "### Uniform error (max over eps)\n\n| N | max error |\n|---|-----------|\n";
    for (int n : r.config.n_values) {
        double worst = kNaN;
        for (const auto& rec : r.records)
            if (rec.n == n && !std::isnan(rec.error))
                worst = std::isnan(worst) ? rec.error : std::max(worst, rec.error);
        out << "| " << n << " | " << fmt(worst) << " |\n";
    }
}

void emit_json(const StudyReport& r, std::ostream& out) {
    nlohmann::json j;
    j["config"] = {
        {"problem", r.config.problem},
        {"a", r.config.a},
        {"q", r.config.q},
        {"beta", r.beta},
        {"mesh", r.config.mesh_kind == MeshKind::vb ? "vb" : "shishkin"},
        {"precondition", r.config.precondition == PrecondMode::on
                             ? "on"
                             : r.config.precondition == PrecondMode::off ? "off" : "both"},
        {"error", r.config.error_method == ErrorMethod::exact ? "exact" : "double-mesh"},
        {"n_values", r.config.n_values},
        {"eps_values", r.config.eps_values},
    };
    j["any_invariant_failed"] = r.any_invariant_failed;
    j["records"] = nlohmann::json::array();
    for (const auto& rec : r.records) {
        nlohmann::json row;
        row["N"] = rec.n;
        row["eps"] = rec.eps;
        auto put = [&row](const char* key, double v) {
            if (std::isnan(v))
                row[key] = nullptr;
            else
                row[key] = v;
        };
        put("error", rec.error);
        if (rec.rate)
            row["rate"] = *rec.rate;
        else
            row["rate"] = nullptr;
        put("kappa_raw", rec.kappa_raw);
        put("kappa_precond", rec.kappa_precond);
        put("inv_norm", rec.inv_norm);
        put("min_sigma", rec.min_sigma);
        put("lemma1_max", rec.lemma1_max);
        row["flags"] = rec.flags;
        j["records"].push_back(std::move(row));
    }
    out << j.dump(2) << "\n";
}

}  // namespace

void emit_report(const StudyReport& r, ReportFormat format, std::ostream& out) {
    if (r.records.empty()) throw std::invalid_argument("emit_report: empty report");
    switch (format) {
        case ReportFormat::csv: emit_csv(r, out); break;
        case ReportFormat::md: emit_md(r, out); break;
        case ReportFormat::json: emit_json(r, out); break;
    }
}

void emit_report_to_file(const StudyReport& r, ReportFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
    emit_report(r, format, out);
    out.flush();
    if (!out) throw std::runtime_error("emit_report: write to '" + path + "' failed");
}

}  // namespace vb
