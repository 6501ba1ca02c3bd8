// Command-line harness: convergence studies, stability certificates,
// and mesh/system dumps for the graded-mesh upwind discretization.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vb/experiments.hpp"
#include "vb/kernels.hpp"
#include "vb/linalg.hpp"
#include "vb/precondition.hpp"

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16g", v);
    return buf;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    return file;
}

vb::TestProblem resolve_problem(const std::string& name, const std::string& b_spec,
                                const std::string& c_spec, const std::string& f_spec,
                                double beta) {
    if (name != "custom") return vb::problem_by_name(name);
    if (b_spec.empty() || c_spec.empty() || f_spec.empty())
        throw CLI::ValidationError("--problem custom requires --b, --c, --f presets");
    vb::TestProblem p;
    p.name = "custom";
    p.b = vb::parse_coefficient(b_spec);
    p.c = vb::parse_coefficient(c_spec);
    p.f = vb::parse_coefficient(f_spec);
    p.beta = beta;
    return p;
}

int run_study(const vb::StudyConfig& cfg, const vb::TestProblem& problem) {
    const vb::StudyReport report = vb::run_convergence_study(cfg, problem);
    if (cfg.out_path.empty())
        vb::emit_report(report, cfg.format, std::cout);
    else
        vb::emit_report_to_file(report, cfg.format, cfg.out_path);
    return report.any_invariant_failed ? 2 : 0;
}

int run_certify(double a, double q, double eps, int n, const vb::TestProblem& problem,
                double c_shift, double c_decay, const std::string& out_path) {
    const vb::MeshParams mp{a, q, n, eps};
    const vb::VBMesh mesh = vb::generate_vb_mesh(mp);
    const vb::Preconditioner pc = vb::build_preconditioner(mesh);
    const vb::DiscreteSystem scaled =
        vb::apply_preconditioner(pc, vb::assemble_upwind(problem, mesh), problem);
    const vb::BarrierCertificate cert = vb::build_barrier(problem, mesh, pc, c_shift, c_decay);
    const double inv_norm = vb::inverse_inf_norm_inverse_positive(scaled.matrix);
    const double implied = cert.max_v / cert.delta;

    const bool sigma_ok = cert.min_sigma >= cert.delta;
    const bool v_ok = cert.min_v > 0.0;
    const bool bound_ok = inv_norm <= implied * (1.0 + 1e-12);

    std::printf("delta        = %s\n", fmt(cert.delta).c_str());
    std::printf("min sigma    = %s   [%s] (>= delta)\n", fmt(cert.min_sigma).c_str(),
                sigma_ok ? "PASS" : "FAIL");
    std::printf("min v        = %s   [%s] (> 0)\n", fmt(cert.min_v).c_str(),
                v_ok ? "PASS" : "FAIL");
    std::printf("max v        = %s\n", fmt(cert.max_v).c_str());
    std::printf("||Ainv||     = %s   [%s] (<= max v / delta = %s)\n", fmt(inv_norm).c_str(),
                bound_ok ? "PASS" : "FAIL", fmt(implied).c_str());
    std::printf("eps small    = %s\n", cert.eps_small_enough ? "yes" : "no");
    std::printf("certified    = %s\n", cert.certified ? "yes" : "no");

    nlohmann::json j{{"a", a},
                     {"q", q},
                     {"eps", eps},
                     {"n", n},
                     {"problem", problem.name},
                     {"c_shift", cert.c_shift},
                     {"c_decay", cert.c_decay},
                     {"delta", cert.delta},
                     {"rho", cert.rho},
                     {"rho_j", cert.rho_j},
                     {"min_sigma", cert.min_sigma},
                     {"min_v", cert.min_v},
                     {"max_v", cert.max_v},
                     {"inv_norm", inv_norm},
                     {"implied_bound", implied},
                     {"eps_small_enough", cert.eps_small_enough},
                     {"certified", cert.certified}};
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        f << j.dump(2) << "\n";
    }
    return (sigma_ok && v_ok && bound_ok) ? 0 : 2;
}

int run_mesh_dump(double a, double q, double eps, int n, const std::string& kind, double sigma,
                  double beta, const std::string& format, const std::string& out_path) {
    const vb::MeshParams mp{a, q, n, eps};
    const vb::VBMesh mesh = kind == "shishkin" ? vb::generate_shishkin_mesh(mp, sigma, beta)
                                               : vb::generate_vb_mesh(mp);
    const vb::MeshSteps steps = vb::mesh_steps(mesh);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    if (format == "json") {
        nlohmann::json j{{"a", a},        {"q", q},
                         {"eps", eps},    {"n", n},
                         {"kind", kind},  {"alpha", mesh.alpha},
                         {"zeta", mesh.zeta}, {"j_index", mesh.j_index},
                         {"H", mesh.h_coarse}, {"psi_alpha", mesh.psi_alpha},
                         {"points", mesh.points}, {"h", steps.h}};
        out << j.dump(2) << "\n";
    } else {
        out << "# alpha=" << fmt(mesh.alpha) << " zeta=" << fmt(mesh.zeta)
            << " J=" << mesh.j_index << " H=" << fmt(mesh.h_coarse)
            << " psi_alpha=" << fmt(mesh.psi_alpha) << "\n";
        out << "i,t_i,x_i,h_i\n";
        for (int i = 0; i <= n; ++i) {
            out << i << ',' << fmt(static_cast<double>(i) / n) << ',' << fmt(mesh.points[i])
                << ',' << (i == 0 ? "" : fmt(steps.h[i - 1])) << "\n";
        }
    }
    return 0;
}

int run_system_dump(double a, double q, double eps, int n, const vb::TestProblem& problem,
                    bool precondition, const std::string& out_path) {
    const vb::MeshParams mp{a, q, n, eps};
    const vb::VBMesh mesh = vb::generate_vb_mesh(mp);
    vb::DiscreteSystem sys = vb::assemble_upwind(problem, mesh);
    if (precondition)
        sys = vb::apply_preconditioner(vb::build_preconditioner(mesh), sys, problem);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "i,lower,diag,upper,rhs\n";
    for (int i = 0; i <= n; ++i) {
        out << i << ',' << (i == 0 ? "" : fmt(sys.matrix.lower[i - 1])) << ','
            << fmt(sys.matrix.diag[i]) << ',' << (i == n ? "" : fmt(sys.matrix.upper[i])) << ','
            << fmt(sys.rhs[i]) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graded-mesh upwind discretization of 1-D convection-diffusion problems\n"
                 "with diagonal preconditioning: sweeps, certificates, dumps."};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key = value), overridden by flags");
    app.set_version_flag("--version", "vbprecond 1.0 (kernels: " +
                                          vb::kernels::backend_name(vb::kernels::active_backend()) +
                                          ")");

    // shared problem options
    std::string problem_name = "layer-constant";
    std::string b_spec, c_spec, f_spec;
    double beta = 1.0;

    vb::StudyConfig cfg;
    std::string precond = "both", error_method = "exact", mesh_kind = "vb", format = "csv";
    double a_flag = 0.0;

    auto add_problem_opts = [&](CLI::App* cmd) {
        cmd->add_option("--problem", problem_name, "Problem name (layer-constant) or 'custom'");
        cmd->add_option("--b", b_spec, "Convection coefficient preset (const:V | poly:a0,a1,...)");
        cmd->add_option("--c", c_spec, "Reaction coefficient preset");
        cmd->add_option("--f", f_spec, "Source term preset");
        cmd->add_option("--beta", beta, "Lower bound on b(x) for custom problems");
    };

    auto* study = app.add_subcommand("study", "Run an (N, eps) convergence/conditioning sweep");
    study->add_option("--n-list", cfg.n_values, "Mesh sizes")->delimiter(',');
    study->add_option("--eps-list", cfg.eps_values, "Perturbation parameters")->delimiter(',');
    auto* a_opt = study->add_option("--a", a_flag, "Grading strength (default 4/beta + 1)");
    study->add_option("--q", cfg.q, "Grading denominator parameter");
    study->add_option("--precondition", precond, "on|off|both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    study->add_option("--error", error_method, "exact|double-mesh")
        ->check(CLI::IsMember({"exact", "double-mesh"}));
    study->add_option("--mesh", mesh_kind, "vb|shishkin")
        ->check(CLI::IsMember({"vb", "shishkin"}));
    study->add_option("--sigma", cfg.shishkin_sigma, "Shishkin transition multiplier");
    study->add_option("--out", cfg.out_path, "Output path (default stdout)");
    study->add_option("--format", format, "csv|md|json")
        ->check(CLI::IsMember({"csv", "md", "json"}));
    add_problem_opts(study);

    double cert_a = 5.0, cert_q = 0.5, cert_eps = 1e-8, cert_cshift = -1.0, cert_cdecay = -1.0;
    int cert_n = 256;
    std::string cert_out;
    auto* certify = app.add_subcommand("certify", "Lemma-style stability certificate for the "
                                                  "scaled system");
    certify->add_option("--a", cert_a, "Grading strength")->required();
    certify->add_option("--q", cert_q, "Grading denominator parameter")->required();
    certify->add_option("--eps", cert_eps, "Perturbation parameter")->required();
    certify->add_option("--n", cert_n, "Mesh intervals")->required();
    certify->add_option("--c-shift", cert_cshift, "Barrier affine constant (default 3)");
    certify->add_option("--c-decay", cert_cdecay, "Barrier decay amplitude (default max(1, 8/(a q beta)))");
    certify->add_option("--out", cert_out, "Write the JSON record here instead of stdout");
    add_problem_opts(certify);

    auto* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
    mesh_cmd->require_subcommand(1);
    double md_a = 5.0, md_q = 0.5, md_eps = 1e-6, md_sigma = 2.0;
    int md_n = 64;
    std::string md_format = "csv", md_kind = "vb", md_out;
    auto* mesh_dump = mesh_cmd->add_subcommand("dump", "Write points and derived quantities");
    mesh_dump->add_option("--a", md_a, "Grading strength")->required();
    mesh_dump->add_option("--q", md_q, "Grading denominator parameter")->required();
    mesh_dump->add_option("--eps", md_eps, "Perturbation parameter")->required();
    mesh_dump->add_option("--n", md_n, "Mesh intervals")->required();
    mesh_dump->add_option("--format", md_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    mesh_dump->add_option("--mesh", md_kind, "vb|shishkin")
        ->check(CLI::IsMember({"vb", "shishkin"}));
    mesh_dump->add_option("--sigma", md_sigma, "Shishkin transition multiplier");
    mesh_dump->add_option("--beta", beta, "beta for the Shishkin transition point");
    mesh_dump->add_option("--out", md_out, "Output path (default stdout)");

    auto* system_cmd = app.add_subcommand("system", "Assembled-system utilities");
    system_cmd->require_subcommand(1);
    double sd_a = 5.0, sd_q = 0.5, sd_eps = 1e-6;
    int sd_n = 64;
    std::string sd_precond = "off", sd_out;
    auto* system_dump = system_cmd->add_subcommand("dump", "Write the three diagonals and rhs");
    system_dump->add_option("--a", sd_a, "Grading strength")->required();
    system_dump->add_option("--q", sd_q, "Grading denominator parameter")->required();
    system_dump->add_option("--eps", sd_eps, "Perturbation parameter")->required();
    system_dump->add_option("--n", sd_n, "Mesh intervals")->required();
    system_dump->add_option("--precondition", sd_precond, "on|off")
        ->check(CLI::IsMember({"on", "off"}));
    system_dump->add_option("--out", sd_out, "Output path (default stdout)");
    add_problem_opts(system_dump);

    CLI11_PARSE(app, argc, argv);

    try {
        const vb::TestProblem problem =
            resolve_problem(problem_name, b_spec, c_spec, f_spec, beta);

        if (*study) {
            cfg.problem = problem.name;
            cfg.a_explicit = a_opt->count() > 0;
            if (cfg.a_explicit) cfg.a = a_flag;
            cfg.precondition = precond == "on" ? vb::PrecondMode::on
                               : precond == "off" ? vb::PrecondMode::off
                                                  : vb::PrecondMode::both;
            cfg.error_method = error_method == "exact" ? vb::ErrorMethod::exact
                                                       : vb::ErrorMethod::double_mesh;
            cfg.mesh_kind = mesh_kind == "vb" ? vb::MeshKind::vb : vb::MeshKind::shishkin;
            cfg.format = format == "csv" ? vb::ReportFormat::csv
                         : format == "md" ? vb::ReportFormat::md
                                          : vb::ReportFormat::json;
            return run_study(cfg, problem);
        }
        if (*certify) {
            const double cs = cert_cshift > 0 ? cert_cshift : vb::default_c_shift();
            const double cd =
                cert_cdecay > 0 ? cert_cdecay
                                : vb::default_c_decay(cert_a, cert_q, problem.beta);
            return run_certify(cert_a, cert_q, cert_eps, cert_n, problem, cs, cd, cert_out);
        }
        if (*mesh_dump)
            return run_mesh_dump(md_a, md_q, md_eps, md_n, md_kind, md_sigma, beta, md_format,
                                 md_out);
        if (*system_dump)
            return run_system_dump(sd_a, sd_q, sd_eps, sd_n, problem, sd_precond == "on", sd_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
