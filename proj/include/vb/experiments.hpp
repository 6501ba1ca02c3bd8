#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vb/mesh.hpp"
#include "vb/problem.hpp"

namespace vb {

enum class MeshKind { vb, shishkin };
enum class PrecondMode { on, off, both };
enum class ErrorMethod { exact, double_mesh };
enum class ReportFormat { csv, md, json };

struct StudyConfig {
    std::vector<int> n_values = {64, 128, 256, 512, 1024, 2048, 4096, 8192};
    std::vector<double> eps_values = {1.0, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10};
    MeshKind mesh_kind = MeshKind::vb;
    double a = 5.0;  // default 4/beta + 1 applied in run_convergence_study when unset
    double q = 0.5;
    bool a_explicit = false;  // false: a = 4/beta + 1 from the problem's beta
    std::string problem = "layer-constant";
    PrecondMode precondition = PrecondMode::both;
    ErrorMethod error_method = ErrorMethod::exact;
    double shishkin_sigma = 2.0;
    std::string out_path;  // empty -> stdout
    ReportFormat format = ReportFormat::csv;
};

struct StudyRecord {
    int n;
    double eps;
    double error;                 // max-norm nodal error (exact or double-mesh)
    std::optional<double> rate;   // log2(e_{N/2} / e_N), needs the N/2 row
    double kappa_raw;             // kappa(A_N)
    double kappa_precond;         // kappa(Atilde_N)
    double inv_norm;              // ||Atilde_N^{-1}||
    double min_sigma;             // barrier certificate minimum
    double lemma1_max;            // max of the graded-step quantities g_i
    std::vector<std::string> flags;

    bool skipped() const;
};

struct StudyReport {
    StudyConfig config;
    double beta;  // problem's beta, recorded for provenance
    std::vector<StudyRecord> records;
    bool any_invariant_failed = false;
};

/// Runs the (N, eps) sweep: mesh, assembly, preconditioning, solve,
/// error, condition numbers, and the per-cell invariant checks. Cells
/// with a*eps >= q are skipped with flag "inadmissible"; individual
/// failures land in flags and never abort the sweep.
StudyReport run_convergence_study(const StudyConfig& cfg);

/// Same sweep with an explicitly supplied problem (for custom problems
/// assembled from coefficient presets; cfg.problem is used only as the
/// reported name).
StudyReport run_convergence_study(const StudyConfig& cfg, const TestProblem& problem);

/// Double-mesh error estimate: max_i |uN_i - u2N_{2i}| on nested meshes.
/// Throws std::invalid_argument when the 2N mesh does not contain the
/// N-mesh points (relative tolerance 1e-9).
double double_mesh_error(const VBMesh& mesh_n, std::span<const double> u_n,
                         const VBMesh& mesh_2n, std::span<const double> u_2n);

/// Writes the report in the requested format. CSV header:
///   N,eps,error,rate,kappa_raw,kappa_precond,inv_norm,min_sigma,lemma1_max,flags
/// Markdown renders per-eps rate tables plus the uniform-error row;
/// JSON is a faithful record dump. Throws std::invalid_argument on an
/// empty report, std::runtime_error on I/O failure (with path context).
void emit_report(const StudyReport& r, ReportFormat format, std::ostream& out);
void emit_report_to_file(const StudyReport& r, ReportFormat format, const std::string& path);

}  // namespace vb
