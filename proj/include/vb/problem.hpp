#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vb {

using CoeffFn = std::function<double(double)>;
using ExactFn = std::function<double(double, double)>;  // (x, epsilon)

/// A two-point boundary-value problem
///   -eps u'' - b(x) u' + c(x) u = f(x) on (0,1),  u(0) = u(1) = 0,
/// with b >= beta > 0 and c >= 0. Coefficients are plain callables;
/// `exact`, when present, is the analytic solution as a function of
/// (x, epsilon) and must vanish at both endpoints.
struct TestProblem {
    std::string name;
    CoeffFn b;
    CoeffFn c;
    CoeffFn f;
    double beta = 1.0;
    ExactFn exact;  // empty when no closed-form solution is known

    bool has_exact() const { return static_cast<bool>(exact); }
};

/// One violated admissibility condition found by validate_problem.
struct ProblemViolation {
    std::string condition;  // e.g. "b(x) >= beta"
    double x;               // sample point where it failed
    double value;           // offending value
};

/// Samples b and c at grid_size+1 equidistant points and reports every
/// violation of b(x) >= beta or c(x) >= 0. If an exact solution is
/// attached, also checks exact(0,eps) = exact(1,eps) = 0 at a
/// representative eps. An empty result means the problem is admissible.
std::vector<ProblemViolation> validate_problem(const TestProblem& p, int grid_size);

/// The constant-coefficient layer problem b=1, c=0, f=1, beta=1 with
/// exact solution u(x) = (1 - e^{-x/eps})/(1 - e^{-1/eps}) - x.
TestProblem builtin_layer_problem();

/// Coefficient preset parser for CLI/config use. Accepts
///   "const:V"          -> constant V
///   "poly:a0,a1,..."   -> a0 + a1 x + a2 x^2 + ...
/// Throws std::invalid_argument on malformed input.
CoeffFn parse_coefficient(const std::string& spec);

/// Look up a built-in problem by CLI name ("layer-constant").
/// Throws std::invalid_argument for unknown names.
TestProblem problem_by_name(const std::string& name);

}  // namespace vb
