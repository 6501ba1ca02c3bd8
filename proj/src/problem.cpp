#include "vb/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vb {

std::vector<ProblemViolation> validate_problem(const TestProblem& p, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("validate_problem: grid_size must be >= 2");

    std::vector<ProblemViolation> out;
    for (int i = 0; i <= grid_size; ++i) {
        const double x = static_cast<double>(i) / grid_size;
        const double bx = p.b(x);
        if (!(bx >= p.beta)) out.push_back({"b(x) >= beta", x, bx});
        const double cx = p.c(x);
        if (!(cx >= 0.0)) out.push_back({"c(x) >= 0", x, cx});
    }
    if (!(p.beta > 0.0)) out.push_back({"beta > 0", 0.0, p.beta});
    if (p.has_exact()) {
        const double eps = 1e-3;  // representative value; boundary values are eps-independent
        const double u0 = p.exact(0.0, eps);
        const double u1 = p.exact(1.0, eps);
        if (std::abs(u0) > 1e-12) out.push_back({"exact(0,eps) = 0", 0.0, u0});
        if (std::abs(u1) > 1e-12) out.push_back({"exact(1,eps) = 0", 1.0, u1});
    }
    return out;
}

TestProblem builtin_layer_problem() {
    TestProblem p;
    p.name = "layer-constant";
    p.b = [](double) { return 1.0; };
    p.c = [](double) { return 0.0; };
    p.f = [](double) { return 1.0; };
    p.beta = 1.0;
    // u(x) = (1 - e^{-x/eps})/(1 - e^{-1/eps}) - x, written with expm1 so
    // the layer is evaluated accurately for tiny eps.
    p.exact = [](double x, double eps) {
        return std::expm1(-x / eps) / std::expm1(-1.0 / eps) - x;
    };
    return p;
}

CoeffFn parse_coefficient(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("coefficient spec must be 'const:V' or 'poly:a0,a1,...': " + spec);
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);

    std::vector<double> vals;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad number in coefficient spec: " + tok);
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("coefficient spec has no values: " + spec);

    if (kind == "const") {
        if (vals.size() != 1) throw std::invalid_argument("const preset takes one value: " + spec);
        const double v = vals[0];
        return [v](double) { return v; };
    }
    if (kind == "poly") {
        return [vals](double x) {
            double acc = 0.0;
            for (auto it = vals.rbegin(); it != vals.rend(); ++it) acc = acc * x + *it;
            return acc;
        };
    }
    throw std::invalid_argument("unknown coefficient preset '" + kind + "'");
}

TestProblem problem_by_name(const std::string& name) {
    if (name == "layer-constant") return builtin_layer_problem();
    throw std::invalid_argument("unknown problem '" + name + "' (available: layer-constant)");
}

}  // namespace vb
