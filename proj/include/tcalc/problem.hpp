#pragma once

#include "tcalc/chain.hpp"
#include "tcalc/expr.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tcalc {

/// A composition task read from a problem file. The file is line oriented:
///
///     # Rosenbrock banana composed with a warp
///     xvars: x1 x2
///     yvars: y1 y2
///     f: (1 - y1)^2 + 100*(y2)^2
///     g y1: x1
///     g y2: x1^2 - x2
///     point: 0.5 0.5
///
/// Blank lines and '#' comments are skipped and sections may appear in any
/// order; expressions are only parsed once both variable lists are known.
/// "xvars", "yvars" and "f" must each appear exactly once, the "g" lines
/// must cover the y variables exactly, and each optional "point" line needs
/// one coordinate per x variable. Violations raise parse_error with the
/// offending line number.
struct ProblemFile {
    VarSpace x_vars{std::vector<std::string>{"x"}};
    VarSpace y_vars{std::vector<std::string>{"y"}};
    Expr outer;                     // f, over y_vars
    std::vector<Expr> inner;        // g components, aligned with y_vars order
    std::vector<std::vector<double>> points;

    CompositionProblem to_problem() const;
};

ProblemFile parse_problem(std::istream &in, const std::string &name);
ProblemFile parse_problem_file(const std::string &path);

} // namespace tcalc
