#pragma once

#include "tcalc/expr.hpp"
#include "tcalc/tensor.hpp"

#include <string>

namespace tcalc {

/// Shortest representation with 12 significant digits ("%.12g").
std::string format_number(double v);

// Pretty printers for terminal output. Rank 0 and 1 print on one line,
// rank 2 prints one row per line, higher ranks fall back to one
// "[i,j,k] = v" line per element.
std::string format_tensor(const Tensor<double> &t);
std::string format_tensor(const Tensor<Expr> &t);

} // namespace tcalc
