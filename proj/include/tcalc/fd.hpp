#pragma once

#include "tcalc/tensor.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace tcalc {

/// Central-difference step and relative-error bound used for comparisons.
/// The default step balances truncation (~h^2) against cancellation (~eps/h^2)
/// for doubles; use tolerance 1e-6 for quadratic-dominated checks and 1e-4
/// for general polynomials.
struct FDConfig {
    double step = 1e-4;
    double tolerance = 1e-4;
};

using ScalarFn = std::function<double(const std::vector<double> &)>;

/// Central differences, component j = (f(p + h e_j) - f(p - h e_j)) / (2h).
Tensor<double> fd_gradient(const ScalarFn &f, const std::vector<double> &point,
                           const FDConfig &cfg);

/// Second-order central stencil per entry, then symmetrized by averaging with
/// the transpose. Exact on quadratics up to roundoff.
Tensor<double> fd_hessian(const ScalarFn &f, const std::vector<double> &point,
                          const FDConfig &cfg);

/// Entrywise comparison summary. Relative error uses max(|a|, |b|, 1) as the
/// denominator; pass means max relative error <= tolerance.
struct CompareReport {
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    std::vector<std::size_t> worst_index;
    bool pass = true;
};

CompareReport compare_tensors(const Tensor<double> &a, const Tensor<double> &b,
                              double tolerance);

} // namespace tcalc
