#pragma once

#include "tcalc/deriv.hpp"
#include "tcalc/expr.hpp"
#include "tcalc/fd.hpp"
#include "tcalc/rational.hpp"
#include "tcalc/tensor.hpp"

#include <json.hpp>

namespace tcalc {

// Tensors serialize as { "shape": [ints], "data": [elements] } with data in
// row-major order. Elements are JSON numbers for the floating-point domain;
// exact and symbolic elements are expression strings (integers may appear as
// plain JSON numbers). Domains are never coerced on the way back in: reading
// an element of the wrong kind raises domain_mismatch_error.

nlohmann::json to_json(const Tensor<double> &t);
nlohmann::json to_json(const Tensor<Rational> &t);
nlohmann::json to_json(const Tensor<Expr> &t);

Tensor<double> tensor_double_from_json(const nlohmann::json &j);
Tensor<Rational> tensor_rational_from_json(const nlohmann::json &j);
Tensor<Expr> tensor_expr_from_json(const nlohmann::json &j, const VarSpace &vars);

/// Tensor JSON plus {"value_axes", "deriv_axes", "vars"}.
nlohmann::json to_json(const DerivativeTensor &t);
DerivativeTensor derivative_tensor_from_json(const nlohmann::json &j);

/// {"max_abs_err", "max_rel_err", "worst_index", "pass"}.
nlohmann::json to_json(const CompareReport &r);

} // namespace tcalc
