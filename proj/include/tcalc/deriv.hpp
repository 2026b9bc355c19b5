#pragma once

#include "tcalc/expr.hpp"
#include "tcalc/tensor.hpp"

#include <map>
#include <string>
#include <vector>

namespace tcalc {

/// g = (g^1, ..., g^n): R^m -> R^n, componentwise expressions over an ordered
/// domain space. A scalar function is the single-component case constructed
/// via scalar_function(); its derivative tensors then carry no component axis.
class VectorFunction {
  public:
    VectorFunction(std::vector<Expr> components, VarSpace domain);

    static VectorFunction scalar_function(Expr f, VarSpace domain);

    const std::vector<Expr> &components() const { return components_; }
    const Expr &component(std::size_t i) const;
    std::size_t component_count() const { return components_.size(); }
    const VarSpace &domain() const { return domain_; }
    bool is_scalar() const { return scalar_; }

  private:
    std::vector<Expr> components_;
    VarSpace domain_;
    bool scalar_ = false;
};

/// A tensor of expressions together with its axis roles: `value_axes` leading
/// axes index components of the underlying quantity, `deriv_axes` trailing
/// axes were appended by differentiation (in differentiation order, each of
/// extent |vars|). Derivative axes always come LAST; implementations that put
/// the derivative axis first need a permute_axes to compare.
class DerivativeTensor {
  public:
    DerivativeTensor(Tensor<Expr> values, std::size_t value_axes,
                     std::size_t deriv_axes, VarSpace vars);

    const Tensor<Expr> &values() const { return values_; }
    std::size_t value_axes() const { return value_axes_; }
    std::size_t deriv_axes() const { return deriv_axes_; }
    const VarSpace &vars() const { return vars_; }

    /// Positions of the derivative axes (the trailing ones).
    std::vector<std::size_t> deriv_axis_list() const;

  private:
    Tensor<Expr> values_;
    std::size_t value_axes_;
    std::size_t deriv_axes_;
    VarSpace vars_;
};

/// Appends one derivative axis (extent |vars|) as the last axis:
/// out[i, j] = d in[i] / d vars[j].
Tensor<Expr> derivative_step(const Tensor<Expr> &t, const VarSpace &vars);
DerivativeTensor derivative_step(const DerivativeTensor &t);

/// Jacobian, shape (n, m): row i is the gradient of component g^i.
DerivativeTensor jacobian(const VectorFunction &g);

/// k-th derivative tensor: shape (n, m, ..., m) with k trailing m-axes, or
/// (m, ..., m) for a scalar function (component axis elided).
DerivativeTensor derivative_order(const VectorFunction &f, std::size_t k);

/// Second derivative of a scalar function, shape (m, m), symmetric.
DerivativeTensor hessian(const VectorFunction &f);

/// Elementwise numeric evaluation; the point must assign every domain variable.
Tensor<double> eval_tensor(const DerivativeTensor &t,
                           const std::map<std::string, double> &point);
/// Exact variant.
Tensor<Rational> eval_tensor_exact(const DerivativeTensor &t,
                                   const std::map<std::string, Rational> &point);

} // namespace tcalc
