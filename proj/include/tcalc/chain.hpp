#pragma once

#include "tcalc/deriv.hpp"

#include <utility>

namespace tcalc {

/// A composition f(g(x)): scalar outer f over the y-space (size n), inner map
/// g with one component per y-variable, over the x-space (size m).
class CompositionProblem {
  public:
    CompositionProblem(VectorFunction outer, VectorFunction inner);

    const VectorFunction &outer() const { return outer_; }
    const VectorFunction &inner() const { return inner_; }

    /// y-space size n.
    std::size_t outer_arity() const { return outer_.domain().size(); }
    /// x-space size m.
    std::size_t inner_arity() const { return inner_.domain().size(); }

  private:
    VectorFunction outer_;
    VectorFunction inner_;
};

/// f with every y-variable replaced by its g component; an expression in x.
Expr compose(const CompositionProblem &p);

/// First-order chain rule: the gradient of f(g(x)) as the dot product of the
/// substituted gradient of f with the Jacobian of g, pairing f's derivative
/// axis against g's component axis. Shape (m).
DerivativeTensor chain_first(const CompositionProblem &p);

/// The two second-order terms, in order: the substituted Hessian of f dotted
/// twice with the Jacobian of g, and the substituted gradient of f dotted with
/// the second derivative tensor of g. Both shape (m, m).
std::pair<Tensor<Expr>, Tensor<Expr>> chain_second_terms(const CompositionProblem &p);

/// Second-order chain rule: the sum of the two terms above. Shape (m, m),
/// symmetric.
DerivativeTensor chain_second(const CompositionProblem &p);

/// Same quantity via rank-2 matrix algebra only (transposes and classic
/// matrix products, no generalized dot): Jg^T * Hf(g) * Jg plus the gradient-
/// weighted sum of the component Hessians of g.
DerivativeTensor hessian_chain_matrix(const CompositionProblem &p);

/// Oracle route: substitute y <- g into f, then differentiate twice.
DerivativeTensor direct_hessian(const CompositionProblem &p);

/// Both sides of the tensor product rule for d(a . b): the left side
/// differentiates the dot product, the right side is (da . b) + (a . db) with
/// the derivative axis moved last in both. The sides must agree elementwise.
std::pair<DerivativeTensor, DerivativeTensor>
product_rule_sides(const Tensor<Expr> &a, const Tensor<Expr> &b,
                   const AxisPairing &pairing, const VarSpace &vars);

} // namespace tcalc
