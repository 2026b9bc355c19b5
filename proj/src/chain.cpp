#include "tcalc/chain.hpp"

#include "tcalc/errors.hpp"

#include <numeric>

namespace tcalc {

CompositionProblem::CompositionProblem(VectorFunction outer, VectorFunction inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (outer_.component_count() != 1)
        throw argument_error("outer function must be scalar (one component)");
    if (inner_.component_count() != outer_.domain().size())
        throw shape_error("inner map has " +
                          std::to_string(inner_.component_count()) +
                          " components but outer expects " +
                          std::to_string(outer_.domain().size()));
    if (!outer_.is_scalar())
        outer_ = VectorFunction::scalar_function(outer_.component(0), outer_.domain());
}

namespace {

// y_k -> g^k, in the order of f's variable space.
std::map<std::string, Expr> component_map(const CompositionProblem &p) {
    std::map<std::string, Expr> map;
    for (std::size_t k = 0; k < p.outer_arity(); ++k)
        map.emplace(p.outer().domain().name(k), p.inner().component(k));
    return map;
}

// Evaluates a derivative tensor of f "at g": substitutes y <- g elementwise.
// Substitution happens before any dot product; it does not commute with
// differentiation in x.
Tensor<Expr> at_inner(const Tensor<Expr> &t, const std::map<std::string, Expr> &map) {
    std::vector<Expr> data;
    data.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        data.push_back(substitute(t.flat(i), map));
    return {t.shape(), std::move(data)};
}

} // namespace

Expr compose(const CompositionProblem &p) {
    return substitute(p.outer().component(0), component_map(p));
}

DerivativeTensor chain_first(const CompositionProblem &p) {
    const auto map = component_map(p);
    const Tensor<Expr> grad_f_at_g = at_inner(derivative_order(p.outer(), 1).values(), map);
    const Tensor<Expr> jac_g = jacobian(p.inner()).values(); // (n, m)
    // Pair f's derivative axis with g's component axis.
    Tensor<Expr> result = dot(grad_f_at_g, jac_g, {{0, 0}});
    return {std::move(result), 0, 1, p.inner().domain()};
}

std::pair<Tensor<Expr>, Tensor<Expr>> chain_second_terms(const CompositionProblem &p) {
    const auto map = component_map(p);
    const Tensor<Expr> jac_g = jacobian(p.inner()).values();            // (n, m)
    const Tensor<Expr> hess_f_at_g =
        at_inner(derivative_order(p.outer(), 2).values(), map);         // (n, n)
    const Tensor<Expr> grad_f_at_g =
        at_inner(derivative_order(p.outer(), 1).values(), map);         // (n)
    const Tensor<Expr> d2_g = derivative_order(p.inner(), 2).values();  // (n, m, m)

    // First Jacobian copy contracts the second f-axis, the second copy the
    // surviving one. Symmetry of the Hessian makes the order immaterial.
    const Tensor<Expr> partial = dot(hess_f_at_g, jac_g, {{1, 0}}); // (n, m)
    Tensor<Expr> term1 = dot(partial, jac_g, {{0, 0}});             // (m, m)

    Tensor<Expr> term2 = dot(grad_f_at_g, d2_g, {{0, 0}}); // (m, m)
    return {std::move(term1), std::move(term2)};
}

DerivativeTensor chain_second(const CompositionProblem &p) {
    auto [term1, term2] = chain_second_terms(p);
    return {term1 + term2, 0, 2, p.inner().domain()};
}

namespace {

// Plain rank-2 helpers, deliberately independent of the generalized dot.

Tensor<Expr> matmul2(const Tensor<Expr> &a, const Tensor<Expr> &b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape().extent(1) != b.shape().extent(0))
        throw shape_error("matmul requires shapes (r,k) and (k,c)");
    const std::size_t r = a.shape().extent(0);
    const std::size_t k = a.shape().extent(1);
    const std::size_t c = b.shape().extent(1);
    Tensor<Expr> out{Shape{r, c}};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Expr acc;
            for (std::size_t t = 0; t < k; ++t)
                acc = acc + a.at({i, t}) * b.at({t, j});
            out.at({i, j}) = acc;
        }
    return out;
}

Tensor<Expr> transpose2(const Tensor<Expr> &a) {
    if (a.rank() != 2)
        throw shape_error("transpose requires rank 2");
    Tensor<Expr> out{Shape{a.shape().extent(1), a.shape().extent(0)}};
    for (std::size_t i = 0; i < a.shape().extent(0); ++i)
        for (std::size_t j = 0; j < a.shape().extent(1); ++j)
            out.at({j, i}) = a.at({i, j});
    return out;
}

Tensor<Expr> scale(const Expr &c, const Tensor<Expr> &a) {
    std::vector<Expr> data;
    data.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        data.push_back(c * a.flat(i));
    return {a.shape(), std::move(data)};
}

} // namespace

DerivativeTensor hessian_chain_matrix(const CompositionProblem &p) {
    const auto map = component_map(p);
    const Tensor<Expr> jac_g = jacobian(p.inner()).values();    // (n, m)
    const Tensor<Expr> hess_f_at_g =
        at_inner(hessian(p.outer()).values(), map);             // (n, n)
    const Tensor<Expr> grad_f_at_g =
        at_inner(derivative_order(p.outer(), 1).values(), map); // (n)

    Tensor<Expr> result = matmul2(matmul2(transpose2(jac_g), hess_f_at_g), jac_g);
    for (std::size_t k = 0; k < p.outer_arity(); ++k) {
        const VectorFunction gk =
            VectorFunction::scalar_function(p.inner().component(k), p.inner().domain());
        result = result + scale(grad_f_at_g.at({k}), hessian(gk).values());
    }
    return {std::move(result), 0, 2, p.inner().domain()};
}

DerivativeTensor direct_hessian(const CompositionProblem &p) {
    const VectorFunction composed =
        VectorFunction::scalar_function(compose(p), p.inner().domain());
    return hessian(composed);
}

std::pair<DerivativeTensor, DerivativeTensor>
product_rule_sides(const Tensor<Expr> &a, const Tensor<Expr> &b,
                   const AxisPairing &pairing, const VarSpace &vars) {
    pairing.validate(a.shape(), b.shape());

    const Tensor<Expr> product = dot(a, b, pairing);
    Tensor<Expr> lhs = derivative_step(product, vars);

    const Tensor<Expr> da = derivative_step(a, vars);
    const Tensor<Expr> db = derivative_step(b, vars);
    // The appended axis of da is unpaired, so it lands between a's and b's
    // surviving axes; rotate it to the end to match the left side.
    Tensor<Expr> term1 = dot(da, b, pairing);
    const std::size_t a_free = a.rank() - pairing.size();
    std::vector<std::size_t> perm;
    for (std::size_t j = 0; j < term1.rank(); ++j)
        if (j != a_free)
            perm.push_back(j);
    perm.push_back(a_free);
    term1 = permute_axes(term1, perm);

    const Tensor<Expr> term2 = dot(a, db, pairing);
    Tensor<Expr> rhs = term1 + term2;

    const std::size_t free_rank = product.rank();
    return {DerivativeTensor(std::move(lhs), free_rank, 1, vars),
            DerivativeTensor(std::move(rhs), free_rank, 1, vars)};
}

} // namespace tcalc
