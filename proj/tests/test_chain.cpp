#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "tcalc/chain.hpp"
#include "tcalc/errors.hpp"

#include <map>
#include <string>
#include <vector>

using namespace tcalc;

namespace {

const VarSpace xx{"x1", "x2"};
const VarSpace yy{"y1", "y2"};

Expr X(const std::string &text) { return parse(text, xx); }
Expr Y(const std::string &text) { return parse(text, yy); }

CompositionProblem rosenbrock() {
    return {VectorFunction::scalar_function(Y("(1-y1)^2 + 100*(y1^2-y2)^2"), yy),
            VectorFunction({X("x1"), X("x1^2 - x2")}, xx)};
}

/// Substitutes y <- g into every entry of a symbolic tensor, mirroring the
/// "evaluate at g" step from the outside for cross-checking.
Tensor<Expr> subst_tensor(const Tensor<Expr> &t, const CompositionProblem &p) {
    const std::map<std::string, Expr> m = tsup::inner_map(p);
    return map_elements<Expr>(t, [&](const Expr &e) { return substitute(e, m); });
}

} // namespace

TEST_CASE("composition problem validation") {
    const VectorFunction f2{{Y("y1"), Y("y2")}, yy};
    const VectorFunction g = rosenbrock().inner();
    CHECK_THROWS_AS(CompositionProblem(f2, g), argument_error);

    const VectorFunction f1 = VectorFunction::scalar_function(Y("y1 + y2"), yy);
    const VectorFunction g1{{X("x1")}, xx};
    CHECK_THROWS_AS(CompositionProblem(f1, g1), shape_error);

    const CompositionProblem p = rosenbrock();
    CHECK(p.outer_arity() == 2);
    CHECK(p.inner_arity() == 2);
    CHECK(p.outer().is_scalar());
}

TEST_CASE("plain single-component outer functions are accepted as scalar") {
    const VectorFunction not_flagged{{Y("y1^2")}, yy};
    const CompositionProblem p{not_flagged, rosenbrock().inner()};
    CHECK(p.outer().is_scalar());
    CHECK(chain_second(p).value_axes() == 0);
}

TEST_CASE("compose substitutes the inner map") {
    CHECK(compose(rosenbrock()) == X("(1-x1)^2 + 100*x2^2"));
}

TEST_CASE("chain_first examples") {
    const DerivativeTensor d = chain_first(rosenbrock());
    CHECK(d.value_axes() == 0);
    CHECK(d.deriv_axes() == 1);
    CHECK(d.vars() == xx);
    CHECK(d.values() == tsup::expr_tensor(Shape{2}, {"2*x1 - 2", "200*x2"}, xx));

    // Identity inner map: the gradient of f with x-names in place of y-names.
    const CompositionProblem ident{
        VectorFunction::scalar_function(Y("y1^2 + y2^3"), yy),
        VectorFunction({X("x1"), X("x2")}, xx)};
    CHECK(chain_first(ident).values() ==
          tsup::expr_tensor(Shape{2}, {"2*x1", "3*x2^2"}, xx));

    // Linear outer: rows of the Jacobian combine with f's coefficients.
    const CompositionProblem linf{
        VectorFunction::scalar_function(Y("2*y1 + 3*y2"), yy),
        rosenbrock().inner()};
    CHECK(chain_first(linf).values() ==
          tsup::expr_tensor(Shape{2}, {"6*x1 + 2", "-3"}, xx));
}

TEST_CASE("chain_first equals the gradient of the substituted composition") {
    tsup::Rng rng(0x40051u);
    for (int round = 0; round < 20; ++round) {
        const CompositionProblem p = tsup::random_problem(rng);
        const Tensor<Expr> via_chain = chain_first(p).values();
        const Tensor<Expr> direct = derivative_step(
            Tensor<Expr>::scalar(compose(p)), p.inner().domain());
        CHECK(tsup::tensors_expr_equal(via_chain, direct));
    }
}

TEST_CASE("chain_second on the Rosenbrock problem is constant") {
    const DerivativeTensor d = chain_second(rosenbrock());
    CHECK(d.value_axes() == 0);
    CHECK(d.deriv_axes() == 2);
    CHECK(d.values() == tsup::expr_tensor(Shape{2, 2}, {"2", "0", "0", "200"}, xx));
}

TEST_CASE("chain_second terms match the hand computation") {
    const auto [t1, t2] = chain_second_terms(rosenbrock());
    CHECK(t1 == tsup::expr_tensor(Shape{2, 2}, {"400*x2 + 2", "0", "0", "200"}, xx));
    CHECK(t2 == tsup::expr_tensor(Shape{2, 2}, {"-400*x2", "0", "0", "0"}, xx));
}

TEST_CASE("linear inner map kills the second term") {
    tsup::Rng rng(0x40052u);
    for (int round = 0; round < 10; ++round) {
        const auto m = static_cast<std::size_t>(tsup::rand_int(rng, 1, 3));
        const auto n = static_cast<std::size_t>(tsup::rand_int(rng, 1, 3));
        const VarSpace x = tsup::numbered_vars("x", m);
        const VarSpace y = tsup::numbered_vars("y", n);
        std::vector<Expr> g;
        for (std::size_t k = 0; k < n; ++k)
            g.push_back(tsup::random_polynomial(rng, x, {1, 3, 3}));
        const CompositionProblem p{
            VectorFunction::scalar_function(
                tsup::random_polynomial(rng, y, {3, 3, 2}), y),
            VectorFunction(g, x)};

        const auto [t1, t2] = chain_second_terms(p);
        for (std::size_t i = 0; i < t2.size(); ++i)
            CHECK(t2.flat(i).is_zero());
        CHECK(tsup::tensors_expr_equal(chain_second(p).values(), t1));
    }
}

TEST_CASE("linear outer function leaves only the curvature of g") {
    // f = 2*y1 - y2 picks a fixed combination of the component Hessians.
    const CompositionProblem p{
        VectorFunction::scalar_function(Y("2*y1 - y2"), yy),
        VectorFunction({X("x1^2*x2"), X("x2^3")}, xx)};
    const auto [t1, t2] = chain_second_terms(p);
    for (std::size_t i = 0; i < t1.size(); ++i)
        CHECK(t1.flat(i).is_zero());

    const Tensor<Expr> h1 = hessian(VectorFunction::scalar_function(
                                        X("x1^2*x2"), xx)).values();
    const Tensor<Expr> h2 = hessian(VectorFunction::scalar_function(
                                        X("x2^3"), xx)).values();
    const Tensor<Expr> two = Tensor<Expr>::scalar(Y("2"));
    const Tensor<Expr> minus_one = Tensor<Expr>::scalar(Y("-1"));
    const Tensor<Expr> want =
        dot(two, h1, {}) + dot(minus_one, h2, {});
    CHECK(tsup::tensors_expr_equal(chain_second(p).values(), want));
}

TEST_CASE("hessian_chain_matrix examples") {
    CHECK(hessian_chain_matrix(rosenbrock()).values() ==
          tsup::expr_tensor(Shape{2, 2}, {"2", "0", "0", "200"}, xx));

    const CompositionProblem ident{
        VectorFunction::scalar_function(Y("(1-y1)^2 + 100*(y1^2-y2)^2"), yy),
        VectorFunction({X("x1"), X("x2")}, xx)};
    const Tensor<Expr> hf_in_x = subst_tensor(
        derivative_order(ident.outer(), 2).values(), ident);
    CHECK(tsup::tensors_expr_equal(hessian_chain_matrix(ident).values(), hf_in_x));

    // Projection outer function: only the first component Hessian survives.
    const CompositionProblem proj{
        VectorFunction::scalar_function(Y("y1"), yy),
        VectorFunction({X("x1^3 - x1*x2"), X("x2^2")}, xx)};
    const Tensor<Expr> hg1 = hessian(VectorFunction::scalar_function(
                                         X("x1^3 - x1*x2"), xx)).values();
    CHECK(tsup::tensors_expr_equal(hessian_chain_matrix(proj).values(), hg1));
}

TEST_CASE("direct_hessian examples") {
    CHECK(direct_hessian(rosenbrock()).values() ==
          tsup::expr_tensor(Shape{2, 2}, {"2", "0", "0", "200"}, xx));

    const CompositionProblem constant{
        VectorFunction::scalar_function(Y("7"), yy), rosenbrock().inner()};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(direct_hessian(constant).values().flat(i).is_zero());

    const CompositionProblem collapsing{
        VectorFunction::scalar_function(Y("y1 + y2"), yy),
        VectorFunction({X("x1"), X("x1")}, xx)};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(direct_hessian(collapsing).values().flat(i).is_zero());
}

TEST_CASE("the three second-order routes agree on random problems") {
    tsup::Rng rng(0x40053u);
    const tsup::ProblemParams params{3, 3, {4, 3, 2}, {3, 3, 2}};
    for (int round = 0; round < 40; ++round) {
        const CompositionProblem p = tsup::random_problem(rng, params);
        const Tensor<Expr> chain = chain_second(p).values();
        CHECK(tsup::tensors_expr_equal(chain, hessian_chain_matrix(p).values()));
        CHECK(tsup::tensors_expr_equal(chain, direct_hessian(p).values()));
        CHECK(is_symmetric_in_axes(chain, {0, 1}));
    }
}

TEST_CASE("pairing either derivative axis of the outer Hessian first") {
    tsup::Rng rng(0x40054u);
    for (int round = 0; round < 15; ++round) {
        const CompositionProblem p = tsup::random_problem(rng);
        const Tensor<Expr> hf_at_g = subst_tensor(
            derivative_order(p.outer(), 2).values(), p);
        const Tensor<Expr> jg = jacobian(p.inner()).values();

        const Tensor<Expr> via_second_axis =
            dot(dot(hf_at_g, jg, {{1, 0}}), jg, {{0, 0}});
        const Tensor<Expr> via_first_axis =
            dot(dot(hf_at_g, jg, {{0, 0}}), jg, {{0, 0}});
        CHECK(tsup::tensors_expr_equal(via_second_axis, via_first_axis));
        CHECK(tsup::tensors_expr_equal(via_second_axis,
                                       chain_second_terms(p).first));
    }
}

TEST_CASE("product rule examples") {
    const Tensor<Expr> a{Shape{1}, {X("x1")}};
    const Tensor<Expr> b{Shape{1}, {X("x2")}};
    const auto [lhs, rhs] = product_rule_sides(a, b, {{0, 0}}, xx);
    CHECK(lhs.values() == tsup::expr_tensor(Shape{2}, {"x2", "x1"}, xx));
    CHECK(rhs.values() == tsup::expr_tensor(Shape{2}, {"x2", "x1"}, xx));
    CHECK(lhs.value_axes() == 0);
    CHECK(lhs.deriv_axes() == 1);

    // A constant left factor: only the a . Db contribution survives, and the
    // sides still agree.
    const Tensor<Expr> c = tsup::expr_tensor(Shape{2, 2}, {"1", "2", "3", "4"}, xx);
    const Tensor<Expr> m =
        tsup::expr_tensor(Shape{2, 2}, {"x1^2", "x1*x2", "0", "x2^3"}, xx);
    const auto [clhs, crhs] = product_rule_sides(c, m, {{1, 0}}, xx);
    CHECK(tsup::tensors_expr_equal(clhs.values(), crhs.values()));
}

TEST_CASE("product rule on random matrix pairs under the matmul pairing") {
    tsup::Rng rng(0x40055u);
    for (int round = 0; round < 15; ++round) {
        const Tensor<Expr> a =
            tsup::random_expr_tensor(rng, Shape{2, 2}, xx, {2, 2, 2});
        const Tensor<Expr> b =
            tsup::random_expr_tensor(rng, Shape{2, 2}, xx, {2, 2, 2});
        const auto [lhs, rhs] = product_rule_sides(a, b, {{1, 0}}, xx);
        CHECK(tsup::tensors_expr_equal(lhs.values(), rhs.values()));
    }
}

TEST_CASE("product rule on random shapes and pairings") {
    tsup::Rng rng(0x40056u);
    for (int round = 0; round < 25; ++round) {
        const auto m = static_cast<std::size_t>(tsup::rand_int(rng, 1, 2));
        const VarSpace vars = tsup::numbered_vars("x", m);
        const std::size_t shared = static_cast<std::size_t>(tsup::rand_int(rng, 1, 3));

        std::vector<std::size_t> da{shared}, db;
        if (tsup::rand_bool(rng))
            da.push_back(static_cast<std::size_t>(tsup::rand_int(rng, 1, 3)));
        if (tsup::rand_bool(rng))
            db.push_back(static_cast<std::size_t>(tsup::rand_int(rng, 1, 3)));
        db.push_back(shared);

        const Tensor<Expr> a =
            tsup::random_expr_tensor(rng, Shape(da), vars, {2, 2, 2});
        const Tensor<Expr> b =
            tsup::random_expr_tensor(rng, Shape(db), vars, {2, 2, 2});
        const AxisPairing pairing{{0, db.size() - 1}};
        const auto [lhs, rhs] = product_rule_sides(a, b, pairing, vars);
        CHECK(tsup::tensors_expr_equal(lhs.values(), rhs.values()));
    }
}
