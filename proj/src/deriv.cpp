#include "tcalc/deriv.hpp"

#include "tcalc/errors.hpp"

#include <utility>

namespace tcalc {

VectorFunction::VectorFunction(std::vector<Expr> components, VarSpace domain)
    : components_(std::move(components)), domain_(std::move(domain)) {
    if (components_.empty())
        throw argument_error("a vector function needs at least one component");
    for (const Expr &c : components_)
        for (const std::string &v : c.variables())
            if (!domain_.contains(v))
                throw argument_error("component uses undeclared variable '" + v + "'");
}

VectorFunction VectorFunction::scalar_function(Expr f, VarSpace domain) {
    VectorFunction vf({std::move(f)}, std::move(domain));
    vf.scalar_ = true;
    return vf;
}

const Expr &VectorFunction::component(std::size_t i) const {
    if (i >= components_.size())
        throw argument_error("component index out of range");
    return components_[i];
}

DerivativeTensor::DerivativeTensor(Tensor<Expr> values, std::size_t value_axes,
                                   std::size_t deriv_axes, VarSpace vars)
    : values_(std::move(values)), value_axes_(value_axes), deriv_axes_(deriv_axes),
      vars_(std::move(vars)) {
    if (values_.rank() != value_axes_ + deriv_axes_)
        throw shape_error("rank " + std::to_string(values_.rank()) +
                          " does not equal value_axes + deriv_axes");
    for (std::size_t i = 0; i < deriv_axes_; ++i)
        if (values_.shape().extent(value_axes_ + i) != vars_.size())
            throw shape_error("derivative axes must have extent |vars| = " +
                              std::to_string(vars_.size()));
}

std::vector<std::size_t> DerivativeTensor::deriv_axis_list() const {
    std::vector<std::size_t> axes;
    for (std::size_t i = 0; i < deriv_axes_; ++i)
        axes.push_back(value_axes_ + i);
    return axes;
}

Tensor<Expr> derivative_step(const Tensor<Expr> &t, const VarSpace &vars) {
    std::vector<std::size_t> dims = t.shape().dims();
    dims.push_back(vars.size());
    Tensor<Expr> out{Shape(dims)};
    std::vector<std::size_t> idx(out.rank());
    for_each_index(t.shape(), [&](std::span<const std::size_t> i) {
        std::copy(i.begin(), i.end(), idx.begin());
        for (std::size_t j = 0; j < vars.size(); ++j) {
            idx.back() = j;
            out.at(idx) = differentiate(t.at(i), vars.name(j));
        }
    });
    return out;
}

DerivativeTensor derivative_step(const DerivativeTensor &t) {
    return {derivative_step(t.values(), t.vars()), t.value_axes(), t.deriv_axes() + 1,
            t.vars()};
}

namespace {

// Rank-1 component tensor for vector functions, rank-0 for scalar ones.
DerivativeTensor base_tensor(const VectorFunction &f) {
    if (f.is_scalar())
        return {Tensor<Expr>::scalar(f.component(0)), 0, 0, f.domain()};
    return {Tensor<Expr>(Shape{f.component_count()}, f.components()), 1, 0, f.domain()};
}

} // namespace

DerivativeTensor jacobian(const VectorFunction &g) {
    DerivativeTensor t{Tensor<Expr>(Shape{g.component_count()}, g.components()), 1, 0,
                       g.domain()};
    return derivative_step(t);
}

DerivativeTensor derivative_order(const VectorFunction &f, std::size_t k) {
    if (k < 1)
        throw argument_error("derivative order must be >= 1");
    DerivativeTensor t = base_tensor(f);
    for (std::size_t i = 0; i < k; ++i)
        t = derivative_step(t);
    return t;
}

DerivativeTensor hessian(const VectorFunction &f) {
    if (f.component_count() != 1)
        throw argument_error("hessian requires a scalar (single-component) function");
    DerivativeTensor t{Tensor<Expr>::scalar(f.component(0)), 0, 0, f.domain()};
    t = derivative_step(derivative_step(t));
    return t;
}

namespace {

// The tensor is a function over its whole declared space, so the point must
// cover every variable even if some entry happens not to mention it.
template <typename V>
void require_complete_point(const DerivativeTensor &t,
                            const std::map<std::string, V> &point) {
    for (const std::string &name : t.vars().names())
        if (point.find(name) == point.end())
            throw eval_error("missing value for variable '" + name + "'");
}

} // namespace

Tensor<double> eval_tensor(const DerivativeTensor &t,
                           const std::map<std::string, double> &point) {
    require_complete_point(t, point);
    return map_elements<double>(t.values(),
                                [&](const Expr &e) { return evaluate(e, point); });
}

Tensor<Rational> eval_tensor_exact(const DerivativeTensor &t,
                                   const std::map<std::string, Rational> &point) {
    require_complete_point(t, point);
    return map_elements<Rational>(t.values(),
                                  [&](const Expr &e) { return evaluate(e, point); });
}

} // namespace tcalc
