#include "tcalc/serialize.hpp"

#include "tcalc/errors.hpp"

#include <cstdint>
#include <limits>

namespace tcalc {

namespace {

using nlohmann::json;

json shape_to_json(const Shape &s) {
    json dims = json::array();
    for (std::size_t e : s.dims())
        dims.push_back(e);
    return dims;
}

Shape shape_from_json(const json &j) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("data") ||
        !j["shape"].is_array() || !j["data"].is_array())
        throw argument_error("tensor json must be {\"shape\": [...], \"data\": [...]}");
    std::vector<std::size_t> dims;
    for (const json &e : j["shape"]) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            throw argument_error("tensor shape entries must be positive integers");
        dims.push_back(static_cast<std::size_t>(e.get<std::int64_t>()));
    }
    return Shape(dims);
}

bool fits_int64(const Rational &r) {
    if (!rational_is_integer(r))
        return false;
    const Integer n = numerator(r);
    return n >= std::numeric_limits<std::int64_t>::min() &&
           n <= std::numeric_limits<std::int64_t>::max();
}

json rational_element(const Rational &r) {
    if (fits_int64(r))
        return numerator(r).convert_to<std::int64_t>();
    return rational_to_string(r);
}

Rational rational_from_element(const json &e) {
    if (e.is_number_integer())
        return Rational(e.get<std::int64_t>());
    if (e.is_number_float())
        return rational_from_double(e.get<double>());
    if (e.is_string()) {
        // Expression string restricted to a constant.
        const Expr c = parse(e.get<std::string>(), VarSpace{});
        return c.constant_value();
    }
    throw domain_mismatch_error("expected an exact numeric element, got " +
                                std::string(e.type_name()));
}

template <typename T>
std::vector<T> data_from_json(const json &j, const Shape &shape,
                              T (*element)(const json &)) {
    const json &data = j["data"];
    if (data.size() != shape.count())
        throw shape_error("tensor data length " + std::to_string(data.size()) +
                          " does not match shape " + shape.str());
    std::vector<T> out;
    out.reserve(data.size());
    for (const json &e : data)
        out.push_back(element(e));
    return out;
}

} // namespace

json to_json(const Tensor<double> &t) {
    json data = json::array();
    for (std::size_t i = 0; i < t.size(); ++i)
        data.push_back(t.flat(i));
    return json{{"shape", shape_to_json(t.shape())}, {"data", std::move(data)}};
}

json to_json(const Tensor<Rational> &t) {
    json data = json::array();
    for (std::size_t i = 0; i < t.size(); ++i)
        data.push_back(rational_element(t.flat(i)));
    return json{{"shape", shape_to_json(t.shape())}, {"data", std::move(data)}};
}

json to_json(const Tensor<Expr> &t) {
    json data = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Expr &e = t.flat(i);
        if (e.kind() == Expr::Kind::Constant && fits_int64(e.constant_value()))
            data.push_back(numerator(e.constant_value()).convert_to<std::int64_t>());
        else
            data.push_back(e.str());
    }
    return json{{"shape", shape_to_json(t.shape())}, {"data", std::move(data)}};
}

Tensor<double> tensor_double_from_json(const json &j) {
    const Shape shape = shape_from_json(j);
    auto element = +[](const json &e) {
        if (!e.is_number())
            throw domain_mismatch_error("expected a numeric element, got " +
                                        std::string(e.type_name()));
        return e.get<double>();
    };
    return {shape, data_from_json<double>(j, shape, element)};
}

Tensor<Rational> tensor_rational_from_json(const json &j) {
    const Shape shape = shape_from_json(j);
    return {shape, data_from_json<Rational>(j, shape, &rational_from_element)};
}

Tensor<Expr> tensor_expr_from_json(const json &j, const VarSpace &vars) {
    const Shape shape = shape_from_json(j);
    const json &data = j["data"];
    if (data.size() != shape.count())
        throw shape_error("tensor data length does not match shape");
    std::vector<Expr> out;
    out.reserve(data.size());
    for (const json &e : data) {
        if (e.is_number_integer())
            out.push_back(Expr::constant(Rational(e.get<std::int64_t>())));
        else if (e.is_number_float())
            out.push_back(Expr::constant(rational_from_double(e.get<double>())));
        else if (e.is_string())
            out.push_back(parse(e.get<std::string>(), vars));
        else
            throw domain_mismatch_error("expected an expression element, got " +
                                        std::string(e.type_name()));
    }
    return {shape, std::move(out)};
}

json to_json(const DerivativeTensor &t) {
    json j = to_json(t.values());
    j["value_axes"] = t.value_axes();
    j["deriv_axes"] = t.deriv_axes();
    j["vars"] = t.vars().names();
    return j;
}

DerivativeTensor derivative_tensor_from_json(const json &j) {
    if (!j.is_object() || !j.contains("value_axes") || !j.contains("deriv_axes") ||
        !j.contains("vars"))
        throw argument_error(
            "derivative tensor json needs value_axes, deriv_axes and vars");
    const VarSpace vars{j["vars"].get<std::vector<std::string>>()};
    return {tensor_expr_from_json(j, vars), j["value_axes"].get<std::size_t>(),
            j["deriv_axes"].get<std::size_t>(), vars};
}

json to_json(const CompareReport &r) {
    return json{{"max_abs_err", r.max_abs_err},
                {"max_rel_err", r.max_rel_err},
                {"worst_index", r.worst_index},
                {"pass", r.pass}};
}

} // namespace tcalc
