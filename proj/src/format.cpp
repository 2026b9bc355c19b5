#include "tcalc/format.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace tcalc {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string element_str(const double &v) { return format_number(v); }
std::string element_str(const Expr &e) { return e.str(); }

template <typename T> std::string format_impl(const Tensor<T> &t) {
    std::ostringstream out;
    if (t.rank() == 0) {
        out << element_str(t.flat(0));
        return out.str();
    }
    if (t.rank() == 1) {
        out << '[';
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i)
                out << ", ";
            out << element_str(t.flat(i));
        }
        out << ']';
        return out.str();
    }
    if (t.rank() == 2) {
        const std::size_t rows = t.shape().extent(0);
        const std::size_t cols = t.shape().extent(1);
        for (std::size_t i = 0; i < rows; ++i) {
            out << '[';
            for (std::size_t j = 0; j < cols; ++j) {
                if (j)
                    out << ", ";
                out << element_str(t.at({i, j}));
            }
            out << ']';
            if (i + 1 < rows)
                out << '\n';
        }
        return out.str();
    }
    bool first = true;
    for_each_index(t.shape(), [&](std::span<const std::size_t> ix) {
        if (!first)
            out << '\n';
        first = false;
        out << '[';
        for (std::size_t a = 0; a < ix.size(); ++a) {
            if (a)
                out << ',';
            out << ix[a];
        }
        out << "] = " << element_str(t.at(ix));
    });
    return out.str();
}

} // namespace

std::string format_tensor(const Tensor<double> &t) { return format_impl(t); }
std::string format_tensor(const Tensor<Expr> &t) { return format_impl(t); }

} // namespace tcalc
