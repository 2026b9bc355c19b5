#include "tcalc/fd.hpp"

#include "tcalc/errors.hpp"

#include <cmath>

namespace tcalc {

namespace {

void check_cfg(const FDConfig &cfg) {
    if (!(cfg.step > 0.0))
        throw argument_error("finite-difference step must be > 0");
    if (!(cfg.tolerance > 0.0))
        throw argument_error("tolerance must be > 0");
}

} // namespace

Tensor<double> fd_gradient(const ScalarFn &f, const std::vector<double> &point,
                           const FDConfig &cfg) {
    check_cfg(cfg);
    const double h = cfg.step;
    const std::size_t m = point.size();
    Tensor<double> out{Shape{m}};
    std::vector<double> x = point;
    for (std::size_t j = 0; j < m; ++j) {
        x[j] = point[j] + h;
        const double fp = f(x);
        x[j] = point[j] - h;
        const double fm = f(x);
        x[j] = point[j];
        out.flat(j) = (fp - fm) / (2.0 * h);
    }
    return out;
}

Tensor<double> fd_hessian(const ScalarFn &f, const std::vector<double> &point,
                          const FDConfig &cfg) {
    check_cfg(cfg);
    const double h = cfg.step;
    const std::size_t m = point.size();
    Tensor<double> out{Shape{m, m}};
    std::vector<double> x = point;
    auto stencil = [&](std::size_t i, std::size_t j, double si, double sj) {
        x = point;
        x[i] += si * h;
        x[j] += sj * h;
        return f(x);
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double v = (stencil(i, j, 1, 1) - stencil(i, j, 1, -1) -
                              stencil(i, j, -1, 1) + stencil(i, j, -1, -1)) /
                             (4.0 * h * h);
            out.at({i, j}) = v;
        }
    // Symmetrize: removes stencil asymmetry noise.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double avg = 0.5 * (out.at({i, j}) + out.at({j, i}));
            out.at({i, j}) = avg;
            out.at({j, i}) = avg;
        }
    return out;
}

CompareReport compare_tensors(const Tensor<double> &a, const Tensor<double> &b,
                              double tolerance) {
    if (!(tolerance > 0.0))
        throw argument_error("tolerance must be > 0");
    if (!(a.shape() == b.shape()))
        throw shape_error("cannot compare tensors of shapes " + a.shape().str() +
                          " and " + b.shape().str());
    CompareReport report;
    report.worst_index.assign(a.rank(), 0);
    for_each_index(a.shape(), [&](std::span<const std::size_t> idx) {
        const double av = a.at(idx), bv = b.at(idx);
        const double abs_err = std::abs(av - bv);
        const double rel_err =
            abs_err / std::max({std::abs(av), std::abs(bv), 1.0});
        report.max_abs_err = std::max(report.max_abs_err, abs_err);
        if (rel_err > report.max_rel_err) {
            report.max_rel_err = rel_err;
            report.worst_index.assign(idx.begin(), idx.end());
        }
    });
    report.pass = report.max_rel_err <= tolerance;
    return report;
}

} // namespace tcalc
