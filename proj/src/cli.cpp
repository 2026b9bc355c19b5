#include "tcalc/cli.hpp"

#include "tcalc/chain.hpp"
#include "tcalc/errors.hpp"
#include "tcalc/fd.hpp"
#include "tcalc/format.hpp"
#include "tcalc/problem.hpp"
#include "tcalc/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace tcalc::cli {

namespace {

using nlohmann::json;

std::map<std::string, double> point_map(const VarSpace &vars,
                                        const std::vector<double> &point) {
    std::map<std::string, double> m;
    for (std::size_t i = 0; i < vars.size(); ++i)
        m[vars.name(i)] = point[i];
    return m;
}

std::string point_str(const std::vector<double> &point) {
    std::string s = "(";
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i)
            s += ", ";
        s += format_number(point[i]);
    }
    return s + ")";
}

std::vector<double> parse_point_arg(const std::string &text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            // Trim so "0.5, 0.5" works too.
            const std::size_t b = item.find_first_not_of(" \t");
            const std::size_t e = item.find_last_not_of(" \t");
            if (b == std::string::npos)
                throw std::invalid_argument(item);
            item = item.substr(b, e - b + 1);
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw argument_error("bad point coordinate '" + item + "'");
        }
    }
    if (out.empty())
        throw argument_error("empty point");
    return out;
}

// --point overrides the file's point lines; with neither there is nothing
// to evaluate at.
std::vector<std::vector<double>> select_points(const ProblemFile &file,
                                               const std::optional<std::vector<double>> &arg,
                                               bool required) {
    std::vector<std::vector<double>> points;
    if (arg) {
        if (arg->size() != file.x_vars.size())
            throw argument_error("point has " + std::to_string(arg->size()) +
                                 " coordinates, expected " +
                                 std::to_string(file.x_vars.size()));
        points.push_back(*arg);
    } else {
        points = file.points;
    }
    if (required && points.empty())
        throw argument_error("no evaluation point: pass --point or add a "
                             "'point:' line to the problem file");
    return points;
}

void print_problem(const ProblemFile &file, std::ostream &out) {
    out << "f(";
    for (std::size_t i = 0; i < file.y_vars.size(); ++i)
        out << (i ? ", " : "") << file.y_vars.name(i);
    out << ") = " << file.outer << "\n";
    for (std::size_t k = 0; k < file.y_vars.size(); ++k)
        out << "g " << file.y_vars.name(k) << " = " << file.inner[k] << "\n";
}

int derive_impl(const DeriveOptions &opts, std::ostream &out) {
    const ProblemFile file = parse_problem_file(opts.file);
    const CompositionProblem problem = file.to_problem();
    const DerivativeTensor deriv =
        opts.order == 1 ? chain_first(problem) : chain_second(problem);
    const std::vector<std::vector<double>> points =
        select_points(file, opts.point, /*required=*/false);

    if (opts.json) {
        json j = to_json(deriv);
        j["order"] = opts.order;
        if (!points.empty()) {
            json evals = json::array();
            for (const std::vector<double> &p : points)
                evals.push_back(
                    {{"point", p},
                     {"tensor",
                      to_json(eval_tensor(deriv, point_map(file.x_vars, p)))}});
            j["evaluated"] = std::move(evals);
        }
        out << j.dump(2) << "\n";
        return 0;
    }

    print_problem(file, out);
    out << "order " << opts.order << " derivative of the composition, shape "
        << deriv.values().shape().str() << ":\n"
        << format_tensor(deriv.values()) << "\n";
    for (const std::vector<double> &p : points)
        out << "at " << point_str(p) << ":\n"
            << format_tensor(eval_tensor(deriv, point_map(file.x_vars, p))) << "\n";
    return 0;
}

struct Comparison {
    std::string name;
    CompareReport report;
};

json comparison_json(const Comparison &c) {
    json j = to_json(c.report);
    j["name"] = c.name;
    return j;
}

int verify_impl(const VerifyOptions &opts, std::ostream &out) {
    if (opts.step <= 0.0)
        throw argument_error("step must be positive");
    if (opts.tolerance <= 0.0)
        throw argument_error("tolerance must be positive");

    const ProblemFile file = parse_problem_file(opts.file);
    const CompositionProblem problem = file.to_problem();
    const std::vector<std::vector<double>> points =
        select_points(file, opts.point, /*required=*/true);

    const DerivativeTensor chain = chain_second(problem);
    const DerivativeTensor matrix = hessian_chain_matrix(problem);
    const DerivativeTensor direct = direct_hessian(problem);
    const auto composed = make_evaluator(compose(problem), file.x_vars);

    bool all_pass = true;
    json point_reports = json::array();

    for (const std::vector<double> &p : points) {
        const std::map<std::string, double> at = point_map(file.x_vars, p);
        const std::vector<std::pair<std::string, Tensor<double>>> methods = {
            {"chain_second", eval_tensor(chain, at)},
            {"hessian_chain_matrix", eval_tensor(matrix, at)},
            {"direct_hessian", eval_tensor(direct, at)},
            {"fd_hessian", fd_hessian(composed, p, {opts.step, opts.tolerance})},
        };

        std::vector<Comparison> comparisons;
        for (std::size_t a = 0; a < methods.size(); ++a)
            for (std::size_t b = a + 1; b < methods.size(); ++b)
                comparisons.push_back(
                    {methods[a].first + " vs " + methods[b].first,
                     compare_tensors(methods[a].second, methods[b].second,
                                     opts.tolerance)});

        bool point_pass = true;
        for (const Comparison &c : comparisons)
            point_pass = point_pass && c.report.pass;
        all_pass = all_pass && point_pass;

        if (opts.json) {
            json comps = json::array();
            for (const Comparison &c : comparisons)
                comps.push_back(comparison_json(c));
            point_reports.push_back({{"point", p},
                                     {"pass", point_pass},
                                     {"comparisons", std::move(comps)}});
        } else {
            out << "at " << point_str(p) << ":\n";
            for (const Comparison &c : comparisons) {
                out << "  " << (c.report.pass ? "pass" : "FAIL") << "  " << c.name
                    << "  max_abs_err=" << format_number(c.report.max_abs_err)
                    << " max_rel_err=" << format_number(c.report.max_rel_err);
                if (!c.report.pass) {
                    out << " worst_index=(";
                    for (std::size_t i = 0; i < c.report.worst_index.size(); ++i)
                        out << (i ? "," : "") << c.report.worst_index[i];
                    out << ")";
                }
                out << "\n";
            }
        }
    }

    if (opts.json) {
        out << json{{"pass", all_pass},
                    {"h", opts.step},
                    {"tol", opts.tolerance},
                    {"points", std::move(point_reports)}}
                   .dump(2)
            << "\n";
    } else {
        out << (all_pass ? "verification passed" : "verification FAILED") << "\n";
    }
    return all_pass ? 0 : 1;
}

int demo_impl(const DemoOptions &opts, std::ostream &out) {
    const VarSpace y{"y1", "y2"};
    const VarSpace x{"x1", "x2"};
    const Expr f = parse("(1 - y1)^2 + 100*(y1^2 - y2)^2", y);
    const std::vector<Expr> g = {parse("x1", x), parse("x1^2 - x2", x)};

    const CompositionProblem problem{VectorFunction::scalar_function(f, y),
                                     VectorFunction(g, x)};

    const DerivativeTensor jac = jacobian(problem.inner());
    const DerivativeTensor hess_f = hessian(problem.outer());
    std::vector<DerivativeTensor> hess_g;
    for (std::size_t k = 0; k < g.size(); ++k)
        hess_g.push_back(hessian(VectorFunction::scalar_function(g[k], x)));
    const auto [t1, t2] = chain_second_terms(problem);
    const DerivativeTensor total = chain_second(problem);
    const DerivativeTensor direct = direct_hessian(problem);

    const Expr two = Expr::integer(2);
    const Expr twohundred = Expr::integer(200);
    const Expr zero;
    const bool ok = expr_equal(total.values().at({0, 0}), two) &&
                    expr_equal(total.values().at({0, 1}), zero) &&
                    expr_equal(total.values().at({1, 0}), zero) &&
                    expr_equal(total.values().at({1, 1}), twohundred);

    if (opts.json) {
        json hg = json::array();
        for (const DerivativeTensor &h : hess_g)
            hg.push_back(to_json(h.values()));
        out << json{{"f", f.str()},
                    {"g", {g[0].str(), g[1].str()}},
                    {"jacobian_g", to_json(jac)},
                    {"hessian_f", to_json(hess_f)},
                    {"hessian_g", std::move(hg)},
                    {"term1", to_json(t1)},
                    {"term2", to_json(t2)},
                    {"hessian_composition", to_json(total)},
                    {"direct_hessian", to_json(direct.values())},
                    {"pass", ok}}
                   .dump(2)
            << "\n";
        return ok ? 0 : 1;
    }

    out << "Rosenbrock objective under the square-completing change of "
           "variables\n\n";
    out << "f(y1, y2) = " << f << "\n";
    out << "g y1 = " << g[0] << "\n";
    out << "g y2 = " << g[1] << "\n\n";
    out << "Jacobian of g, shape " << jac.values().shape().str() << ":\n"
        << format_tensor(jac.values()) << "\n\n";
    out << "Hessian of f (in y), shape " << hess_f.values().shape().str() << ":\n"
        << format_tensor(hess_f.values()) << "\n\n";
    for (std::size_t k = 0; k < hess_g.size(); ++k)
        out << "Hessian of g component " << k + 1 << ":\n"
            << format_tensor(hess_g[k].values()) << "\n\n";
    out << "second derivative of the composition, term 1 (curvature of f "
           "through g):\n"
        << format_tensor(t1) << "\n\n";
    out << "term 2 (gradient of f against curvature of g):\n"
        << format_tensor(t2) << "\n\n";
    out << "term 1 + term 2:\n" << format_tensor(total.values()) << "\n\n";
    out << "direct Hessian of the substituted expression:\n"
        << format_tensor(direct.values()) << "\n\n";
    out << (ok ? "self-check passed: composition Hessian is [[2, 0], [0, 200]]"
               : "self-check FAILED")
        << "\n";
    return ok ? 0 : 1;
}

} // namespace

int cmd_derive(const DeriveOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        return derive_impl(opts, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const VerifyOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        return verify_impl(opts, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_demo(const DemoOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        return demo_impl(opts, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Symbolic derivative tensors of composed functions, with "
                 "chain-rule and finite-difference cross-checks"};
    app.name("tcalc");
    app.require_subcommand(1);

    DeriveOptions derive_opts;
    VerifyOptions verify_opts;
    DemoOptions demo_opts;
    std::string derive_point, verify_point;

    CLI::App *derive = app.add_subcommand(
        "derive", "Print the symbolic derivative tensor of f after g");
    derive->add_option("--file", derive_opts.file, "problem file")->required();
    derive->add_option("--order", derive_opts.order, "derivative order")
        ->required()
        ->check(CLI::Range(1, 2));
    derive->add_option("--point", derive_point,
                       "evaluation point, comma separated");
    derive->add_flag("--json", derive_opts.json, "machine-readable output");

    CLI::App *verify = app.add_subcommand(
        "verify", "Cross-check chain-rule Hessians against direct "
                  "substitution and finite differences");
    verify->add_option("--file", verify_opts.file, "problem file")->required();
    verify->add_option("--point", verify_point,
                       "evaluation point, comma separated");
    // "--h" would collide with the default "-h,--help" pair.
    verify->set_help_flag("--help", "print help");
    verify->add_option("--h", verify_opts.step, "finite-difference step");
    verify->add_option("--tol", verify_opts.tolerance, "relative tolerance");
    verify->add_flag("--json", verify_opts.json, "machine-readable output");

    CLI::App *demo = app.add_subcommand(
        "demo", "Walk through the Rosenbrock change-of-variables example");
    demo->add_flag("--json", demo_opts.json, "machine-readable output");

    // CLI::App::parse consumes a reversed argument vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (derive->parsed()) {
            if (!derive_point.empty())
                derive_opts.point = parse_point_arg(derive_point);
            return cmd_derive(derive_opts, out, err);
        }
        if (verify->parsed()) {
            if (!verify_point.empty())
                verify_opts.point = parse_point_arg(verify_point);
            return cmd_verify(verify_opts, out, err);
        }
        return cmd_demo(demo_opts, out, err);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace tcalc::cli
