#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "tcalc/cli.hpp"
#include "tcalc/errors.hpp"
#include "tcalc/problem.hpp"
#include "tcalc/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

using namespace tcalc;

namespace {

const std::string rosenbrock_text = "# composed Rosenbrock fixture\n"
                                    "xvars: x1 x2\n"
                                    "yvars: y1 y2\n"
                                    "f: (1 - y1)^2 + 100*(y1^2 - y2)^2\n"
                                    "g y1: x1\n"
                                    "g y2: x1^2 - x2\n"
                                    "point: 0.5 0.5\n";

ProblemFile parse_text(const std::string &text) {
    std::istringstream in(text);
    return parse_problem(in, "test");
}

int file_counter = 0;

std::string write_file(const std::string &content) {
    const std::string path = "cli_fixture_" + std::to_string(++file_counter) + ".txt";
    std::ofstream out(path);
    out << content;
    return path;
}

std::string problem_text(const CompositionProblem &p,
                         const std::vector<std::vector<double>> &points) {
    std::ostringstream out;
    out << "xvars:";
    for (const std::string &n : p.inner().domain().names())
        out << " " << n;
    out << "\nyvars:";
    for (const std::string &n : p.outer().domain().names())
        out << " " << n;
    out << "\nf: " << p.outer().component(0) << "\n";
    for (std::size_t k = 0; k < p.outer_arity(); ++k)
        out << "g " << p.outer().domain().name(k) << ": " << p.inner().component(k)
            << "\n";
    out << std::setprecision(17);
    for (const std::vector<double> &pt : points) {
        out << "point:";
        for (double c : pt)
            out << " " << c;
        out << "\n";
    }
    return out.str();
}

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = tcalc::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string &hay, const std::string &needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("problem files parse into their parts") {
    const ProblemFile f = parse_text(rosenbrock_text);
    CHECK(f.x_vars == VarSpace{"x1", "x2"});
    CHECK(f.y_vars == VarSpace{"y1", "y2"});
    CHECK(f.outer == parse("(1-y1)^2 + 100*(y1^2-y2)^2", f.y_vars));
    CHECK(f.inner.size() == 2);
    CHECK(f.inner[1] == parse("x1^2 - x2", f.x_vars));
    CHECK(f.points == std::vector<std::vector<double>>{{0.5, 0.5}});

    const CompositionProblem p = f.to_problem();
    CHECK(p.outer().is_scalar());
    CHECK(p.inner_arity() == 2);
}

TEST_CASE("section order does not matter") {
    const ProblemFile f = parse_text("g y2: x1^2 - x2\n"
                                     "point: 1 2\n"
                                     "f: y1 + y2\n"
                                     "yvars: y1 y2\n"
                                     "g y1: x1\n"
                                     "xvars: x1 x2\n");
    CHECK(f.outer == parse("y1 + y2", f.y_vars));
    CHECK(f.points[0] == std::vector<double>{1, 2});
}

TEST_CASE("comments and blank lines are skipped") {
    const ProblemFile f = parse_text("# heading\n"
                                     "\n"
                                     "xvars: x1   # trailing comment\n"
                                     "yvars: y1\n"
                                     "f: y1^2\n"
                                     "\n"
                                     "g y1: 2*x1\n");
    CHECK(f.x_vars == VarSpace{"x1"});
    CHECK(f.points.empty());
}

TEST_CASE("problem file validation errors name the line") {
    const auto error_of = [](const std::string &text) {
        try {
            parse_text(text);
        } catch (const parse_error &e) {
            return std::string(e.what());
        }
        return std::string();
    };

    CHECK(contains(error_of("yvars: y1\nf: y1\ng y1: 1\n"), "missing 'xvars'"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\ng y1: x1\n"), "missing 'f'"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: y1\n"), "missing 'g y1'"));
    CHECK(contains(error_of("xvars: x1\nxvars: x1\nyvars: y1\nf: y1\ng y1: x1\n"),
                   "duplicate 'xvars'"));
    CHECK(contains(
        error_of("xvars: x1\nyvars: y1\nf: y1\ng y1: x1\ng y1: x1\n"),
        "duplicate 'g y1'"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: y1\ng y2: x1\ng y1: x1\n"),
                   "not a y variable"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: y1\ng y1: x1\nbogus: 1\n"),
                   "unknown key"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: y1\ng y1: x1\npoint: 1 2\n"),
                   "expected 1"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: y1\ng y1: x1\npoint: huh\n"),
                   "bad coordinate"));
    CHECK(contains(error_of("no colon here\n"), "test:1"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: y1 +\ng y1: x1\n"),
                   "test:3"));
    CHECK(contains(error_of("xvars: x1\nyvars: y1\nf: x1\ng y1: x1\n"),
                   "test:3"));
    CHECK(contains(error_of("xvars: x 1\nyvars: y1\nf: y1\ng y1: x\n"),
                   "not a valid variable name"));
}

TEST_CASE("cmd_derive prints the Rosenbrock Hessian") {
    const std::string path = write_file(rosenbrock_text);
    std::ostringstream out, err;
    tcalc::cli::DeriveOptions opts;
    opts.file = path;
    opts.order = 2;
    opts.point = std::vector<double>{0.0, 0.0};
    CHECK(tcalc::cli::cmd_derive(opts, out, err) == 0);
    CHECK(contains(out.str(), "[2, 0]"));
    CHECK(contains(out.str(), "[0, 200]"));
    CHECK(contains(out.str(), "at (0, 0)"));
    CHECK(err.str().empty());
}

TEST_CASE("cmd_derive with an identity inner map prints the gradient of f") {
    const std::string path = write_file("xvars: x1 x2\nyvars: y1 y2\n"
                                        "f: y1^2 + y2^3\n"
                                        "g y1: x1\ng y2: x2\n");
    std::ostringstream out, err;
    tcalc::cli::DeriveOptions opts;
    opts.file = path;
    opts.order = 1;
    CHECK(tcalc::cli::cmd_derive(opts, out, err) == 0);
    CHECK(contains(out.str(), "[2*x1, 3*x2^2]"));
}

TEST_CASE("cmd_derive with a linear inner map matches the matrix route") {
    const std::string text = "xvars: x1 x2\nyvars: y1 y2\n"
                             "f: y1^2*y2 - y2^2\n"
                             "g y1: x1 + 2*x2\ng y2: x1 - x2\n";
    const std::string path = write_file(text);
    std::ostringstream out, err;
    tcalc::cli::DeriveOptions opts;
    opts.file = path;
    opts.order = 2;
    CHECK(tcalc::cli::cmd_derive(opts, out, err) == 0);

    const CompositionProblem p = parse_text(text).to_problem();
    const auto matrix_route = hessian_chain_matrix(p);
    std::size_t found = 0;
    for (std::size_t i = 0; i < matrix_route.values().size(); ++i)
        if (contains(out.str(), matrix_route.values().flat(i).str()))
            ++found;
    CHECK(found == matrix_route.values().size());
}

TEST_CASE("cmd_derive json output round-trips") {
    const std::string path = write_file(rosenbrock_text);
    std::ostringstream out, err;
    tcalc::cli::DeriveOptions opts;
    opts.file = path;
    opts.order = 2;
    opts.json = true;
    CHECK(tcalc::cli::cmd_derive(opts, out, err) == 0);

    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["order"] == 2);
    const DerivativeTensor back = derivative_tensor_from_json(j);
    CHECK(back.values() ==
          tsup::expr_tensor(Shape{2, 2}, {"2", "0", "0", "200"},
                            VarSpace{"x1", "x2"}));
    CHECK(j["evaluated"][0]["point"] == nlohmann::json::array({0.5, 0.5}));
    CHECK(tensor_double_from_json(j["evaluated"][0]["tensor"]) ==
          Tensor<double>{Shape{2, 2}, {2, 0, 0, 200}});
}

TEST_CASE("cmd_verify passes on the Rosenbrock fixture") {
    const std::string path = write_file(rosenbrock_text);
    std::ostringstream out, err;
    tcalc::cli::VerifyOptions opts;
    opts.file = path;
    CHECK(tcalc::cli::cmd_verify(opts, out, err) == 0);
    CHECK(contains(out.str(), "verification passed"));
    CHECK(contains(out.str(), "chain_second vs fd_hessian"));
}

TEST_CASE("cmd_verify fails cleanly under an absurd tolerance") {
    const std::string path = write_file(rosenbrock_text);
    std::ostringstream out, err;
    tcalc::cli::VerifyOptions opts;
    opts.file = path;
    opts.tolerance = 1e-16;
    CHECK(tcalc::cli::cmd_verify(opts, out, err) == 1);
    CHECK(contains(out.str(), "FAIL"));
    CHECK(contains(out.str(), "fd_hessian"));
    CHECK(contains(out.str(), "verification FAILED"));
}

TEST_CASE("cmd_verify reports input problems as exit 2") {
    std::ostringstream out, err;
    tcalc::cli::VerifyOptions opts;
    opts.file = "does_not_exist.txt";
    CHECK(tcalc::cli::cmd_verify(opts, out, err) == 2);
    CHECK(contains(err.str(), "error:"));

    // Broken arity: one g line short.
    const std::string path = write_file("xvars: x1\nyvars: y1 y2\n"
                                        "f: y1 + y2\ng y1: x1\npoint: 0.25\n");
    tcalc::cli::VerifyOptions broken;
    broken.file = path;
    std::ostringstream out2, err2;
    CHECK(tcalc::cli::cmd_verify(broken, out2, err2) == 2);
    CHECK(contains(err2.str(), "missing 'g y2'"));

    // No point available anywhere.
    const std::string pointless = write_file("xvars: x1\nyvars: y1\n"
                                             "f: y1\ng y1: x1\n");
    tcalc::cli::VerifyOptions np;
    np.file = pointless;
    std::ostringstream out3, err3;
    CHECK(tcalc::cli::cmd_verify(np, out3, err3) == 2);
    CHECK(contains(err3.str(), "no evaluation point"));
}

TEST_CASE("cmd_verify accepts a constant outer function") {
    const std::string path = write_file("xvars: x1 x2\nyvars: y1\n"
                                        "f: 5\ng y1: x1*x2\npoint: 0.3 0.8\n");
    std::ostringstream out, err;
    tcalc::cli::VerifyOptions opts;
    opts.file = path;
    CHECK(tcalc::cli::cmd_verify(opts, out, err) == 0);
    CHECK(contains(out.str(), "verification passed"));
}

TEST_CASE("cmd_verify passes on randomized problem files end to end") {
    tsup::Rng rng(0x70051u);
    for (int round = 0; round < 10; ++round) {
        const CompositionProblem p = tsup::random_quadratic_problem(rng);
        std::vector<std::vector<double>> points;
        for (int i = 0; i < 3; ++i)
            points.push_back(tsup::random_point(rng, p.inner_arity()));
        const std::string path = write_file(problem_text(p, points));

        std::ostringstream out, err;
        tcalc::cli::VerifyOptions opts;
        opts.file = path;
        CAPTURE(path);
        CHECK(tcalc::cli::cmd_verify(opts, out, err) == 0);
    }
}

TEST_CASE("cmd_verify json reports every comparison") {
    const std::string path = write_file(rosenbrock_text);
    std::ostringstream out, err;
    tcalc::cli::VerifyOptions opts;
    opts.file = path;
    opts.json = true;
    CHECK(tcalc::cli::cmd_verify(opts, out, err) == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["pass"] == true);
    CHECK(j["points"].size() == 1);
    CHECK(j["points"][0]["comparisons"].size() == 6);
    for (const auto &c : j["points"][0]["comparisons"]) {
        CHECK(c.contains("max_abs_err"));
        CHECK(c.contains("max_rel_err"));
        CHECK(c.contains("worst_index"));
        CHECK(c["pass"] == true);
    }
}

TEST_CASE("cmd_demo walks through the Rosenbrock example") {
    std::ostringstream out, err;
    CHECK(tcalc::cli::cmd_demo({}, out, err) == 0);
    const std::string s = out.str();
    CHECK(contains(s, "[1, 0]"));
    CHECK(contains(s, "[2*x1, -1]"));
    CHECK(contains(s, "[1200*y1^2 - 400*y2 + 2, -400*y1]"));
    CHECK(contains(s, "[400*x2 + 2, 0]"));
    CHECK(contains(s, "[-400*x2, 0]"));
    CHECK(contains(s, "[2, 0]"));
    CHECK(contains(s, "[0, 200]"));
    CHECK(contains(s, "self-check passed"));
}

TEST_CASE("cmd_demo json output") {
    std::ostringstream out, err;
    tcalc::cli::DemoOptions opts;
    opts.json = true;
    CHECK(tcalc::cli::cmd_demo(opts, out, err) == 0);
    const nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j["pass"] == true);
    CHECK(tensor_expr_from_json(j["hessian_composition"], VarSpace{"x1", "x2"}) ==
          tsup::expr_tensor(Shape{2, 2}, {"2", "0", "0", "200"},
                            VarSpace{"x1", "x2"}));
    CHECK(j["term2"]["data"][0] == "-400*x2");
}

TEST_CASE("argument vector dispatch and exit codes") {
    CHECK(run_cli({"demo"}).code == 0);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(contains(run_cli({"--help"}).out, "Usage"));
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"derive"}).code == 2);
    CHECK(run_cli({"derive", "--file", "nope.txt", "--order", "3"}).code == 2);

    const std::string path = write_file(rosenbrock_text);
    const RunResult derive =
        run_cli({"derive", "--file", path, "--order", "2", "--point", "0,0"});
    CHECK(derive.code == 0);
    CHECK(contains(derive.out, "[0, 200]"));

    CHECK(run_cli({"derive", "--file", path, "--order", "2", "--point", "x,y"})
              .code == 2);
    CHECK(run_cli({"derive", "--file", path, "--order", "2", "--point", "1"})
              .code == 2);

    const RunResult verify =
        run_cli({"verify", "--file", path, "--point", "0.3,-0.7", "--h", "1e-5",
                 "--tol", "1e-3"});
    CHECK(verify.code == 0);
    CHECK(contains(verify.out, "verification passed"));
}
