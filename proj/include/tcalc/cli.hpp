#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tcalc::cli {

struct DeriveOptions {
    std::string file;
    int order = 1;
    std::optional<std::vector<double>> point;
    bool json = false;
};

struct VerifyOptions {
    std::string file;
    std::optional<std::vector<double>> point;
    double step = 1e-4;
    double tolerance = 1e-4;
    bool json = false;
};

struct DemoOptions {
    bool json = false;
};

// Command handlers, callable in-process for testing. Exit status semantics:
// 0 success, 1 verification failure, 2 input error.
int cmd_derive(const DeriveOptions &opts, std::ostream &out, std::ostream &err);
int cmd_verify(const VerifyOptions &opts, std::ostream &out, std::ostream &err);
int cmd_demo(const DemoOptions &opts, std::ostream &out, std::ostream &err);

/// Full argument-vector entry point (argv[0] excluded).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace tcalc::cli
