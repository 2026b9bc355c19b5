#include "tcalc/problem.hpp"

#include "tcalc/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tcalc {

namespace {

struct RawLine {
    int number = 0;
    std::string key;   // "xvars", "yvars", "f", "g", "point"
    std::string arg;   // the y name for "g" lines, empty otherwise
    std::string value; // text after the colon
};

[[noreturn]] void fail(const std::string &name, int line, const std::string &what) {
    throw parse_error(name + ":" + std::to_string(line) + ": " + what);
}

std::string strip(const std::string &s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string &s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

std::vector<RawLine> scan(std::istream &in, const std::string &name) {
    std::vector<RawLine> lines;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        std::string line = strip(text);
        if (std::size_t hash = line.find('#'); hash != std::string::npos)
            line = strip(line.substr(0, hash));
        if (line.empty())
            continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            fail(name, number, "expected 'key: value'");
        RawLine raw;
        raw.number = number;
        raw.value = strip(line.substr(colon + 1));
        const std::vector<std::string> head = split_words(line.substr(0, colon));
        if (head.size() == 1)
            raw.key = head[0];
        else if (head.size() == 2 && head[0] == "g") {
            raw.key = "g";
            raw.arg = head[1];
        } else
            fail(name, number, "unrecognized line head '" +
                                   strip(line.substr(0, colon)) + "'");
        lines.push_back(std::move(raw));
    }
    return lines;
}

Expr parse_checked(const std::string &text, const VarSpace &vars,
                   const std::string &name, int line) {
    try {
        return parse(text, vars);
    } catch (const parse_error &e) {
        fail(name, line, e.what());
    }
}

} // namespace

ProblemFile parse_problem(std::istream &in, const std::string &name) {
    const std::vector<RawLine> lines = scan(in, name);

    const RawLine *xvars = nullptr;
    const RawLine *yvars = nullptr;
    const RawLine *f = nullptr;
    std::vector<const RawLine *> g_lines;
    std::vector<const RawLine *> point_lines;

    auto claim = [&](const RawLine *&slot, const RawLine &raw) {
        if (slot)
            fail(name, raw.number, "duplicate '" + raw.key + "' line (first on line " +
                                       std::to_string(slot->number) + ")");
        slot = &raw;
    };

    for (const RawLine &raw : lines) {
        if (raw.key == "xvars")
            claim(xvars, raw);
        else if (raw.key == "yvars")
            claim(yvars, raw);
        else if (raw.key == "f")
            claim(f, raw);
        else if (raw.key == "g")
            g_lines.push_back(&raw);
        else if (raw.key == "point")
            point_lines.push_back(&raw);
        else
            fail(name, raw.number, "unknown key '" + raw.key + "'");
    }

    if (!xvars)
        fail(name, 1, "missing 'xvars' line");
    if (!yvars)
        fail(name, 1, "missing 'yvars' line");
    if (!f)
        fail(name, 1, "missing 'f' line");

    ProblemFile file;
    try {
        file.x_vars = VarSpace(split_words(xvars->value));
    } catch (const argument_error &e) {
        fail(name, xvars->number, e.what());
    }
    try {
        file.y_vars = VarSpace(split_words(yvars->value));
    } catch (const argument_error &e) {
        fail(name, yvars->number, e.what());
    }

    file.outer = parse_checked(f->value, file.y_vars, name, f->number);

    std::map<std::string, const RawLine *> g_by_name;
    for (const RawLine *raw : g_lines) {
        if (!file.y_vars.contains(raw->arg))
            fail(name, raw->number, "'" + raw->arg + "' is not a y variable");
        if (!g_by_name.emplace(raw->arg, raw).second)
            fail(name, raw->number, "duplicate 'g " + raw->arg + "' line");
    }
    for (std::size_t k = 0; k < file.y_vars.size(); ++k) {
        const std::string &y = file.y_vars.name(k);
        auto it = g_by_name.find(y);
        if (it == g_by_name.end())
            fail(name, 1, "missing 'g " + y + "' line");
        file.inner.push_back(
            parse_checked(it->second->value, file.x_vars, name, it->second->number));
    }

    for (const RawLine *raw : point_lines) {
        const std::vector<std::string> words = split_words(raw->value);
        if (words.size() != file.x_vars.size())
            fail(name, raw->number,
                 "point has " + std::to_string(words.size()) + " coordinates, expected " +
                     std::to_string(file.x_vars.size()));
        std::vector<double> point;
        for (const std::string &w : words) {
            try {
                std::size_t used = 0;
                const double v = std::stod(w, &used);
                if (used != w.size())
                    throw std::invalid_argument(w);
                point.push_back(v);
            } catch (const std::exception &) {
                fail(name, raw->number, "bad coordinate '" + w + "'");
            }
        }
        file.points.push_back(std::move(point));
    }

    return file;
}

ProblemFile parse_problem_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw argument_error("cannot open problem file '" + path + "'");
    return parse_problem(in, path);
}

CompositionProblem ProblemFile::to_problem() const {
    return {VectorFunction::scalar_function(outer, y_vars),
            VectorFunction(inner, x_vars)};
}

} // namespace tcalc
