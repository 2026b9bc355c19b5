#include "tcalc/expr.hpp"

#include "tcalc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace tcalc {

// ---------------------------------------------------------------------------
// VarSpace

namespace {

bool is_identifier(const std::string &s) {
    if (s.empty() ||
        !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

VarSpace::VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!is_identifier(names_[i]))
            throw argument_error("'" + names_[i] + "' is not a valid variable name");
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw argument_error("duplicate variable name '" + names_[i] + "'");
    }
}

const std::string &VarSpace::name(std::size_t i) const {
    if (i >= names_.size())
        throw argument_error("variable index out of range");
    return names_[i];
}

bool VarSpace::contains(const std::string &name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t VarSpace::index_of(const std::string &name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw argument_error("variable '" + name + "' is not declared");
    return static_cast<std::size_t>(it - names_.begin());
}

// ---------------------------------------------------------------------------
// Expr nodes

struct Expr::Node {
    Kind kind;
    Rational value;             // Constant
    std::string name;           // Variable
    int exponent = 0;           // Power
    std::vector<Expr> children; // Sum/Product: >= 2, Negate/Power: exactly 1
};

namespace detail {

struct ExprBuilder {
    static Expr make(Expr::Node node) {
        return Expr(std::make_shared<const Expr::Node>(std::move(node)));
    }
    static Expr constant(Rational v) {
        return make({Expr::Kind::Constant, std::move(v), "", 0, {}});
    }
    static Expr variable(std::string name) {
        return make({Expr::Kind::Variable, Rational(0), std::move(name), 0, {}});
    }
    static Expr negate(Expr child) {
        return make({Expr::Kind::Negate, Rational(0), "", 0, {std::move(child)}});
    }
    static Expr sum(std::vector<Expr> children) {
        return make({Expr::Kind::Sum, Rational(0), "", 0, std::move(children)});
    }
    static Expr product(std::vector<Expr> children) {
        return make({Expr::Kind::Product, Rational(0), "", 0, std::move(children)});
    }
    static Expr power(Expr base, int exponent) {
        return make({Expr::Kind::Power, Rational(0), "", exponent, {std::move(base)}});
    }
};

} // namespace detail

using detail::ExprBuilder;

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr::Expr() : Expr(ExprBuilder::constant(Rational(0)).node_) {}

Expr Expr::constant(Rational value) { return ExprBuilder::constant(std::move(value)); }

Expr Expr::variable(const std::string &name) {
    if (!is_identifier(name))
        throw argument_error("'" + name + "' is not a valid variable name");
    return ExprBuilder::variable(name);
}

Expr::Kind Expr::kind() const { return node_->kind; }

const Rational &Expr::constant_value() const {
    if (node_->kind != Kind::Constant)
        throw argument_error("constant_value() on a non-constant expression");
    return node_->value;
}

const std::string &Expr::variable_name() const {
    if (node_->kind != Kind::Variable)
        throw argument_error("variable_name() on a non-variable expression");
    return node_->name;
}

std::span<const Expr> Expr::operands() const { return node_->children; }

int Expr::exponent() const {
    if (node_->kind != Kind::Power)
        throw argument_error("exponent() on a non-power expression");
    return node_->exponent;
}

bool Expr::is_zero() const {
    return node_->kind == Kind::Constant && node_->value == 0;
}

bool Expr::is_one() const {
    return node_->kind == Kind::Constant && node_->value == 1;
}

std::vector<std::string> Expr::variables() const {
    std::set<std::string> acc;
    auto walk = [&acc](const Expr &e, auto &&self) -> void {
        if (e.kind() == Kind::Variable)
            acc.insert(e.node_->name);
        for (const Expr &c : e.operands())
            self(c, self);
    };
    walk(*this, walk);
    return {acc.begin(), acc.end()};
}

bool Expr::operator==(const Expr &rhs) const {
    if (node_ == rhs.node_)
        return true;
    if (node_->kind != rhs.node_->kind)
        return false;
    switch (node_->kind) {
    case Kind::Constant:
        return node_->value == rhs.node_->value;
    case Kind::Variable:
        return node_->name == rhs.node_->name;
    case Kind::Power:
        if (node_->exponent != rhs.node_->exponent)
            return false;
        [[fallthrough]];
    case Kind::Negate:
    case Kind::Sum:
    case Kind::Product: {
        if (node_->children.size() != rhs.node_->children.size())
            return false;
        for (std::size_t i = 0; i < node_->children.size(); ++i)
            if (!(node_->children[i] == rhs.node_->children[i]))
                return false;
        return true;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Canonicalization: tree <-> polynomial

Polynomial Expr::to_polynomial() const {
    switch (node_->kind) {
    case Kind::Constant:
        return Polynomial::constant(node_->value);
    case Kind::Variable:
        return Polynomial::variable(node_->name);
    case Kind::Negate:
        return -node_->children[0].to_polynomial();
    case Kind::Sum: {
        Polynomial acc;
        for (const Expr &c : node_->children)
            acc = acc + c.to_polynomial();
        return acc;
    }
    case Kind::Product: {
        Polynomial acc = Polynomial::constant(Rational(1));
        for (const Expr &c : node_->children)
            acc = acc * c.to_polynomial();
        return acc;
    }
    case Kind::Power:
        return node_->children[0].to_polynomial().pow(node_->exponent);
    }
    throw argument_error("corrupt expression node");
}

namespace {

Expr build_term(const Monomial &mono, const Rational &coeff) {
    if (mono.empty())
        return ExprBuilder::constant(coeff);
    std::vector<Expr> factors;
    for (const auto &[name, e] : mono) {
        Expr v = ExprBuilder::variable(name);
        factors.push_back(e == 1 ? v : ExprBuilder::power(v, e));
    }
    if (coeff == 1 && factors.size() == 1)
        return factors[0];
    if (coeff != 1)
        factors.insert(factors.begin(), ExprBuilder::constant(coeff));
    return ExprBuilder::product(std::move(factors));
}

} // namespace

Expr Expr::from_polynomial(const Polynomial &p) {
    if (p.is_zero())
        return ExprBuilder::constant(Rational(0));
    std::vector<Expr> terms;
    for (const auto &[mono, coeff] : p.terms())
        terms.push_back(build_term(mono, coeff));
    if (terms.size() == 1)
        return terms[0];
    return ExprBuilder::sum(std::move(terms));
}

Expr simplify(const Expr &e) { return Expr::from_polynomial(e.to_polynomial()); }

// ---------------------------------------------------------------------------
// Arithmetic

Expr operator+(const Expr &a, const Expr &b) {
    return Expr::from_polynomial(a.to_polynomial() + b.to_polynomial());
}

Expr operator-(const Expr &a, const Expr &b) {
    return Expr::from_polynomial(a.to_polynomial() - b.to_polynomial());
}

Expr operator*(const Expr &a, const Expr &b) {
    return Expr::from_polynomial(a.to_polynomial() * b.to_polynomial());
}

Expr operator-(const Expr &a) { return Expr::from_polynomial(-a.to_polynomial()); }

Expr pow(const Expr &base, int exponent) {
    if (exponent < 0)
        throw argument_error("exponent must be >= 0");
    return Expr::from_polynomial(base.to_polynomial().pow(exponent));
}

Expr differentiate(const Expr &e, const std::string &var) {
    return Expr::from_polynomial(e.to_polynomial().differentiate(var));
}

Expr substitute(const Expr &e, const std::map<std::string, Expr> &map) {
    std::map<std::string, Polynomial> pmap;
    for (const auto &[name, value] : map)
        pmap.emplace(name, value.to_polynomial());
    return Expr::from_polynomial(e.to_polynomial().substitute(pmap));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <typename Num, typename Leaf>
Num eval_tree(const Expr &e, const std::map<std::string, Num> &point, Leaf leaf) {
    switch (e.kind()) {
    case Expr::Kind::Constant:
        return leaf(e.constant_value());
    case Expr::Kind::Variable: {
        auto it = point.find(e.variable_name());
        if (it == point.end())
            throw eval_error("variable '" + e.variable_name() +
                             "' has no assigned value");
        return it->second;
    }
    case Expr::Kind::Negate:
        return -eval_tree(e.operands()[0], point, leaf);
    case Expr::Kind::Sum: {
        Num acc{};
        for (const Expr &c : e.operands())
            acc = acc + eval_tree(c, point, leaf);
        return acc;
    }
    case Expr::Kind::Product: {
        Num acc = leaf(Rational(1));
        for (const Expr &c : e.operands())
            acc = acc * eval_tree(c, point, leaf);
        return acc;
    }
    case Expr::Kind::Power: {
        const Num base = eval_tree(e.operands()[0], point, leaf);
        Num acc = leaf(Rational(1));
        for (int i = 0; i < e.exponent(); ++i)
            acc = acc * base;
        return acc;
    }
    }
    throw argument_error("corrupt expression node");
}

} // namespace

Rational evaluate(const Expr &e, const std::map<std::string, Rational> &point) {
    return eval_tree(e, point, [](const Rational &r) { return r; });
}

double evaluate(const Expr &e, const std::map<std::string, double> &point) {
    return eval_tree(e, point, [](const Rational &r) { return rational_to_double(r); });
}

std::function<double(const std::vector<double> &)> make_evaluator(const Expr &e,
                                                                  const VarSpace &vars) {
    // Precompiled form: one (coefficient, [(var index, exponent)]) row per term.
    struct CompiledTerm {
        double coeff;
        std::vector<std::pair<std::size_t, int>> powers;
    };
    const Polynomial p = e.to_polynomial();
    std::vector<CompiledTerm> terms;
    for (const auto &[mono, coeff] : p.terms()) {
        CompiledTerm t{rational_to_double(coeff), {}};
        for (const auto &[name, exp] : mono)
            t.powers.emplace_back(vars.index_of(name), exp);
        terms.push_back(std::move(t));
    }
    const std::size_t arity = vars.size();
    return [terms, arity](const std::vector<double> &x) {
        if (x.size() != arity)
            throw argument_error("evaluator expects " + std::to_string(arity) +
                                 " coordinates");
        double acc = 0.0;
        for (const CompiledTerm &t : terms) {
            double term = t.coeff;
            for (const auto &[i, exp] : t.powers)
                for (int k = 0; k < exp; ++k)
                    term *= x[i];
            acc += term;
        }
        return acc;
    };
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Splits an expression into (coefficient, non-constant factors) for printing.
std::pair<Rational, std::span<const Expr>> decompose_term(const Expr &e) {
    if (e.kind() == Expr::Kind::Constant)
        return {e.constant_value(), {}};
    if (e.kind() == Expr::Kind::Product) {
        const std::span<const Expr> kids = e.operands();
        if (!kids.empty() && kids[0].kind() == Expr::Kind::Constant)
            return {kids[0].constant_value(), kids.subspan(1)};
        return {Rational(1), kids};
    }
    return {Rational(1), {&e, 1}};
}

void print_expr(std::ostream &os, const Expr &e);

void print_factor(std::ostream &os, const Expr &e) {
    switch (e.kind()) {
    case Expr::Kind::Variable:
        os << e.variable_name();
        return;
    case Expr::Kind::Power: {
        const Expr &base = e.operands()[0];
        if (base.kind() == Expr::Kind::Variable) {
            os << base.variable_name() << "^" << e.exponent();
        } else {
            os << "(";
            print_expr(os, base);
            os << ")^" << e.exponent();
        }
        return;
    }
    default:
        os << "(";
        print_expr(os, e);
        os << ")";
        return;
    }
}

// Prints |coeff| * factors; the sign is emitted by the caller.
void print_term_body(std::ostream &os, const Rational &coeff,
                     std::span<const Expr> factors) {
    const Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    if (factors.empty()) {
        os << mag;
        return;
    }
    bool first = true;
    if (mag != 1) {
        os << mag;
        first = false;
    }
    for (const Expr &f : factors) {
        if (!first)
            os << "*";
        print_factor(os, f);
        first = false;
    }
}

void print_expr(std::ostream &os, const Expr &e) {
    if (e.kind() == Expr::Kind::Negate) {
        os << "-";
        print_factor(os, e.operands()[0]);
        return;
    }
    std::vector<Expr> terms;
    if (e.kind() == Expr::Kind::Sum)
        terms.assign(e.operands().begin(), e.operands().end());
    else
        terms.push_back(e);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto [coeff, factors] = decompose_term(terms[i]);
        if (i == 0)
            os << (coeff < 0 ? "-" : "");
        else
            os << (coeff < 0 ? " - " : " + ");
        print_term_body(os, coeff, factors);
    }
}

} // namespace

std::string Expr::str() const {
    std::ostringstream os;
    print_expr(os, *this);
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const Expr &e) {
    print_expr(os, e);
    return os;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
  public:
    Parser(const std::string &text, const VarSpace &vars) : text_(text), vars_(vars) {}

    Expr run() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected character '" + std::string(1, text_[pos_]) +
                                  "'",
                              pos_);
        return simplify(e);
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Expr parse_expr() {
        std::vector<Expr> terms{parse_term()};
        for (;;) {
            if (eat('+'))
                terms.push_back(parse_term());
            else if (eat('-'))
                terms.push_back(ExprBuilder::negate(parse_term()));
            else
                break;
        }
        return terms.size() == 1 ? terms[0] : ExprBuilder::sum(std::move(terms));
    }

    Expr parse_term() {
        std::vector<Expr> factors{parse_factor()};
        while (eat('*'))
            factors.push_back(parse_factor());
        return factors.size() == 1 ? factors[0] : ExprBuilder::product(std::move(factors));
    }

    // Unary minus applies to the whole factor, so -x^2 means -(x^2).
    Expr parse_factor() {
        if (eat('-'))
            return ExprBuilder::negate(parse_factor());
        Expr atom = parse_atom();
        if (eat('^'))
            return ExprBuilder::power(std::move(atom), parse_exponent());
        return atom;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw parse_error("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            if (!eat(')'))
                throw parse_error("expected ')'", pos_);
            return e;
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    Integer parse_digits() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            throw parse_error("expected digits", pos_);
        return Integer(text_.substr(start, pos_ - start));
    }

    Expr parse_number() {
        Integer whole = parse_digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            const std::size_t start = pos_;
            Integer frac = parse_digits();
            Integer den = 1;
            for (std::size_t i = start; i < pos_; ++i)
                den *= 10;
            return ExprBuilder::constant(Rational(whole) + Rational(frac, den));
        }
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            Integer den = parse_digits();
            if (den == 0)
                throw parse_error("zero denominator", at);
            return ExprBuilder::constant(Rational(whole, den));
        }
        return ExprBuilder::constant(Rational(whole));
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        ++pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (!vars_.contains(name))
            throw parse_error("undeclared identifier '" + name + "'", start);
        return ExprBuilder::variable(name);
    }

    int parse_exponent() {
        skip_ws();
        const std::size_t at = pos_;
        Integer e = parse_digits();
        if (e > 64)
            throw parse_error("exponent too large", at);
        return e.convert_to<int>();
    }

    const std::string &text_;
    const VarSpace &vars_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(const std::string &text, const VarSpace &vars) {
    return Parser(text, vars).run();
}

// ---------------------------------------------------------------------------
// Equality

bool expr_equal(const Expr &a, const Expr &b) {
    if (a == b)
        return true;
    // Canonical forms differ. Two polynomials that disagree structurally can
    // only agree by coincidence on random points, so exact evaluation at 20
    // pseudorandom rational points decides (fixed seed: same verdict per pair).
    std::set<std::string> names;
    for (const std::string &v : a.variables())
        names.insert(v);
    for (const std::string &v : b.variables())
        names.insert(v);
    std::mt19937_64 rng(0x7c5e11a3u);
    std::uniform_int_distribution<long long> num(-60, 60);
    std::uniform_int_distribution<long long> den(1, 7);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<std::string, Rational> point;
        for (const std::string &v : names)
            point.emplace(v, Rational(num(rng), den(rng)));
        if (evaluate(a, point) != evaluate(b, point))
            return false;
    }
    return true;
}

} // namespace tcalc
