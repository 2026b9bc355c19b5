#pragma once

#include "tcalc/polynomial.hpp"
#include "tcalc/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tcalc {

namespace detail {
struct ExprBuilder;
}

/// Ordered list of distinct variable names. The position of a name is the
/// coordinate index used by every derivative tensor over this space.
class VarSpace {
  public:
    VarSpace() = default;
    explicit VarSpace(std::vector<std::string> names);
    VarSpace(std::initializer_list<std::string> names)
        : VarSpace(std::vector<std::string>(names)) {}

    std::size_t size() const { return names_.size(); }
    const std::string &name(std::size_t i) const;
    const std::vector<std::string> &names() const { return names_; }
    bool contains(const std::string &name) const;
    /// Position of `name`; throws argument_error if undeclared.
    std::size_t index_of(const std::string &name) const;

    bool operator==(const VarSpace &) const = default;

  private:
    std::vector<std::string> names_;
};

/// Immutable scalar expression over exact rationals. Every publicly obtainable
/// Expr is in canonical form: fully expanded into a sum of terms sorted by
/// MonomialOrder, constants folded, no nested sums/products, no negation
/// nodes, powers only of variables with exponent >= 2.
class Expr {
  public:
    enum class Kind { Constant, Variable, Negate, Sum, Product, Power };

    /// The zero constant.
    Expr();

    static Expr constant(Rational value);
    static Expr integer(long long value) { return constant(Rational(value)); }
    static Expr variable(const std::string &name);

    Kind kind() const;
    /// Kind::Constant only.
    const Rational &constant_value() const;
    /// Kind::Variable only.
    const std::string &variable_name() const;
    /// Children: all summands / factors, the negated child, or the power base.
    std::span<const Expr> operands() const;
    /// Kind::Power only.
    int exponent() const;

    bool is_zero() const;
    bool is_one() const;
    /// Sorted distinct variable names occurring in the expression.
    std::vector<std::string> variables() const;

    /// Canonical text form; parse(str()) reproduces the expression exactly.
    std::string str() const;

    /// Expanded normal form (the basis of structural equality).
    Polynomial to_polynomial() const;
    static Expr from_polynomial(const Polynomial &p);

    /// Structural equality of canonical trees.
    bool operator==(const Expr &rhs) const;
    bool operator!=(const Expr &rhs) const { return !(*this == rhs); }

    friend Expr operator+(const Expr &a, const Expr &b);
    friend Expr operator-(const Expr &a, const Expr &b);
    friend Expr operator*(const Expr &a, const Expr &b);
    friend Expr operator-(const Expr &a);

  private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;

    friend struct detail::ExprBuilder;
};

/// Integer power, exponent >= 0.
Expr pow(const Expr &base, int exponent);

std::ostream &operator<<(std::ostream &os, const Expr &e);

/// Parses `text` against the expression grammar; all identifiers must be
/// declared in `vars`. The result is canonical.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ['^' integer]
///   atom   := number | identifier | '(' expr ')'
///   number := digits ['.' digits] | digits '/' digits
///
/// Unary minus binds looser than '^', so -x^2 reads as -(x^2). The fraction
/// form 3/2 is an exact rational literal, not a division operator.
Expr parse(const std::string &text, const VarSpace &vars);

/// Exact evaluation at a rational point.
Rational evaluate(const Expr &e, const std::map<std::string, Rational> &point);
/// Floating-point evaluation; rationals convert at the leaves.
double evaluate(const Expr &e, const std::map<std::string, double> &point);

/// Symbolic partial derivative, canonical. Differentiating by a variable the
/// expression does not contain yields zero.
Expr differentiate(const Expr &e, const std::string &var);

/// Simultaneous substitution (no chaining through substituted results).
Expr substitute(const Expr &e, const std::map<std::string, Expr> &map);

/// Canonicalization entry point. Idempotent; every public Expr is already
/// canonical, so this is mainly useful as an explicit normalization step.
Expr simplify(const Expr &e);

/// True if the canonical forms match structurally; otherwise falls back to
/// exact agreement at 20 pseudorandom rational points (deterministic seed).
bool expr_equal(const Expr &a, const Expr &b);

/// Adapts an expression to a point-indexed callable: coordinates are passed in
/// the order of `vars`. Used to feed symbolic results to the fd module.
std::function<double(const std::vector<double> &)> make_evaluator(const Expr &e,
                                                                  const VarSpace &vars);

} // namespace tcalc
