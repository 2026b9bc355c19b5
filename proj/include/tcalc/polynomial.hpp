#pragma once

#include "tcalc/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace tcalc {

/// Variable name -> exponent (> 0). The empty monomial is the constant 1.
using Monomial = std::map<std::string, int>;

/// Term order used everywhere a canonical layout is needed: higher total degree
/// first, ties broken by comparing exponents variable-by-variable in name
/// order. Deterministic, so printed polynomials are stable.
struct MonomialOrder {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

/// Multivariate polynomial with exact rational coefficients in expanded normal
/// form. This is the canonicalization engine for expressions: two polynomials
/// are equal iff their term maps are identical.
class Polynomial {
  public:
    Polynomial() = default;

    static Polynomial constant(Rational c);
    static Polynomial variable(const std::string &name);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (0 if absent).
    Rational constant_term() const;

    /// 0 for the zero polynomial and for constants.
    int total_degree() const;

    std::set<std::string> variables() const;

    const std::map<Monomial, Rational, MonomialOrder> &terms() const { return terms_; }

    Polynomial operator+(const Polynomial &rhs) const;
    Polynomial operator-(const Polynomial &rhs) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial &rhs) const;
    Polynomial pow(int exponent) const;

    Polynomial differentiate(const std::string &var) const;

    /// Simultaneous substitution: variables without an entry are kept.
    Polynomial substitute(const std::map<std::string, Polynomial> &map) const;

    Rational evaluate(const std::map<std::string, Rational> &point) const;
    double evaluate(const std::map<std::string, double> &point) const;

    bool operator==(const Polynomial &) const = default;

  private:
    void add_term(const Monomial &m, const Rational &c);

    std::map<Monomial, Rational, MonomialOrder> terms_; // no zero coefficients
};

} // namespace tcalc
