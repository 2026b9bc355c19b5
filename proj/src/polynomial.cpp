#include "tcalc/polynomial.hpp"

#include "tcalc/errors.hpp"

namespace tcalc {

namespace {

int degree_of(const Monomial &m) {
    int d = 0;
    for (const auto &[name, e] : m)
        d += e;
    return d;
}

} // namespace

bool MonomialOrder::operator()(const Monomial &a, const Monomial &b) const {
    const int da = degree_of(a), db = degree_of(b);
    if (da != db)
        return da > db;
    // Same degree: walk variables in name order, higher exponent on the
    // earlier variable comes first.
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first != ib->first)
            return ia->first < ib->first;
        if (ia->second != ib->second)
            return ia->second > ib->second;
        ++ia;
        ++ib;
    }
    return false; // equal monomials
}

Polynomial Polynomial::constant(Rational c) {
    Polynomial p;
    if (c != 0)
        p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

Polynomial Polynomial::variable(const std::string &name) {
    Polynomial p;
    p.terms_.emplace(Monomial{{name, 1}}, Rational(1));
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const auto &[m, c] : terms_)
        d = std::max(d, degree_of(m));
    return d;
}

std::set<std::string> Polynomial::variables() const {
    std::set<std::string> vars;
    for (const auto &[m, c] : terms_)
        for (const auto &[name, e] : m)
            vars.insert(name);
    return vars;
}

void Polynomial::add_term(const Monomial &m, const Rational &c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial &rhs) const {
    Polynomial out = *this;
    for (const auto &[m, c] : rhs.terms_)
        out.add_term(m, c);
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto &[m, c] : out.terms_)
        c = -c;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial &rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial &rhs) const {
    Polynomial out;
    for (const auto &[ma, ca] : terms_)
        for (const auto &[mb, cb] : rhs.terms_) {
            Monomial m = ma;
            for (const auto &[name, e] : mb)
                m[name] += e;
            out.add_term(m, ca * cb);
        }
    return out;
}

Polynomial Polynomial::pow(int exponent) const {
    if (exponent < 0)
        throw argument_error("polynomial exponent must be >= 0");
    Polynomial out = constant(Rational(1));
    for (int i = 0; i < exponent; ++i)
        out = out * *this;
    return out;
}

Polynomial Polynomial::differentiate(const std::string &var) const {
    Polynomial out;
    for (const auto &[m, c] : terms_) {
        auto it = m.find(var);
        if (it == m.end())
            continue;
        Monomial dm = m;
        const int e = it->second;
        if (e == 1)
            dm.erase(var);
        else
            dm[var] = e - 1;
        out.add_term(dm, c * e);
    }
    return out;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial> &map) const {
    Polynomial out;
    for (const auto &[m, c] : terms_) {
        Polynomial term = constant(c);
        for (const auto &[name, e] : m) {
            auto it = map.find(name);
            const Polynomial base = it == map.end() ? variable(name) : it->second;
            term = term * base.pow(e);
        }
        out = out + term;
    }
    return out;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational> &point) const {
    Rational out(0);
    for (const auto &[m, c] : terms_) {
        Rational term = c;
        for (const auto &[name, e] : m) {
            auto it = point.find(name);
            if (it == point.end())
                throw eval_error("variable '" + name + "' has no assigned value");
            for (int i = 0; i < e; ++i)
                term *= it->second;
        }
        out += term;
    }
    return out;
}

double Polynomial::evaluate(const std::map<std::string, double> &point) const {
    double out = 0.0;
    for (const auto &[m, c] : terms_) {
        double term = rational_to_double(c);
        for (const auto &[name, e] : m) {
            auto it = point.find(name);
            if (it == point.end())
                throw eval_error("variable '" + name + "' has no assigned value");
            for (int i = 0; i < e; ++i)
                term *= it->second;
        }
        out += term;
    }
    return out;
}

} // namespace tcalc
