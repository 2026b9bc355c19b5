#include "tcalc/rational.hpp"

#include "tcalc/errors.hpp"

#include <cmath>
#include <sstream>

namespace tcalc {

std::string rational_to_string(const Rational &r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x))
        throw argument_error("cannot convert non-finite value to a rational");
    return Rational(x);
}

double rational_to_double(const Rational &r) { return r.convert_to<double>(); }

bool rational_is_integer(const Rational &r) { return denominator(r) == 1; }

} // namespace tcalc
