#include "aplim/rational.hpp"

#include <stdexcept>

namespace aplim {

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0 && e < 0) throw std::invalid_argument("rational_pow: 0^negative");
    Rational base = e < 0 ? Rational(q.get_den(), q.get_num()) : q;
    if (e < 0) base.canonicalize();
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
    // base was canonical, so powers share no factor
    return out;
}

}  // namespace aplim
