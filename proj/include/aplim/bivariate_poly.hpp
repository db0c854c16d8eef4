#pragma once

#include <map>
#include <string>
#include <utility>

#include "aplim/rational.hpp"
#include "aplim/unipoly.hpp"

namespace aplim {

// Integer-coefficient polynomial in (n, z), stored sparsely by exponent pair.
// Zero coefficients are never stored.
class BivariatePoly {
  public:
    using Key = std::pair<int, int>;  // (deg_n, deg_z)

    BivariatePoly() = default;
    static BivariatePoly constant(const Int& c);
    static BivariatePoly monomial(int deg_n, int deg_z, const Int& c);
    // The symbols themselves, for readable construction code.
    static BivariatePoly n();
    static BivariatePoly z();

    void set_coeff(int deg_n, int deg_z, const Int& c);
    Int coeff(int deg_n, int deg_z) const;
    const std::map<Key, Int>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int degree_n() const;
    int degree_z() const;

    Rational eval(const Int& n, const Rational& z) const;
    Rational eval(long n, const Rational& z) const;

    // Collapses z to a fixed rational, leaving a univariate polynomial in n.
    UniPoly at_z(const Rational& z) const;

    // Substitutes n -> n + k (exact binomial expansion).
    BivariatePoly shift_n(long k) const;

    BivariatePoly pow(unsigned e) const;

    BivariatePoly operator-() const;
    BivariatePoly& operator+=(const BivariatePoly& o);
    BivariatePoly& operator-=(const BivariatePoly& o);
    friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
    friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
    BivariatePoly operator*(const Int& c) const;

    bool operator==(const BivariatePoly& o) const = default;

  private:
    std::map<Key, Int> terms_;
};

BivariatePoly operator*(long c, const BivariatePoly& p);

}  // namespace aplim
