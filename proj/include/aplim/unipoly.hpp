#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aplim/rational.hpp"

namespace aplim {

// Dense univariate polynomial over Q in one symbol (written n throughout).
// Coefficient vector never stores trailing zeros; the zero polynomial is {}.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly constant(const Rational& c);
    static UniPoly monomial(int degree, const Rational& c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(int i) const;
    const Rational& leading() const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational eval(const Rational& x) const;

    // Substitutes n -> n + k.
    UniPoly shifted(long k) const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly operator*(const Rational& c) const;

    bool operator==(const UniPoly& o) const = default;

    // Euclidean division; b must be nonzero.
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);
    // Monic gcd; gcd(0, 0) = 0.
    static UniPoly gcd(UniPoly a, UniPoly b);

    UniPoly monic() const;

    // Multiplies by the lcm of coefficient denominators and divides by the gcd
    // of numerators; returns the integer-content-free integer polynomial.
    UniPoly primitive_part() const;

    std::string to_string(const std::string& var = "n") const;

  private:
    void trim();
    std::vector<Rational> coeffs_;
};

// num/den over Q[n], normalized: gcd(num, den) = 1 and den monic. Zero is 0/1.
class RationalFunction {
  public:
    RationalFunction() : den_(UniPoly::constant(1)) {}
    RationalFunction(UniPoly num, UniPoly den);
    static RationalFunction of(const UniPoly& p);
    static RationalFunction constant(const Rational& c);

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // Throws DomainError on a pole.
    Rational eval(const Rational& x) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

    bool operator==(const RationalFunction& o) const = default;

  private:
    void normalize();
    UniPoly num_;
    UniPoly den_;
};

}  // namespace aplim
