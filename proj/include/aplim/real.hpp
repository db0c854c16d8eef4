#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "aplim/rational.hpp"

namespace aplim {

using Prec = mpfr_prec_t;

// Value-semantic wrapper over mpfr_t with round-to-nearest everywhere.
// Precision travels with the value; binary operations take the max precision
// of their operands. No global precision state.
class Real {
  public:
    explicit Real(Prec prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real of(double x, Prec prec);
    static Real of(long x, Prec prec);
    static Real of(int x, Prec prec) { return of(static_cast<long>(x), prec); }
    static Real of(const Int& x, Prec prec);
    static Real of(const Rational& x, Prec prec);
    static Real pi(Prec prec);
    static Real euler_gamma(Prec prec);

    Prec prec() const { return mpfr_get_prec(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact conversion; value must be finite.
    Rational to_rational() const;
    std::string to_string(size_t digits = 20) const;

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // log2-magnitude of the value (mpfr exponent); value must be nonzero.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

    Real operator-() const;
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(long a, const Real& b);
    friend Real operator/(long a, const Real& b);

    std::strong_ordering operator<=>(const Real& o) const;
    bool operator==(const Real& o) const { return mpfr_cmp(v_, o.v_) == 0; }
    std::strong_ordering operator<=>(long x) const;
    bool operator==(long x) const { return mpfr_cmp_si(v_, x) == 0; }
    std::strong_ordering operator<=>(double x) const;
    bool operator==(double x) const { return mpfr_cmp_d(v_, x) == 0; }

    friend Real abs(const Real& a);
    friend Real sqrt(const Real& a);
    friend Real log(const Real& a);
    friend Real exp(const Real& a);
    friend Real pow_si(const Real& a, long e);
    friend Real cos(const Real& a);
    friend Real acos(const Real& a);
    friend Real sinh(const Real& a);
    friend Real cosh(const Real& a);
    friend Real max(const Real& a, const Real& b);
    friend Real min(const Real& a, const Real& b);

  private:
    mpfr_t v_;
};

}  // namespace aplim
