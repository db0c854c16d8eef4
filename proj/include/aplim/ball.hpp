#pragma once

#include <string>

#include "aplim/rational.hpp"
#include "aplim/real.hpp"

namespace aplim {

// Midpoint-radius real: the exact value it stands for lies in
// [mid - rad, mid + rad]. Every operation returns a ball containing the image
// of its input balls; radii are propagated with upward-rounded double
// arithmetic, so underflow can only widen, never drop, an error bound.
class BallReal {
  public:
    BallReal(Real mid, double rad);

    static BallReal exact(Real mid) { return BallReal(std::move(mid), 0.0); }
    static BallReal of(long x, Prec prec);
    // Rounded to prec; radius covers the rounding (zero when exact).
    static BallReal of(const Rational& x, Prec prec);
    static BallReal pi(Prec prec);
    // Interval [0, hi] given as a ball; hi must be finite and >= 0.
    static BallReal zero_to(const Real& hi);
    // Interval [-r, r] centered at zero; r must be finite and >= 0.
    static BallReal plus_minus(const Real& r, Prec prec);

    const Real& mid() const { return mid_; }
    double rad() const { return rad_; }
    Prec prec() const { return mid_.prec(); }

    bool is_exact() const { return rad_ == 0.0; }
    bool contains_zero() const;
    bool contains(const Rational& x) const;
    // Interval containment: o's interval inside this interval.
    bool contains_ball(const BallReal& o) const;

    // Double bounds on the interval (rounded outward).
    double upper() const;
    double lower() const;
    // Upper/lower bounds of |value|; lower is 0 if the ball straddles zero.
    double abs_upper() const;
    double abs_lower() const;

    BallReal operator-() const;
    friend BallReal operator+(const BallReal& a, const BallReal& b);
    friend BallReal operator-(const BallReal& a, const BallReal& b);
    friend BallReal operator*(const BallReal& a, const BallReal& b);
    // Throws DomainError if b's interval contains zero.
    friend BallReal operator/(const BallReal& a, const BallReal& b);

    friend BallReal operator*(const BallReal& a, long c);
    friend BallReal operator*(const BallReal& a, const Rational& c);

    friend BallReal abs(const BallReal& a);
    friend BallReal sqrt(const BallReal& a);   // DomainError if interval dips below 0
    friend BallReal log(const BallReal& a);    // DomainError if interval reaches <= 0
    friend BallReal exp(const BallReal& a);
    friend BallReal pow_si(const BallReal& a, long e);

    std::string to_string() const;
    std::string midpoint_string(size_t digits = 30) const;
    std::string radius_string() const;

  private:
    Real mid_;
    double rad_;
};

}  // namespace aplim
