#include "aplim/ball.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aplim/errors.hpp"

namespace aplim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One rounding of double arithmetic is off by at most half an ulp, so a single
// nextafter toward +inf restores a valid upper bound.
double up(double x) { return std::nextafter(x, kInf); }
double add_up(double a, double b) { return up(a + b); }
double mul_up(double a, double b) { return up(a * b); }
double div_up(double a, double b) { return up(a / b); }
double down(double x) { return std::nextafter(x, -kInf); }

// 2^e as double, clamped so underflow rounds up to the smallest subnormal.
double pow2(long e) {
    if (e < -1074) return DBL_TRUE_MIN;
    if (e > 1023) return kInf;
    return std::ldexp(1.0, static_cast<int>(e));
}

// Upper bound for half an ulp of x at precision p (covers one RNDN rounding).
double half_ulp(mpfr_srcptr x, Prec p) {
    if (mpfr_zero_p(x)) return 0.0;
    if (!mpfr_number_p(x)) return kInf;
    return pow2(mpfr_get_exp(x) - p);
}

double mag_up(mpfr_srcptr x) { return up(std::fabs(mpfr_get_d(x, MPFR_RNDU))); }
double mag_down(mpfr_srcptr x) { return down(std::fabs(mpfr_get_d(x, MPFR_RNDZ))); }

// Signed lower bound of the interval [mid - rad, ...].
double interval_lower(const Real& mid, double rad) {
    return down(down(mpfr_get_d(mid.raw(), MPFR_RNDD)) - rad);
}

Rational rational_of_double(double x) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

}  // namespace

BallReal::BallReal(Real mid, double rad) : mid_(std::move(mid)), rad_(rad) {
    if (std::isnan(rad_) || rad_ < 0) throw std::invalid_argument("BallReal: bad radius");
    if (!mid_.is_finite()) throw std::invalid_argument("BallReal: non-finite midpoint");
}

BallReal BallReal::of(long x, Prec prec) { return exact(Real::of(x, prec)); }

BallReal BallReal::of(const Rational& x, Prec prec) {
    Real m(prec);
    int t = mpfr_set_q(m.raw(), x.get_mpq_t(), MPFR_RNDN);
    double r = t == 0 ? 0.0 : half_ulp(m.raw(), prec);
    return BallReal(std::move(m), r);
}

BallReal BallReal::pi(Prec prec) {
    Real m = Real::pi(prec);
    double r = half_ulp(m.raw(), prec);
    return BallReal(std::move(m), r);
}

BallReal BallReal::zero_to(const Real& hi) {
    if (!hi.is_finite() || hi.sign() < 0)
        throw std::invalid_argument("BallReal::zero_to: bad bound");
    Real m = hi / 2;
    double r = add_up(up(mag_up(hi.raw()) / 2.0), half_ulp(m.raw(), m.prec()));
    return BallReal(std::move(m), r);
}

BallReal BallReal::plus_minus(const Real& r, Prec prec) {
    if (!r.is_finite() || r.sign() < 0)
        throw std::invalid_argument("BallReal::plus_minus: bad bound");
    return BallReal(Real(prec), mag_up(r.raw()));
}

bool BallReal::contains_zero() const { return contains(Rational(0)); }

bool BallReal::contains(const Rational& x) const {
    if (std::isinf(rad_)) return true;
    // Exact decision: the radius is a double, hence a rational.
    return abs(mid_.to_rational() - x) <= rational_of_double(rad_);
}

bool BallReal::contains_ball(const BallReal& o) const {
    if (std::isinf(rad_)) return true;
    if (std::isinf(o.rad_)) return false;
    return abs(o.mid_.to_rational() - mid_.to_rational()) + rational_of_double(o.rad_) <=
           rational_of_double(rad_);
}

double BallReal::upper() const { return add_up(up(mpfr_get_d(mid_.raw(), MPFR_RNDU)), rad_); }

double BallReal::lower() const { return interval_lower(mid_, rad_); }

double BallReal::abs_upper() const { return add_up(mag_up(mid_.raw()), rad_); }

double BallReal::abs_lower() const {
    double lo = down(mag_down(mid_.raw()) - rad_);
    return lo < 0 ? 0.0 : lo;
}

BallReal BallReal::operator-() const { return BallReal(-mid_, rad_); }

BallReal operator+(const BallReal& a, const BallReal& b) {
    Real m = a.mid_ + b.mid_;
    double r = add_up(add_up(a.rad_, b.rad_), half_ulp(m.raw(), m.prec()));
    return BallReal(std::move(m), r);
}

BallReal operator-(const BallReal& a, const BallReal& b) {
    Real m = a.mid_ - b.mid_;
    double r = add_up(add_up(a.rad_, b.rad_), half_ulp(m.raw(), m.prec()));
    return BallReal(std::move(m), r);
}

BallReal operator*(const BallReal& a, const BallReal& b) {
    Real m = a.mid_ * b.mid_;
    double r = add_up(mul_up(mag_up(a.mid_.raw()), b.rad_),
                      mul_up(mag_up(b.mid_.raw()), a.rad_));
    r = add_up(r, mul_up(a.rad_, b.rad_));
    r = add_up(r, half_ulp(m.raw(), m.prec()));
    return BallReal(std::move(m), r);
}

BallReal operator/(const BallReal& a, const BallReal& b) {
    double bmag = mag_down(b.mid_.raw());
    double blo = down(bmag - b.rad_);
    if (!(blo > 0)) throw DomainError("BallReal: division by ball containing zero");
    Real m = a.mid_ / b.mid_;
    // |a/b - a0/b0| <= (|a0| rb + |b0| ra) / (|b0| (|b0| - rb))
    double num = add_up(mul_up(mag_up(a.mid_.raw()), b.rad_),
                        mul_up(mag_up(b.mid_.raw()), a.rad_));
    double den = down(down(bmag * blo));
    double r = add_up(div_up(num, den), half_ulp(m.raw(), m.prec()));
    return BallReal(std::move(m), r);
}

BallReal operator*(const BallReal& a, long c) {
    Real m = a.mid_ * c;
    double r = add_up(mul_up(a.rad_, up(std::fabs(static_cast<double>(c)))),
                      half_ulp(m.raw(), m.prec()));
    return BallReal(std::move(m), r);
}

BallReal operator*(const BallReal& a, const Rational& c) {
    return a * BallReal::of(c, a.prec());
}

BallReal abs(const BallReal& a) { return BallReal(abs(a.mid_), a.rad_); }

BallReal sqrt(const BallReal& a) {
    // Exact sign decision for the interval's lower end, then a rounded-down
    // double stands in for the radius bound.
    Rational lo_q = a.mid_.to_rational() - rational_of_double(a.rad_);
    if (lo_q < 0) throw DomainError("BallReal::sqrt: interval extends below zero");
    double lo = down(mpq_get_d(lo_q.get_mpq_t()));  // mpq_get_d truncates toward zero
    Real m = sqrt(a.mid_);
    double r;
    if (a.rad_ == 0.0) {
        r = half_ulp(m.raw(), m.prec());
    } else if (lo > 0) {
        // |sqrt(x) - sqrt(m0)| <= rad / (2 sqrt(lo)) on the interval
        r = add_up(div_up(a.rad_, down(2.0 * down(std::sqrt(lo)))),
                   half_ulp(m.raw(), m.prec()));
    } else {
        // Interval is [~0, hi]; enclose the image by [0, sqrt(hi)].
        double hi = add_up(mag_up(a.mid_.raw()), a.rad_);
        r = up(std::sqrt(hi));
    }
    return BallReal(std::move(m), r);
}

BallReal log(const BallReal& a) {
    Rational lo_q = a.mid_.to_rational() - rational_of_double(a.rad_);
    if (lo_q <= 0) throw DomainError("BallReal::log: interval reaches nonpositive reals");
    double lo = down(mpq_get_d(lo_q.get_mpq_t()));
    Real m = log(a.mid_);
    double r;
    if (lo > 0) {
        r = add_up(div_up(a.rad_, lo), half_ulp(m.raw(), m.prec()));
    } else {
        r = std::numeric_limits<double>::infinity();  // positive but below double range
    }
    return BallReal(std::move(m), r);
}

BallReal exp(const BallReal& a) {
    Real m = exp(a.mid_);
    double r;
    if (a.rad_ == 0.0) {
        r = half_ulp(m.raw(), m.prec());
    } else if (a.rad_ <= 0.5) {
        // |exp(x) - exp(m0)| <= exp(m0) (e^rad - 1) <= exp(m0) rad (1 + rad)
        r = add_up(mul_up(mag_up(m.raw()), mul_up(a.rad_, up(1.0 + 2.0 * a.rad_))),
                   half_ulp(m.raw(), m.prec()));
    } else {
        double hi = add_up(up(mpfr_get_d(a.mid_.raw(), MPFR_RNDU)), a.rad_);
        r = up(std::exp(hi));  // coarse enclosure containing [e^lo, e^hi]
    }
    return BallReal(std::move(m), r);
}

BallReal pow_si(const BallReal& a, long e) {
    if (e == 0) return BallReal::of(1, a.prec());
    bool invert = e < 0;
    unsigned long k =
        invert ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    BallReal acc = BallReal::of(1, a.prec());
    BallReal base = a;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    if (invert) return BallReal::of(1, a.prec()) / acc;
    return acc;
}

std::string BallReal::to_string() const {
    return "[" + midpoint_string() + " +/- " + radius_string() + "]";
}

std::string BallReal::midpoint_string(size_t digits) const { return mid_.to_string(digits); }

std::string BallReal::radius_string() const {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", rad_);
    return buf;
}

}  // namespace aplim
