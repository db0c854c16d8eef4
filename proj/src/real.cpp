#include "aplim/real.hpp"

#include <algorithm>
#include <stdexcept>

namespace aplim {

namespace {
Prec check(Prec p) {
    if (p < MPFR_PREC_MIN || p > 1 << 24) throw std::invalid_argument("Real: bad precision");
    return p;
}
}  // namespace

Real::Real(Prec prec) {
    mpfr_init2(v_, check(prec));
    mpfr_set_zero(v_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    // Steal the limbs; leave the source valid for destruction.
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(double x, Prec prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
}

Real Real::of(long x, Prec prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
}

Real Real::of(const Int& x, Prec prec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of(const Rational& x, Prec prec) {
    Real r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::pi(Prec prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::euler_gamma(Prec prec) {
    Real r(prec);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
}

Rational Real::to_rational() const {
    if (!is_finite()) throw std::domain_error("Real::to_rational: non-finite");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string Real::to_string(size_t digits) const {
    char* s = nullptr;
    // %.*Rg keeps the output compact and round-trippable at the asked digits
    if (mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_) < 0)
        throw std::runtime_error("Real::to_string: mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

#define APLIM_REAL_BINOP(op, fn)                                  \
    Real operator op(const Real& a, const Real& b) {              \
        Real r(std::max(a.prec(), b.prec()));                     \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                          \
        return r;                                                 \
    }

APLIM_REAL_BINOP(+, mpfr_add)
APLIM_REAL_BINOP(-, mpfr_sub)
APLIM_REAL_BINOP(*, mpfr_mul)
APLIM_REAL_BINOP(/, mpfr_div)
#undef APLIM_REAL_BINOP

Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, long b) {
    Real r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

std::strong_ordering Real::operator<=>(const Real& o) const {
    int c = mpfr_cmp(v_, o.v_);
    return c <=> 0;
}

std::strong_ordering Real::operator<=>(long x) const {
    int c = mpfr_cmp_si(v_, x);
    return c <=> 0;
}

std::strong_ordering Real::operator<=>(double x) const {
    int c = mpfr_cmp_d(v_, x);
    return c <=> 0;
}

#define APLIM_REAL_UNFN(name, fn)        \
    Real name(const Real& a) {           \
        Real r(a.prec());                \
        fn(r.v_, a.v_, MPFR_RNDN);       \
        return r;                        \
    }

APLIM_REAL_UNFN(abs, mpfr_abs)
APLIM_REAL_UNFN(sqrt, mpfr_sqrt)
APLIM_REAL_UNFN(log, mpfr_log)
APLIM_REAL_UNFN(exp, mpfr_exp)
APLIM_REAL_UNFN(cos, mpfr_cos)
APLIM_REAL_UNFN(acos, mpfr_acos)
APLIM_REAL_UNFN(sinh, mpfr_sinh)
APLIM_REAL_UNFN(cosh, mpfr_cosh)
#undef APLIM_REAL_UNFN

Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return a < b ? a : b; }

}  // namespace aplim
