#include <doctest.h>

#include <random>

#include "aplim/errors.hpp"
#include "aplim/hypergeom.hpp"
#include "aplim/sequences.hpp"

using namespace aplim;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

HypergeometricSpec gauss_2f1(const Rational& a, const Rational& b, const Rational& c,
                             const Rational& z) {
    return {{a, b}, {c}, z};
}

}  // namespace

TEST_CASE("pfq with zero argument is exactly one") {
    BallReal v = pfq(gauss_2f1(q(1, 2), q(1, 2), Rational(1), Rational(0)), 128);
    CHECK(v.mid() == 1L);
    CHECK(v.rad() == 0.0);
}

TEST_CASE("pfq rejects bad parameters") {
    CHECK_THROWS_AS(pfq(gauss_2f1(q(1, 2), q(1, 2), Rational(-1), q(1, 2)), 64), DomainError);
    CHECK_THROWS_AS(pfq(gauss_2f1(q(1, 2), q(1, 2), Rational(1), Rational(1)), 64),
                    NoConvergence);
    CHECK_THROWS_AS(pfq(gauss_2f1(q(1, 2), q(1, 2), Rational(1), Rational(-2)), 64),
                    NoConvergence);
}

TEST_CASE("pfq terminates on negative-integer upper parameter") {
    // 2F1(-3, 1/2; 1; z) is a cubic polynomial in z; the ball is exact.
    BallReal v = pfq(gauss_2f1(Rational(-3), q(1, 2), Rational(1), q(1, 3)), 128);
    Rational z = q(1, 3);
    Rational expected = 1 + Rational(-3) * q(1, 2) * z +
                        Rational(6) * (q(1, 2) * q(3, 2) / 2) * z * z / 2 +
                        Rational(-6) * (q(1, 2) * q(3, 2) * q(5, 2) / 6) * z * z * z / 6;
    // No truncation tail; only the final base-2 rounding of the exact sum.
    CHECK(v.rad() < 1e-38);
    CHECK(v.contains(expected));
}

TEST_CASE("lambda, rho1, rho2 near zero argument") {
    const Prec prec = 128;
    Rational z = q(1, 1024);
    BallReal two_pi = pi_val(prec) * 2;
    double diff = std::fabs((lambda_val(z, prec).mid() - two_pi.mid()).to_double());
    CHECK(diff < 2 * 3.15 * 1e-3);
    CHECK(std::fabs((rho1(z, prec).mid() - pi_val(prec).mid()).to_double()) < 1e-3);
    CHECK(std::fabs((rho2(z, prec).mid() - pi_val(prec).mid()).to_double()) < 1e-3);
}

TEST_CASE("contiguous relation ties rho1 and rho2 together") {
    const Prec prec = 160;
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> num(1, 30);
    for (int i = 0; i < 12; ++i) {
        long a = num(rng);
        Rational z = make_rational(a, 64);
        BallReal lhs = rho2(z, prec) - rho1(z, prec);
        BallReal rhs = -(pi_val(prec) * pfq({{q(1, 2), q(3, 2)}, {Rational(2)}, z}, prec) *
                         (z / 2));
        CHECK((lhs - rhs).contains_zero());
    }
}

TEST_CASE("higher precision balls nest inside lower precision ones") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<long> num(-500, 500);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        long a = num(rng);
        if (a == 0) continue;
        Rational z = make_rational(a, 1024);
        BallReal coarse = rho1(z, 96);
        BallReal fine = rho1(z, 160);
        CHECK(coarse.contains_ball(fine));
        ++checked;
    }
    CHECK(checked > 990);
}

TEST_CASE("doubling the truncation length stays inside the previous ball") {
    Rational z = q(1, 2);
    HypergeometricSpec spec{{q(1, 2), q(1, 2), q(1, 2)}, {Rational(1), q(3, 2)}, z};
    for (long terms : {40L, 80L, 160L}) {
        BallReal shorter = pfq(spec, 96, terms);
        BallReal longer = pfq(spec, 96, 2 * terms);
        CHECK(shorter.contains(longer.mid().to_rational()));
    }
}

TEST_CASE("bernoulli numbers") {
    auto b = bernoulli_numbers(12);
    CHECK(b[0] == 1);
    CHECK(b[1] == q(-1, 2));
    CHECK(b[2] == q(1, 6));
    CHECK(b[3] == 0);
    CHECK(b[4] == q(-1, 30));
    CHECK(b[6] == q(1, 42));
    CHECK(b[8] == q(-1, 30));
    CHECK(b[10] == q(5, 66));
    CHECK(b[12] == q(-691, 2730));
}

TEST_CASE("zeta(3) against its decimal expansion") {
    BallReal v = zeta3(160);
    // 1.2020569031595942853997381615114499907649862923405 (50 digits)
    Int num;
    mpz_set_str(num.get_mpz_t(), "12020569031595942853997381615114499907649862923405", 10);
    Rational ref = make_rational(num, rational_pow(Rational(10), 49).get_num());
    CHECK(std::fabs((v.mid() - Real::of(ref, 200)).to_double()) < 1e-45);
    CHECK(v.rad() < 1e-46);
}

TEST_CASE("zeta(3) ball swallows the recurrence quotient") {
    AperyPair p = apery_zeta3(30);
    Rational quotient = p.u[30] / p.v[30];
    BallReal v = zeta3(128);
    double diff = std::fabs((v.mid() - Real::of(quotient, 160)).to_double());
    CHECK(diff < 1e-10);
}

TEST_CASE("square root and exponential round-trips") {
    BallReal s = sqrt_val(BallReal::of(2, 128));
    CHECK((s * s).contains(Rational(2)));
    BallReal e = exp_val(log_val(BallReal::of(7, 128)));
    CHECK(e.contains(Rational(7)));
}

TEST_CASE("f series-plus-log form behaves at small z") {
    const Prec prec = 128;
    Rational z = q(1, 256);
    BallReal f = f_val(z, prec);
    BallReal residue = f + pi_val(prec) * log_val(BallReal::of(z / 16, prec));
    // residue = -pi (z/4) 4F3(...) = O(z)
    CHECK(residue.abs_upper() < 3.1416 * 0.25 * (1.0 / 256.0) * 1.1);
    CHECK(residue.abs_upper() > 1e-4);
}
