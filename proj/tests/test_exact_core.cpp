#include <doctest.h>

#include <random>

#include "aplim/ball.hpp"
#include "aplim/bivariate_poly.hpp"
#include "aplim/errors.hpp"
#include "aplim/lcm_table.hpp"
#include "aplim/rational.hpp"
#include "aplim/real.hpp"
#include "aplim/reconstruct.hpp"
#include "aplim/unipoly.hpp"

using namespace aplim;

namespace {

std::mt19937 rng(20240611);

Rational random_rational(long num_range = 1000, long den_range = 60) {
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<long> den(1, den_range);
    return make_rational(Int(num(rng)), Int(den(rng)));
}

BivariatePoly random_poly(int max_deg = 3, long coeff_range = 9) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coeff(-coeff_range, coeff_range);
    BivariatePoly p;
    for (int t = 0; t < 6; ++t) p += BivariatePoly::monomial(deg(rng), deg(rng), Int(coeff(rng)));
    return p;
}

// 16(27z-32)n^4 + 48(13z-14)n^3 + 8(18z-11)n^2 - 4(19z-24)n - (7z+6), the
// quartic factor the wedge operator is built around.
BivariatePoly wedge_quartic() {
    const BivariatePoly n = BivariatePoly::n(), z = BivariatePoly::z();
    auto c = [](long v) { return BivariatePoly::constant(v); };
    auto lin = [&](long a, long b) { return c(a) * z + c(b); };
    return 16 * lin(27, -32) * n.pow(4) + 48 * lin(13, -14) * n.pow(3) +
           8 * lin(18, -11) * n.pow(2) - 4 * lin(19, -24) * n - lin(7, 6);
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rational("6/4") == make_rational(3, 2));
    CHECK(parse_rational("-10/5") == Rational(-2));
    CHECK(to_string(make_rational(-3, 6)) == "-1/2");
    CHECK(is_integer(parse_rational("8/2")));
    CHECK_FALSE(is_integer(parse_rational("9/2")));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK(rational_pow(make_rational(2, 3), -2) == make_rational(9, 4));
}

TEST_CASE("rational arithmetic is exact") {
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(), b = random_rational();
        CHECK((a + b) - b == a);
        if (b != 0) CHECK((a * b) / b == a);
    }
}

TEST_CASE("lcm_upto examples") {
    CHECK(lcm_upto(1) == 1);
    CHECK(lcm_upto(6) == 60);
    CHECK(lcm_upto(10) == 2520);
}

TEST_CASE("lcm table divisibility up to 1000") {
    LcmTable table(1000);
    CHECK(table.at(0) == 1);
    CHECK(table.at(1) == 1);
    for (long n = 2; n <= 1000; ++n) {
        const Int& dn = table.at(n);
        CHECK(dn % table.at(n - 1) == 0);
        for (long m = 2; m <= n; ++m) CHECK(dn % m == 0);
    }
}

TEST_CASE("poly_eval pinned examples") {
    BivariatePoly p0 = wedge_quartic();
    CHECK(p0.eval(0L, Rational(1)) == Rational(-13));
    CHECK(BivariatePoly().eval(17L, make_rational(3, 7)) == 0);
    BivariatePoly nz = BivariatePoly::n() * BivariatePoly::z();
    CHECK(nz.eval(3L, make_rational(1, 2)) == make_rational(3, 2));
}

TEST_CASE("poly_eval is a ring homomorphism") {
    for (int i = 0; i < 50; ++i) {
        BivariatePoly p = random_poly(), q = random_poly();
        Int n(static_cast<long>(rng() % 19) - 9);
        Rational z = random_rational(9, 5);
        CHECK((p + q).eval(n, z) == p.eval(n, z) + q.eval(n, z));
        CHECK((p * q).eval(n, z) == p.eval(n, z) * q.eval(n, z));
    }
}

TEST_CASE("shift_n substitutes n -> n+k") {
    for (int i = 0; i < 30; ++i) {
        BivariatePoly p = random_poly();
        long k = static_cast<long>(rng() % 7) - 3;
        Rational z = random_rational(9, 5);
        for (long n = -2; n <= 2; ++n) CHECK(p.shift_n(k).eval(n, z) == p.eval(n + k, z));
    }
}

TEST_CASE("unipoly division and gcd") {
    UniPoly a({Rational(-1), Rational(0), Rational(1)});  // n^2 - 1
    UniPoly b({Rational(-1), Rational(1)});               // n - 1
    auto [q, r] = UniPoly::divrem(a, b);
    CHECK(r.is_zero());
    CHECK(q == UniPoly({Rational(1), Rational(1)}));

    UniPoly g({Rational(2), Rational(3)});
    UniPoly x = a * g, y = b * g;
    UniPoly d = UniPoly::gcd(x, y);
    CHECK(d.degree() == 2);
    CHECK(UniPoly::divrem(d, b).second.is_zero());
    CHECK(UniPoly::divrem(d, g.monic()).second.is_zero());
}

TEST_CASE("unipoly shift") {
    UniPoly p({Rational(1), Rational(-4), Rational(0), Rational(2)});
    for (long k = -3; k <= 3; ++k)
        for (long x = -2; x <= 2; ++x)
            CHECK(p.shifted(k).eval(Rational(x)) == p.eval(Rational(x + k)));
}

TEST_CASE("rational function normalizes") {
    UniPoly num({Rational(-1), Rational(0), Rational(1)});
    UniPoly den({Rational(-1), Rational(1)});
    RationalFunction f(num, den);
    CHECK(f.num() == UniPoly({Rational(1), Rational(1)}));
    CHECK(f.den() == UniPoly::constant(1));
    CHECK(f.eval(Rational(5)) == Rational(6));

    RationalFunction g(UniPoly::constant(1), UniPoly({Rational(0), Rational(2)}));
    CHECK(g.den() == UniPoly({Rational(0), Rational(1)}));  // monic denominator
    CHECK(g.num() == UniPoly::constant(make_rational(1, 2)));
    CHECK_THROWS_AS(g.eval(Rational(0)), DomainError);
}

TEST_CASE("ball arithmetic encloses") {
    const Prec prec = 128;
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(), b = random_rational();
        BallReal ba = BallReal::of(a, prec), bb = BallReal::of(b, prec);
        CHECK(((ba + bb) - bb).contains(a));
        CHECK((ba * bb).contains(a * b));
        if (abs(b) > make_rational(1, 1000)) CHECK((ba / bb).contains(a / b));
    }
    BallReal two = BallReal::of(2, prec);
    CHECK((sqrt(two) * sqrt(two)).contains(Rational(2)));
    BallReal seven = BallReal::of(7, prec);
    CHECK(exp(log(seven)).contains(Rational(7)));
    CHECK(pow_si(BallReal::of(make_rational(3, 2), prec), -3).contains(make_rational(8, 27)));
}

TEST_CASE("ball domain errors") {
    const Prec prec = 64;
    BallReal straddle(Real::of(0.0, prec), 1.0);
    CHECK_THROWS_AS(log(straddle), DomainError);
    CHECK_THROWS_AS(BallReal::of(1, prec) / straddle, DomainError);
    BallReal below(Real::of(-1.0, prec), 0.5);
    CHECK_THROWS_AS(sqrt(below), DomainError);
    CHECK(sqrt(BallReal::of(0, prec)).contains(Rational(0)));
}

TEST_CASE("ball radius survives underflow pressure") {
    const Prec prec = 256;
    BallReal tiny(Real::of(0.0, prec), 1e-200);
    BallReal prod = tiny * tiny;
    CHECK(prod.rad() > 0.0);  // 1e-400 must round up, not vanish
    CHECK(prod.contains(Rational(0)));
}

TEST_CASE("rational_reconstruct examples") {
    const Prec prec = 128;
    BallReal half(Real::of(0.5, prec), 1e-12);
    auto r = rational_reconstruct(half, Int(100));
    REQUIRE(r.has_value());
    CHECK(*r == make_rational(1, 2));

    BallReal pi_ball = BallReal::pi(prec);
    BallReal pi_wide(pi_ball.mid(), 1e-12);
    CHECK_FALSE(rational_reconstruct(pi_wide, Int(10)).has_value());

    Real mid = Real::of(make_rational(13, 2), prec) + Real::of(1e-15, prec);
    auto r2 = rational_reconstruct(BallReal(mid, 1e-12), Int(10));
    REQUIRE(r2.has_value());
    CHECK(*r2 == make_rational(13, 2));

    auto r3 = rational_reconstruct(BallReal::of(make_rational(-22, 7), prec), Int(10));
    REQUIRE(r3.has_value());
    CHECK(*r3 == make_rational(-22, 7));

    CHECK_THROWS_AS(rational_reconstruct(BallReal(Real::of(0.5, prec), 0.1), Int(100)),
                    std::invalid_argument);
}

TEST_CASE("reconstruct randomized round-trip") {
    const Prec prec = 192;
    for (int i = 0; i < 100; ++i) {
        Rational q = random_rational(5000, 97);
        BallReal ball(Real::of(q, prec), 1e-9);
        auto got = rational_reconstruct(ball, Int(100));
        REQUIRE(got.has_value());
        CHECK(*got == q);
    }
}
