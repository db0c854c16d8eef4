#include <doctest.h>

#include <random>

#include "aplim/data.hpp"
#include "aplim/hypergeom.hpp"
#include "aplim/lcm_table.hpp"
#include "aplim/sequences.hpp"

using namespace aplim;

TEST_CASE("apery pair initial segment") {
    AperyPair p = apery_zeta3(2);
    CHECK(p.v == std::vector<Rational>{Rational(1), Rational(5), Rational(73)});
    CHECK(p.u == std::vector<Rational>{Rational(0), Rational(6), make_rational(351, 4)});
    // D_2^3 u_2 = 8 * 351/4 = 702
    Rational d2 = Rational(lcm_upto(2));
    CHECK(d2 * d2 * d2 * p.u[2] == 702);
}

TEST_CASE("v stays integral and D_n^3 clears u up to 200") {
    AperyPair p = apery_zeta3(200);
    LcmTable lcm(200);
    for (long n = 0; n <= 200; ++n) {
        CHECK(is_integer(p.v[static_cast<size_t>(n)]));
        if (n >= 1) {
            Rational d(lcm.at(n));
            CHECK(is_integer(d * d * d * p.u[static_cast<size_t>(n)]));
        }
    }
}

TEST_CASE("coordinate triple initial data") {
    Rational zhalf = make_rational(1, 2);
    CoordinateTriple t = coordinate_triple(zhalf, 6);
    CHECK(t.a[0] == 1);
    CHECK(t.b[0] == 0);
    CHECK(t.c[0] == 0);
    CHECK(t.c[1] == 26);  // 13/(2 z^2) at z = 1/2
    CHECK(t.a[1] == -5);
    CHECK(t.b[1] == -10);

    // z (2^4) a_1 at z = 1/16 is the integer -208.
    Rational z16 = make_rational(1, 16);
    CoordinateTriple t16 = coordinate_triple(z16, 3);
    CHECK(z16 * 16 * t16.a[1] == -208);
}

TEST_CASE("wedge pair against closed forms") {
    CHECK(wedge_A_closed(0, Rational(1)) == make_rational(13, 2));
    CHECK(wedge_B_closed(0, Rational(1)) == 0);
    CHECK(wedge_B_closed(1, Rational(1)) == 0);  // (1117 - 2299 + 1182)/72

    WedgePair w = wedge_pair(make_rational(1, 2), 5);
    CHECK(w.A[0] == 26);
    CHECK(w.A[1] == 146);
    CHECK(w.B[1] == make_rational(2494, 9));
    CHECK(w.A[2] == make_rational(171368, 25));

    // Determinants equal the closed forms at 10 scattered rational z.
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 12);
    int done = 0;
    while (done < 10) {
        long a = num(rng), b = den(rng);
        if (a == 0 || a == b) continue;  // z = 0 out of domain; z = 1 exercised above
        Rational z = make_rational(a, b);
        WedgePair wz = [&] {
            try {
                return wedge_pair(z, 3);
            } catch (const LeadingCoefficientVanishes&) {
                return WedgePair{Rational(0), {}, {}};
            }
        }();
        if (wz.A.empty()) continue;
        for (int n = 0; n <= 2; ++n) {
            CHECK(wz.A[static_cast<size_t>(n)] == wedge_A_closed(n, z));
            CHECK(wz.B[static_cast<size_t>(n)] == wedge_B_closed(n, z));
        }
        ++done;
    }
}

TEST_CASE("wedge sequences satisfy the shipped wedge operator") {
    Rational z = make_rational(1, 2);
    WedgePair w = wedge_pair(z, 40);
    const Recurrence& rec = data::wedge_recurrence();
    for (long n = 0; n + 3 <= 40; ++n) {
        Rational accA(0), accB(0);
        for (int i = 0; i <= 3; ++i) {
            Rational c = rec.p(i).eval(n, z);
            accA += c * w.A[static_cast<size_t>(n + 3 - i)];
            accB += c * w.B[static_cast<size_t>(n + 3 - i)];
        }
        CHECK(accA == 0);
        CHECK(accB == 0);
    }
}

TEST_CASE("integrality report at the tested 1/z values") {
    for (long zinv : {16L, 2L, -2L, 5L}) {
        IntegralityReport rep = integrality_report(make_rational(1, zinv), 50);
        INFO("1/z = ", zinv);
        CHECK(rep.all_pass());
        for (const auto& claim : rep.claims) CHECK(claim.first_fail == -1);
    }
}

TEST_CASE("integrality row n = 0") {
    IntegralityReport rep = integrality_report(make_rational(1, 4), 0);
    // a_0 = 1: the weight-free row passes; the A claim starts at n = 1 since
    // z^2 A_0 = 13/2 identically.
    CHECK(rep.claims[0].pass);
    CHECK(rep.claims[3].start_n == 1);
    CHECK(wedge_A_closed(0, make_rational(1, 4)) * make_rational(1, 16) == make_rational(13, 2));
}

TEST_CASE("the A claim with one extra factor of two holds from n = 0") {
    Rational z = make_rational(1, 8);
    long N = 40;
    WedgePair w = wedge_pair(z, N);
    LcmTable lcm(2 * N);
    Rational z2n2 = z * z, two2n(1);
    for (long n = 0; n <= N; ++n) {
        Rational weight((n + 1) * (2 * n + 1) * (2 * n + 1));
        Rational value = z2n2 * two2n * 2 * Rational(lcm.at(2 * n)) * weight *
                         w.A[static_cast<size_t>(n)];
        CHECK(is_integer(value));
        z2n2 *= z * z;
        two2n *= 4;
    }
}

TEST_CASE("integrality report is monotone in N") {
    Rational z = make_rational(-1, 3);
    IntegralityReport small = integrality_report(z, 20);
    IntegralityReport big = integrality_report(z, 45);
    for (size_t i = 0; i < small.claims.size(); ++i) {
        CHECK(small.claims[i].pass == big.claims[i].pass);
        CHECK(small.claims[i].start_n == big.claims[i].start_n);
    }
}

TEST_CASE("integrality rejects out-of-domain z") {
    CHECK_THROWS_AS(integrality_report(make_rational(2, 3), 5), std::invalid_argument);
    CHECK_THROWS_AS(integrality_report(Rational(1), 5), std::invalid_argument);
}

TEST_CASE("apery_limit on the zeta(3) quotient") {
    AperyPair p = apery_zeta3(30);
    LimitEstimate est = apery_limit(p.u, p.v, 128);
    BallReal z3 = zeta3(128);
    double diff = std::fabs((est.value.mid() - z3.mid()).to_double());
    CHECK(diff < 1e-10);
    CHECK(est.rate > 0.0);
    CHECK(est.rate < 0.01);  // quotient steps shrink by ~(17-12 sqrt 2)^2 each
}

TEST_CASE("apery_limit on a constant quotient") {
    std::vector<Rational> num(6, Rational(21)), den(6, Rational(7));
    LimitEstimate est = apery_limit(num, den, 64);
    CHECK(est.value.mid() == 3L);
    CHECK(est.value.rad() == 0.0);
    CHECK(est.rate == 0.0);
}
