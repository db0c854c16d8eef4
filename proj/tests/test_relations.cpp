#include <doctest.h>

#include <random>

#include "aplim/errors.hpp"
#include "aplim/hypergeom.hpp"
#include "aplim/quadrature.hpp"
#include "aplim/relations.hpp"
#include "aplim/sequences.hpp"

using namespace aplim;

TEST_CASE("golden ratio relation") {
    const Prec prec = 128;
    Real phi = (sqrt(Real::of(5, prec)) + 1) / 2;
    std::vector<Real> values = {Real::of(1, prec), phi, phi * phi};
    RelationResult r = find_relation(values, Int(100), prec);
    REQUIRE(r.found());
    CHECK(r.coefficients == std::vector<Int>{Int(1), Int(1), Int(-1)});
    CHECK(r.residual < 1e-30);
}

TEST_CASE("no small relation between 1 and pi") {
    const Prec prec = 256;
    std::vector<Real> values = {Real::of(1, prec), Real::pi(prec)};
    RelationResult r = find_relation(values, Int(1000000), prec);
    CHECK_FALSE(r.found());
    CHECK(r.norm_bound > 1e6);
}

TEST_CASE("planted relations are recovered 100 out of 100 times") {
    const Prec prec = 256;
    std::mt19937 rng(314159);
    std::uniform_int_distribution<long> coeff(-20, 20);
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    int recovered = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<long, 5> c{};
        do {
            for (auto& x : c) x = coeff(rng);
        } while (c[4] == 0);
        std::vector<Real> values;
        Real acc(prec);
        for (int i = 0; i < 4; ++i) {
            values.push_back(Real::of(unit(rng), prec));
            acc += values.back() * c[static_cast<size_t>(i)];
        }
        values.push_back(-(acc / c[4]));  // exact kill of the combination
        RelationResult r = find_relation(values, Int(64), prec);
        REQUIRE(r.found());
        // Compare against the planted vector up to sign and scale.
        std::vector<Int> want;
        for (long x : c) want.emplace_back(x);
        Int g(0);
        for (const auto& x : want) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        for (auto& x : want) x /= g;
        for (const auto& x : want) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : want) y = -y;
            break;
        }
        if (r.coefficients == want) ++recovered;
    }
    CHECK(recovered == 100);
}

TEST_CASE("relations are stable under precision doubling") {
    for (Prec prec : {Prec(128), Prec(256)}) {
        Real phi = (sqrt(Real::of(5, prec)) + 1) / 2;
        std::vector<Real> values = {Real::of(1, prec), phi, phi * phi};
        RelationResult r = find_relation(values, Int(100), prec);
        REQUIRE(r.found());
        CHECK(r.coefficients == std::vector<Int>{Int(1), Int(1), Int(-1)});
    }
}

TEST_CASE("quadrature J1 relation against the exact coordinates") {
    const Prec prec = 128;
    Rational z = make_rational(1, 2);
    QuadratureResult j1 = integral_J(1, z, 8, prec);
    std::vector<Real> values = {j1.value, lambda_val(z, prec).mid(), rho1(z, prec).mid(),
                                rho2(z, prec).mid()};
    RelationResult r = find_relation(values, Int(1000), 100);
    REQUIRE(r.found());
    // J1 = -5 lambda - 10 rho1 + 26 rho2 at z = 1/2
    CHECK(r.coefficients == std::vector<Int>{Int(1), Int(5), Int(10), Int(-26)});
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(find_relation({Real::of(1, 64)}, Int(10), 64), std::invalid_argument);
    CHECK_THROWS_AS(find_relation({Real::of(1, 64), Real::of(0, 64)}, Int(10), 64),
                    std::invalid_argument);
}

TEST_CASE("the L-family collapses onto the sigma basis at Z = 4") {
    // Discovery experiment, recorded rather than pinned: L_1(4) should be a
    // rational combination of rho1, rho2, sigma1, sigma2 with modest height.
    const Prec prec = 128;
    Rational z = make_rational(1, 4);
    QuadratureResult l1 = integral_L(1, 4, 9, prec);
    QuadratureResult s1 = integral_L(0, 4, 9, prec);
    QuadratureResult s2 = integral_sigma2(4, 9, prec);
    std::vector<Real> vals = {l1.value, rho1(z, prec).mid(), rho2(z, prec).mid(), s1.value,
                              s2.value};
    RelationResult r = find_relation(vals, Int(100000000), 100);
    REQUIRE(r.found());
    CHECK(r.residual < 1e-25);
    Int height(0);
    std::string found;
    for (const auto& c : r.coefficients) {
        if (abs(c) > height) height = abs(c);
        found += c.get_str() + " ";
    }
    INFO("recovered relation: ", found);
    CHECK(height < Int(100000000));
    CHECK(r.coefficients.front() != 0);  // L_1 itself participates
}
