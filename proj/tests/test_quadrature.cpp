#include <doctest.h>

#include <cmath>

#include "aplim/errors.hpp"
#include "aplim/hypergeom.hpp"
#include "aplim/quadrature.hpp"
#include "aplim/sequences.hpp"

using namespace aplim;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

double dist(const Real& a, const Real& b) { return std::fabs((a - b).to_double()); }

Real rsqrt_prod(const Real& a, const Real& b) { return 1 / sqrt(a * b); }

}  // namespace

TEST_CASE("beta integral hits pi") {
    const Prec prec = 96;
    Integrand1D f = [](const Real& x0, const Real& x1) { return rsqrt_prod(x0, x1); };
    QuadratureResult r = tanh_sinh(f, 10, prec);
    CHECK(dist(r.value, Real::pi(prec + 16)) < 1e-15);
    CHECK(r.levels_used <= 10);
}

TEST_CASE("non-finite integrands are reported") {
    Integrand1D f = [](const Real& x0, const Real&) {
        Real half = Real::of(0.5, x0.prec());
        return 1 / (x0 - half);  // pole inside (0,1): some node lands close enough to blow up
    };
    // The pole makes the sum wobble rather than vanish; we only require the
    // hard failure when a node returns inf/nan exactly, so probe that path
    // directly with a division by zero at the center node.
    Integrand1D g = [](const Real& x0, const Real&) {
        Real num = Real::of(1, x0.prec());
        Real den(x0.prec());  // zero
        return num / den;
    };
    CHECK_THROWS_AS(tanh_sinh(g, 5, 64), NonFiniteIntegrand);
    (void)f;
}

TEST_CASE("rho integrals match the series route") {
    const Prec prec = 96;
    Rational zhalf = q(1, 2);
    Real zr = Real::of(zhalf, prec + 32);

    Integrand1D rho1_integrand = [&](const Real& x0, const Real& x1) {
        return rsqrt_prod(x0, x1) / sqrt(1 - zr * x0);
    };
    QuadratureResult r1 = tanh_sinh(rho1_integrand, 9, prec);
    CHECK(dist(r1.value, rho1(zhalf, prec).mid()) < 1e-15);

    Integrand1D rho2_integrand = [&](const Real& x0, const Real& x1) {
        return sqrt(1 - zr * x0) * rsqrt_prod(x0, x1);
    };
    QuadratureResult r2 = tanh_sinh(rho2_integrand, 9, prec);
    CHECK(dist(r2.value, rho2(zhalf, prec).mid()) < 1e-15);
}

TEST_CASE("level differences shrink fast") {
    // High precision target so no level converges early and the per-level
    // differences stay visible above the output rounding (each level roughly
    // doubles the correct digits on this integrand).
    const Prec prec = 512;
    Integrand1D f = [](const Real& x0, const Real& x1) { return rsqrt_prod(x0, x1); };
    Real l4 = tanh_sinh(f, 4, prec).value;
    Real l5 = tanh_sinh(f, 5, prec).value;
    Real l6 = tanh_sinh(f, 6, prec).value;
    double d45 = dist(l4, l5), d56 = dist(l5, l6);
    CHECK(d45 > 0.0);
    CHECK(d56 > 0.0);
    CHECK(d56 < d45);
    CHECK(d56 < 1e-8);
}

TEST_CASE("J integrals match their hypergeometric combinations") {
    const Prec prec = 96;
    Rational z = q(1, 2);
    Real lam = lambda_val(z, prec).mid();
    Real r1 = rho1(z, prec).mid();
    Real r2 = rho2(z, prec).mid();

    QuadratureResult j0 = integral_J(0, z, 7, prec);
    CHECK(dist(j0.value, lam) < 1e-12);

    auto c1 = j1_coordinates(z);
    Real j1_expected = Real::of(c1[0], prec + 16) * lam + Real::of(c1[1], prec + 16) * r1 +
                       Real::of(c1[2], prec + 16) * r2;
    QuadratureResult j1 = integral_J(1, z, 7, prec);
    CHECK(dist(j1.value, j1_expected) < 1e-10);

    auto c2 = j2_coordinates(z);
    Real j2_expected = Real::of(c2[0], prec + 16) * lam + Real::of(c2[1], prec + 16) * r1 +
                       Real::of(c2[2], prec + 16) * r2;
    QuadratureResult j2 = integral_J(2, z, 7, prec);
    CHECK(dist(j2.value, j2_expected) < 1e-8);
}

TEST_CASE("J integral is symmetric in the axis order") {
    const Prec prec = 80;
    Rational z = q(1, 3);
    QuadratureResult a = integral_J(1, z, 6, prec);
    QuadratureResult b = integral_J(1, z, 6, prec, true);
    CHECK(dist(a.value, b.value) <= a.error_estimate + b.error_estimate + 1e-18);
}

TEST_CASE("beukers integral smoke value") {
    QuadratureResult r = integral_beukers(0, 4, 64);
    CHECK(std::fabs(r.value.to_double() - 1.2020569) < 2e-3);
}

TEST_CASE("mahler integrand vanishes at the split point") {
    const Prec prec = 128;
    Real k = Real::of(q(3, 2), prec);
    Real tstar = acos((2 - k) / 2);
    CHECK(std::fabs(mahler_integrand(k, tstar).to_double()) < 1e-12);
    // Just inside the zero region it is identically zero.
    Real inside = tstar + Real::of(q(1, 100), prec);
    CHECK(mahler_integrand(k, inside).is_zero());
}

TEST_CASE("mahler measure decreases toward k = 0") {
    const Prec prec = 96;
    double last = 1e9;
    for (long den : {2L, 4L, 8L}) {
        Real k = Real::of(q(1, den), prec);
        QuadratureResult r = mahler_mu(k, 8, prec);
        double v = r.value.to_double();
        CHECK(v > 0.0);
        CHECK(v < last);
        last = v;
    }
}

TEST_CASE("mahler measure matches the series formula below k = 4") {
    const Prec prec = 96;
    for (long k : {1L, 2L, 3L}) {
        QuadratureResult jensen = mahler_mu(Real::of(k, prec), 9, prec);
        HypergeometricSpec spec{{q(1, 2), q(1, 2), q(1, 2)},
                                {Rational(1), q(3, 2)},
                                make_rational(k * k, 16)};
        Real series = (pfq(spec, prec).mid() * k) / 4;
        INFO("k = ", k);
        CHECK(dist(jensen.value, series) < 1e-8);
    }
}

TEST_CASE("mahler measure matches f above k = 4") {
    const Prec prec = 96;
    QuadratureResult jensen = mahler_mu(Real::of(5, prec), 9, prec);
    Real via_f = f_val(q(16, 25), prec).mid() / (Real::pi(prec + 16) * 2);
    CHECK(dist(jensen.value, via_f) < 1e-6);
}

TEST_CASE("f forms agree with each other") {
    const Prec prec = 96;
    Real series = f_val(q(1, 2), prec).mid();
    QuadratureResult logform = integral_f_logform(q(1, 2), 9, prec);
    CHECK(dist(series, logform.value) < 1e-12);

    Real series4 = f_val(q(1, 4), prec).mid();
    QuadratureResult zform = integral_f_zform(4, 7, prec);
    CHECK(dist(series4, zform.value) < 1e-8);
}

TEST_CASE("L-family integrals evaluate") {
    const Prec prec = 80;
    QuadratureResult sigma1 = integral_L(0, 4, 6, prec);
    CHECK(sigma1.value.to_double() > 0.0);
    QuadratureResult l1 = integral_L(1, 4, 6, prec);
    CHECK(l1.value.to_double() > 0.0);
    CHECK(l1.value.to_double() < sigma1.value.to_double());
    QuadratureResult s2 = integral_sigma2(4, 6, prec);
    CHECK(s2.value.to_double() > 0.0);
}
