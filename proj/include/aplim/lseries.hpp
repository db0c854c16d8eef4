#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aplim/rational.hpp"
#include "aplim/real.hpp"

namespace aplim {

struct CurveModel {
    std::string label;
    long k_squared = 0;  // the k^2 this curve is attached to
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    long conductor = 0;
};

std::vector<CurveModel> curve_models();
const CurveModel& curve_by_label(const std::string& label);
const CurveModel& curve_by_k2(long k2);

// a_p = p - #affine solutions of the minimal model mod p. On the minimal
// model this is also correct at bad primes (the singular point contributes
// exactly one affine solution), giving a_p in {-1, 0, 1} there.
long ap(const CurveModel& curve, long p);
// Same count by brute force over (x, y) pairs; test oracle.
long ap_xy_loop(const CurveModel& curve, long p);

// a_1..a_M via the Hecke recursion at prime powers and multiplicativity.
// Index 0 is unused.
std::vector<long> hecke_coeffs(const CurveModel& curve, long M);

// Functional-equation sign from split-point consistency of the smoothed
// L(E,2) evaluation at split_t and 1/split_t. Throws AmbiguousSign when both
// signs look consistent (raise the horizon), and Error when neither does
// (wrong model or conductor).
int epsilon_sign(const CurveModel& curve, Prec prec, double split_t = 1.2);

// Smoothed central values: s = 1 or 2. Heuristically accurate to roughly
// 2^-prec (truncation bounded by the divisor-function tail estimate).
Real l_value(const CurveModel& curve, int s, Prec prec);

// Central value of the chi_-4 twist (odd conductor only; level becomes 16N).
Real l_twist_chi4(const CurveModel& curve, Prec prec);

struct IdentityCheck {
    std::string name;
    Real lhs, rhs;
    double relative_diff;
    // Informational rows report measured constants; they do not gate the
    // pass/fail verdict of a verification run.
    bool informational = false;
};

struct LValueReport {
    CurveModel curve;
    int epsilon = 0;
    Real L1, L2, lprime0;
    std::optional<Real> L1_twist;
    Real mu;                              // Mahler measure of the attached polynomial
    std::optional<Rational> mu_over_lprime;  // reconstructed rational ratio
    std::vector<IdentityCheck> identity_checks;
    // Worst relative difference over the asserted (non-informational) rows.
    double max_relative_diff() const;
};

// k_key in {"1", "sqrt2", "2", "2sqrt2", "3"}: computes mu(k), the L-values
// of the attached curve, the reconstructed ratio mu / L'(E,0), and the exact
// displayed identities for k = 2sqrt2 and k = 1.
LValueReport verify_identities(const std::string& k_key, Prec prec);

// exp(-x)-weighted incomplete-gamma tail Gamma(0, x) = E1(x), x > 0.
Real exp_integral_e1(const Real& x, Prec prec);

}  // namespace aplim
