#pragma once

#include <vector>

#include "aplim/ball.hpp"
#include "aplim/rational.hpp"

namespace aplim {

// Parameters of pFq(upper; lower; argument) with everything rational.
struct HypergeometricSpec {
    std::vector<Rational> upper;
    std::vector<Rational> lower;
    Rational argument;
};

// Certified series sum. Terms are accumulated exactly; the tail is bounded
// geometrically once the term-ratio envelope drops below 1. Throws
// NoConvergence if |argument| >= 1 and DomainError on a nonpositive-integer
// lower parameter. `min_terms` forces extra terms (used by truncation tests).
BallReal pfq(const HypergeometricSpec& spec, Prec prec, long min_terms = 0);

// lambda = 2 pi 3F2(1/2,1/2,1/2; 1,3/2; z), rho1 = pi 2F1(1/2,1/2; 1; z),
// rho2 = pi 2F1(-1/2,1/2; 1; z); all need 0 < |z| < 1.
BallReal lambda_val(const Rational& z, Prec prec);
BallReal rho1(const Rational& z, Prec prec);
BallReal rho2(const Rational& z, Prec prec);

// f(z) = -pi (log(z/16) + (z/4) 4F3(3/2,3/2,1,1; 2,2,2; z)) for 0 < z < 1.
BallReal f_val(const Rational& z, Prec prec);

// zeta(3) by Euler-Maclaurin with exact Bernoulli numbers and a proven
// remainder bound; independent of every recurrence in this library.
BallReal zeta3(Prec prec);

BallReal pi_val(Prec prec);
BallReal sqrt_val(const BallReal& x);
BallReal log_val(const BallReal& x);
BallReal exp_val(const BallReal& x);

// Exact Bernoulli numbers B_0..B_m (exposed for tests).
std::vector<Rational> bernoulli_numbers(int m);

}  // namespace aplim
