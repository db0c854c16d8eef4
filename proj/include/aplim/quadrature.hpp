#pragma once

#include <functional>

#include "aplim/rational.hpp"
#include "aplim/real.hpp"

namespace aplim {

struct QuadratureResult {
    Real value;
    double error_estimate;  // last inter-level difference (heuristic)
    int levels_used;
};

// Integrand on (0,1) evaluated at abscissae given as distances from both
// endpoints (x0 = x, x1 = 1 - x, each accurate to full precision), so
// algebraic endpoint singularities with exponent > -1 stay benign.
using Integrand1D = std::function<Real(const Real& x0, const Real& x1)>;

// Tanh-sinh quadrature over (0,1): doubles the node density per level up to
// `levels`, returning early once the inter-level difference stops mattering
// at this precision. Throws NonFiniteIntegrand if f returns a non-finite
// value away from the endpoints.
QuadratureResult tanh_sinh(const Integrand1D& f, int levels, Prec prec);

// J_n(z) over the unit square for 0 < z < 1. `swap_axes` refines y outside
// and x inside instead (symmetry cross-check).
QuadratureResult integral_J(long n, const Rational& z, int levels, Prec prec,
                            bool swap_axes = false);

// Beukers triple integral I_n (with its 1/2 prefactor), n in {0, 1}.
QuadratureResult integral_beukers(int n, int levels, Prec prec);

// L_n(Z) for integer Z >= 2; sigma1 = L_0(Z).
QuadratureResult integral_L(long n, long Z, int levels, Prec prec);
QuadratureResult integral_sigma2(long Z, int levels, Prec prec);

// The Z-form double integral of f and the one-dimensional log-kernel form.
QuadratureResult integral_f_zform(long Z, int levels, Prec prec);
QuadratureResult integral_f_logform(const Rational& z, int levels, Prec prec);

// Mahler measure of X + 1/X + Y + 1/Y + k via the Jensen reduction: the Y
// integral collapses to log of the larger root modulus of
// y^2 + (2 cos t + k) y + 1, which is zero where |2 cos t + k| < 2. k > 0,
// k != 4.
QuadratureResult mahler_mu(const Real& k, int levels, Prec prec);

// Value of the Jensen integrand at angle t (exposed for the split-point
// continuity check).
Real mahler_integrand(const Real& k, const Real& t);

}  // namespace aplim
