#pragma once

#include <array>
#include <string>
#include <vector>

#include "aplim/ball.hpp"
#include "aplim/rational.hpp"
#include "aplim/recurrence.hpp"

namespace aplim {

// u_0=0, u_1=6 and v_0=1, v_1=5 run through the zeta(3) recurrence; u_n/v_n
// converges to zeta(3).
struct AperyPair {
    std::vector<Rational> u;
    std::vector<Rational> v;
};
AperyPair apery_zeta3(long N);

// The three solution runs of the J-family recurrence whose initial segments
// are the coordinates of J_0, J_1, J_2 over (lambda, rho1, rho2), so that
// J_n = a_n lambda + b_n rho1 + c_n rho2 for all n.
struct CoordinateTriple {
    Rational z;
    std::vector<Rational> a, b, c;
};
CoordinateTriple coordinate_triple(const Rational& z, long N);

// Exact J_1 and J_2 coordinates at z (used for the initial vectors above and
// exposed for relation tests).
std::array<Rational, 3> j1_coordinates(const Rational& z);
std::array<Rational, 3> j2_coordinates(const Rational& z);

// A_n = a_n c_{n+1} - a_{n+1} c_n and B_n = -(b_n c_{n+1} - b_{n+1} c_n);
// construction checks A_0..A_2, B_0..B_2 against their closed forms and
// throws InitialValueMismatch on disagreement.
struct WedgePair {
    Rational z;
    std::vector<Rational> A, B;
};
WedgePair wedge_pair(const Rational& z, long N);

// Closed forms of the first wedge values as functions of z.
Rational wedge_A_closed(int n, const Rational& z);  // n in {0,1,2}
Rational wedge_B_closed(int n, const Rational& z);

// One integrality claim checked exactly for n = start_n..N.
struct IntegralityClaim {
    std::string id;
    long start_n = 0;
    bool pass = false;
    long first_fail = -1;           // -1 when pass
    std::string fail_value;         // the offending non-integer, as p/q
};

struct IntegralityReport {
    Rational z;
    long N = 0;
    std::vector<IntegralityClaim> claims;
    bool all_pass() const;
};

// Checks the five displayed memberships exactly for 1/z an integer with
// |1/z| >= 2: z^n 2^{4n} a_n, z^n 2^{4n} D_{2n}^2 b_n, z^n 2^{4n} D_{2n}^2 c_n,
// z^{2n+2} 2^{2n} D_{2n} (n+1)(2n+1)^2 A_n  (from n = 1; the n = 0 value is
// the z-independent constant 13/2, see the report), and
// z^{2n+2} 2^{2n} D_{2n}^2 (n+1)(2n+1)^2 B_n.
IntegralityReport integrality_report(const Rational& z, long N);

struct LimitEstimate {
    BallReal value;   // midpoint = last quotient; radius = last step (heuristic)
    double rate = 0;  // fitted geometric decay of successive quotient steps
};

// Last-quotient limit extraction for numerators[n]/denominators[n].
LimitEstimate apery_limit(const std::vector<Rational>& numerators,
                          const std::vector<Rational>& denominators, Prec prec);

}  // namespace aplim
