#pragma once

#include <string>
#include <vector>

#include "aplim/ball.hpp"
#include "aplim/bivariate_poly.hpp"
#include "aplim/errors.hpp"
#include "aplim/rational.hpp"
#include "aplim/unipoly.hpp"

namespace aplim {

// Linear difference operator sum_{i=0}^{r} p_i(n, z) x_{n+r-i} = 0 with
// integer polynomial coefficients; p_0 multiplies the highest shift and the
// relation holds for n = 0, 1, 2, ...
struct Recurrence {
    std::string name;
    int order = 0;
    std::vector<BivariatePoly> coeffs;  // size order + 1

    Recurrence() = default;
    Recurrence(std::string name, std::vector<BivariatePoly> coeffs);

    const BivariatePoly& p(int i) const { return coeffs.at(static_cast<size_t>(i)); }
};

// The exterior-square linear system turned out rank-deficient: the minor
// sequence already satisfies the lower-order operator carried here.
struct DegenerateSystem : Error {
    DegenerateSystem(std::string msg, Recurrence lower)
        : Error(std::move(msg)), lower_order(std::move(lower)) {}
    Recurrence lower_order;
};

// Data-file format: header "recurrence <name> order <r>", then for each
// i = 0..r a line "coeff <i>" followed by monomial lines "deg_n deg_z value".
Recurrence parse_recurrence(const std::string& text);
std::string format_recurrence(const Recurrence& rec);

struct SequenceRun {
    Rational z;
    std::vector<Rational> values;  // indexed from 0
    std::string recurrence_name;
};

// Exact forward run: values[0..N] from `initial` (length = order). Throws
// LeadingCoefficientVanishes if p0(n, z) = 0 at a needed index.
SequenceRun run(const Recurrence& rec, const Rational& z, const std::vector<Rational>& initial,
                long N);

// Companion matrix M(n) at fixed z: state (x_n, ..., x_{n+r-1}) -> shifted
// state. Entries are rational functions of n. Throws if p0 vanishes as a
// polynomial at this z.
std::vector<std::vector<RationalFunction>> companion_matrix(const Recurrence& rec,
                                                            const Rational& z);

// The order-3 operator annihilating x_n y_{n+1} - x_{n+1} y_n for every pair
// of solutions x, y of `rec` at this z, built from the second compound of the
// companion matrix and normalized to content-free integer coefficients with a
// positive leading term. Throws DegenerateSystem when the minors satisfy a
// lower-order operator.
Recurrence exterior_square(const Recurrence& rec, const Rational& z);

struct ComplexBall {
    BallReal re;
    BallReal im;
    double modulus_upper() const;
    double modulus_lower() const;
};

// Roots of the limiting characteristic polynomial (leading n-coefficients of
// each p_i at z), each enclosed in a certified disk; sorted by decreasing
// modulus. Zero roots from vanishing trailing coefficients are included.
std::vector<ComplexBall> characteristic_roots_at_infinity(const Recurrence& rec,
                                                          const Rational& z, Prec prec);

struct AnnihilationReport {
    bool ok = false;                   // every window encloses zero
    long first_failure = -1;           // window index that misses zero (-1 if none)
    double worst_margin_bits = 0.0;    // min over windows of log2(scale / |window|)
};

// Checks that consecutive windows of `values` satisfy the recurrence within
// their certified radii. Requires at least order+1 values. Throws
// InsufficientPrecision if a window enclosing zero is too wide to certify at
// least `min_margin_bits` bits of cancellation against the window's term size.
AnnihilationReport verify_annihilates(const Recurrence& rec, const Rational& z,
                                      const std::vector<BallReal>& values,
                                      double min_margin_bits = 20.0);

}  // namespace aplim
