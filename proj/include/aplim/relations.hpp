#pragma once

#include <vector>

#include "aplim/rational.hpp"
#include "aplim/real.hpp"

namespace aplim {

struct RelationResult {
    // Empty when no relation was found below the norm bound; otherwise a
    // primitive integer vector (gcd 1, first nonzero entry positive) with
    // |sum c_i x_i| < residual.
    std::vector<Int> coefficients;
    double residual = 0.0;
    // When empty: certified lower bound on the 2-norm of any integer relation.
    double norm_bound = 0.0;
    bool found() const { return !coefficients.empty(); }
};

// PSLQ integer-relation detection at the given working precision. Detection
// threshold is 2^(-prec/2). Returns an empty-coefficient result once the norm
// bound excludes every relation with |c|_inf <= max_norm. Throws
// InsufficientPrecision when iterations exhaust the precision without a
// decision.
RelationResult find_relation(const std::vector<Real>& values, const Int& max_norm, Prec prec);

}  // namespace aplim
