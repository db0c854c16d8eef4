#pragma once

#include <optional>

#include "aplim/ball.hpp"
#include "aplim/rational.hpp"

namespace aplim {

// Recovers the unique p/q with q <= max_denominator inside the ball, if any,
// by walking the continued-fraction convergents of the midpoint. Requires
// rad < 1/(2 max_denominator^2): below that radius at most one such fraction
// can fit and, if it does, it is a convergent.
std::optional<Rational> rational_reconstruct(const BallReal& x, const Int& max_denominator);

}  // namespace aplim
