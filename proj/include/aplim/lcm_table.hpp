#pragma once

#include <vector>

#include "aplim/rational.hpp"

namespace aplim {

// D_n = lcm(1..n). D_0 = 1 by the empty-lcm convention; D_n = lcm(D_{n-1}, n).
class LcmTable {
  public:
    explicit LcmTable(long max_n);

    const Int& at(long n) const;
    long max_n() const { return static_cast<long>(values_.size()) - 1; }

  private:
    std::vector<Int> values_;
};

Int lcm_upto(long n);

}  // namespace aplim
