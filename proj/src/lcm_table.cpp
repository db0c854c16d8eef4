#include "aplim/lcm_table.hpp"

#include <stdexcept>

namespace aplim {

LcmTable::LcmTable(long max_n) {
    if (max_n < 0) throw std::invalid_argument("LcmTable: negative bound");
    values_.reserve(static_cast<size_t>(max_n) + 1);
    values_.emplace_back(1);
    Int cur(1);
    for (long n = 1; n <= max_n; ++n) {
        mpz_lcm_ui(cur.get_mpz_t(), cur.get_mpz_t(), static_cast<unsigned long>(n));
        values_.push_back(cur);
    }
}

const Int& LcmTable::at(long n) const {
    if (n < 0 || n > max_n()) throw std::out_of_range("LcmTable::at");
    return values_[static_cast<size_t>(n)];
}

Int lcm_upto(long n) {
    if (n < 1) throw std::invalid_argument("lcm_upto: n must be >= 1");
    Int cur(1);
    for (long k = 2; k <= n; ++k)
        mpz_lcm_ui(cur.get_mpz_t(), cur.get_mpz_t(), static_cast<unsigned long>(k));
    return cur;
}

}  // namespace aplim
