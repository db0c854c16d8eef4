#include "aplim/reconstruct.hpp"

#include <stdexcept>

namespace aplim {

std::optional<Rational> rational_reconstruct(const BallReal& x, const Int& max_denominator) {
    if (max_denominator < 1)
        throw std::invalid_argument("rational_reconstruct: max_denominator < 1");
    Rational bound = make_rational(1, 2 * max_denominator * max_denominator);
    Rational rad;
    mpq_set_d(rad.get_mpq_t(), x.rad());
    if (!(rad < bound))
        throw std::invalid_argument("rational_reconstruct: ball too wide for this denominator");

    Rational mid = x.mid().to_rational();

    // Continued fraction of mid; h/k are the running convergents, seeded with
    // h_-2/k_-2 = 0/1 and h_-1/k_-1 = 1/0.
    Int h_prev(0), k_prev(1), h(1), k(0);
    Int num = mid.get_num(), den = mid.get_den();
    while (true) {
        Int a, r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Int h_next = a * h + h_prev;
        Int k_next = a * k + k_prev;
        if (k_next > max_denominator && k > 0) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        if (r == 0) break;
        num = den;
        den = r;
    }
    // First convergent loop iteration sets h/k = floor(mid)/1, so k >= 1 here.
    Rational candidate = make_rational(h, k);
    if (x.contains(candidate)) return candidate;
    return std::nullopt;
}

}  // namespace aplim
