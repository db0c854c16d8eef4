#include "aplim/hypergeom.hpp"

#include <algorithm>
#include <cmath>

#include "aplim/errors.hpp"

namespace aplim {

namespace {

// Uniform bound for |t_{j+1}/t_j| over all j >= k: pair the numerator factors
// (a_i + j) with the denominator factors (b_i + j); each quotient is either
// <= 1 for all later j or decreasing, so its value at k bounds the tail.
// Requires every paired factor positive at k.
Rational ratio_envelope(const std::vector<Rational>& upper, std::vector<Rational> lower,
                        const Rational& abs_arg, long k) {
    lower.push_back(Rational(1));  // the k! factor
    std::vector<Rational> up_sorted = upper;
    std::sort(up_sorted.begin(), up_sorted.end());
    std::sort(lower.begin(), lower.end());
    Rational env = abs_arg;
    Rational kq(k);
    for (size_t i = 0; i < up_sorted.size(); ++i) {
        Rational num = up_sorted[i] + kq;
        Rational den = lower[i] + kq;
        if (num <= 0 || den <= 0) return Rational(2);  // not yet in the monotone regime
        if (num > den) env *= num / den;
    }
    return env;
}

}  // namespace

BallReal pfq(const HypergeometricSpec& spec, Prec prec, long min_terms) {
    if (spec.upper.size() != spec.lower.size() + 1)
        throw std::invalid_argument("pfq: expected p = q + 1 parameters");
    for (const auto& b : spec.lower)
        if (b <= 0 && is_integer(b))
            throw DomainError("pfq: nonpositive integer lower parameter");
    Rational abs_arg = abs(spec.argument);
    if (spec.argument == 0) return BallReal::of(1, prec);
    if (abs_arg >= 1) throw NoConvergence("pfq: |argument| must be < 1 for the series route");

    // Stop once the envelope certifies geometric decay at ratio <= r_target
    // and the current term is below the discard threshold.
    Rational r_target = (1 + abs_arg) / 2;
    const long guard = 30 + static_cast<long>(std::ceil(std::log2(5.0 + spec.upper.size())));
    Rational term(1), sum(0);
    long k = 0;
    bool exact = false;
    Rational envelope(2);
    while (true) {
        sum += term;
        if (term == 0) {  // a negative-integer upper parameter truncated the series
            exact = true;
            break;
        }
        envelope = ratio_envelope(spec.upper, spec.lower, abs_arg, k);
        if (k >= min_terms && envelope <= r_target) {
            // |term| < 2^-(prec+guard) * max(|sum|, 1) ?
            Rational thresh = abs(sum) < 1 ? Rational(1) : abs(sum);
            mpq_div_2exp(thresh.get_mpq_t(), thresh.get_mpq_t(),
                         static_cast<unsigned long>(prec + guard));
            if (abs(term) < thresh) break;
        }
        Rational factor = spec.argument;
        Rational kq(k);
        for (const auto& a : spec.upper) factor *= a + kq;
        for (const auto& b : spec.lower) factor /= b + kq;
        factor /= k + 1;
        term *= factor;
        ++k;
        if (k > 4'000'000) throw NoConvergence("pfq: series did not reach the tail regime");
    }
    // Tail after the last added term t_k: |t_{k+1}| + ... <= |t_k| r/(1-r).
    BallReal out = BallReal::of(sum, prec + 8);
    if (exact) return out;
    Rational tail = abs(term) * envelope / (1 - envelope);
    return out + BallReal::plus_minus(Real::of(tail, 64), prec + 8);
}

namespace {

Rational half() { return make_rational(1, 2); }

void require_unit_interval(const Rational& z, bool allow_negative) {
    Rational a = abs(z);
    if (z == 0 || a >= 1 || (!allow_negative && z < 0))
        throw DomainError("argument must satisfy 0 < |z| < 1");
}

}  // namespace

BallReal lambda_val(const Rational& z, Prec prec) {
    require_unit_interval(z, true);
    HypergeometricSpec spec{{half(), half(), half()}, {Rational(1), make_rational(3, 2)}, z};
    return BallReal::pi(prec + 8) * 2 * pfq(spec, prec + 8);
}

BallReal rho1(const Rational& z, Prec prec) {
    require_unit_interval(z, true);
    HypergeometricSpec spec{{half(), half()}, {Rational(1)}, z};
    return BallReal::pi(prec + 8) * pfq(spec, prec + 8);
}

BallReal rho2(const Rational& z, Prec prec) {
    require_unit_interval(z, true);
    HypergeometricSpec spec{{-half(), half()}, {Rational(1)}, z};
    return BallReal::pi(prec + 8) * pfq(spec, prec + 8);
}

BallReal f_val(const Rational& z, Prec prec) {
    require_unit_interval(z, false);
    Rational th = make_rational(3, 2);
    HypergeometricSpec spec{{th, th, Rational(1), Rational(1)},
                            {Rational(2), Rational(2), Rational(2)},
                            z};
    Prec wp = prec + 16;
    BallReal series = pfq(spec, wp);
    BallReal logpart = log(BallReal::of(z / 16, wp));
    BallReal inner = logpart + series * (z / 4);
    return -(BallReal::pi(wp) * inner);
}

std::vector<Rational> bernoulli_numbers(int m) {
    // B_j = -1/(j+1) sum_{i<j} C(j+1, i) B_i, exact over Q.
    std::vector<Rational> b(static_cast<size_t>(m) + 1, Rational(0));
    b[0] = 1;
    for (int j = 1; j <= m; ++j) {
        Rational acc(0);
        for (int i = 0; i < j; ++i) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(j) + 1,
                         static_cast<unsigned long>(i));
            acc += Rational(binom) * b[static_cast<size_t>(i)];
        }
        b[static_cast<size_t>(j)] = -acc / (j + 1);
    }
    return b;
}

BallReal zeta3(Prec prec) {
    // zeta(3) = sum_{n<N} n^-3 + 1/(2N^2) + 1/(2N^3)
    //           + sum_{k=1..K} B_2k (2k+1) N^(-2k-2) / 2 + R_K,
    // |R_K| <= |B_{2K+2}| (2K+3) N^(-2K-4) / 2 (completely monotone integrand).
    long K = prec / 6 + 6;
    long N = K + 8;
    auto remainder_bound = [](const std::vector<Rational>& bern, long Kv, long Nv) -> Rational {
        return abs(bern[static_cast<size_t>(2 * Kv + 2)]) * (2 * Kv + 3) /
               (2 * rational_pow(Rational(Nv), 2 * Kv + 4));
    };
    std::vector<Rational> bern = bernoulli_numbers(static_cast<int>(2 * K + 2));
    Rational target(1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<unsigned long>(prec + 8));
    while (remainder_bound(bern, K, N) > target) N *= 2;

    Rational sum(0);
    for (long n = 1; n < N; ++n) sum += make_rational(1, Int(n) * n * n);
    Rational Nq(N);
    sum += 1 / (2 * Nq * Nq) + 1 / (2 * Nq * Nq * Nq);
    for (long k = 1; k <= K; ++k)
        sum += bern[static_cast<size_t>(2 * k)] * (2 * k + 1) /
               (2 * rational_pow(Nq, 2 * k + 2));

    BallReal out = BallReal::of(sum, prec + 8);
    return out + BallReal::plus_minus(Real::of(remainder_bound(bern, K, N), 64), prec + 8);
}

BallReal pi_val(Prec prec) { return BallReal::pi(prec); }
BallReal sqrt_val(const BallReal& x) { return sqrt(x); }
BallReal log_val(const BallReal& x) { return log(x); }
BallReal exp_val(const BallReal& x) { return exp(x); }

}  // namespace aplim
