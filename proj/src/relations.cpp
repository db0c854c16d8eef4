#include "aplim/relations.hpp"

#include <algorithm>
#include <cmath>

#include "aplim/errors.hpp"

namespace aplim {

namespace {

Int round_to_int(const Real& x) {
    Int out;
    mpfr_get_z(out.get_mpz_t(), x.raw(), MPFR_RNDN);
    return out;
}

std::vector<Int> normalize_relation(std::vector<Int> c) {
    Int g(0);
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : c) x /= g;
    for (const auto& x : c) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : c) y = -y;
        break;
    }
    return c;
}

}  // namespace

RelationResult find_relation(const std::vector<Real>& values, const Int& max_norm, Prec prec) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw std::invalid_argument("find_relation: need at least two values");
    if (max_norm < 1) throw std::invalid_argument("find_relation: max_norm must be >= 1");
    const Prec wp = prec;
    auto R = [&](long v) { return Real::of(v, wp); };

    // Normalized input vector y and the partial norms s_k.
    std::vector<Real> y;
    y.reserve(static_cast<size_t>(n));
    for (const auto& v : values) {
        Real w(wp);
        mpfr_set(w.raw(), v.raw(), MPFR_RNDN);
        if (w.is_zero()) throw std::invalid_argument("find_relation: zero input value");
        y.push_back(std::move(w));
    }
    std::vector<Real> s(static_cast<size_t>(n), Real(wp));
    {
        Real acc(wp);
        for (int k = n - 1; k >= 0; --k) {
            acc += y[static_cast<size_t>(k)] * y[static_cast<size_t>(k)];
            s[static_cast<size_t>(k)] = sqrt(acc);
        }
    }
    for (auto& v : y) v /= s[0];
    for (int k = n - 1; k >= 0; --k) s[static_cast<size_t>(k)] /= s[0];

    // Lower-trapezoidal H (n x n-1).
    std::vector<std::vector<Real>> H(static_cast<size_t>(n),
                                     std::vector<Real>(static_cast<size_t>(n - 1), Real(wp)));
    for (int j = 0; j < n - 1; ++j) {
        H[static_cast<size_t>(j)][static_cast<size_t>(j)] =
            s[static_cast<size_t>(j + 1)] / s[static_cast<size_t>(j)];
        for (int i = j + 1; i < n; ++i)
            H[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                -(y[static_cast<size_t>(i)] * y[static_cast<size_t>(j)]) /
                (s[static_cast<size_t>(j)] * s[static_cast<size_t>(j + 1)]);
    }

    // B tracks the column operations; when y_k ~ 0, column k of B annihilates
    // the input.
    std::vector<std::vector<Int>> B(static_cast<size_t>(n),
                                    std::vector<Int>(static_cast<size_t>(n), Int(0)));
    for (int i = 0; i < n; ++i) B[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;

    auto reduce_row = [&](int i, int jmax) {
        for (int j = std::min(jmax, i - 1); j >= 0; --j) {
            const Real& hjj = H[static_cast<size_t>(j)][static_cast<size_t>(j)];
            if (hjj.is_zero()) continue;
            Int t = round_to_int(H[static_cast<size_t>(i)][static_cast<size_t>(j)] / hjj);
            if (t == 0) continue;
            Real tr = Real::of(t, wp);
            y[static_cast<size_t>(j)] += tr * y[static_cast<size_t>(i)];
            for (int k = 0; k <= j; ++k)
                H[static_cast<size_t>(i)][static_cast<size_t>(k)] -=
                    tr * H[static_cast<size_t>(j)][static_cast<size_t>(k)];
            for (int k = 0; k < n; ++k)
                B[static_cast<size_t>(k)][static_cast<size_t>(j)] +=
                    t * B[static_cast<size_t>(k)][static_cast<size_t>(i)];
        }
    };
    for (int i = 1; i < n; ++i) reduce_row(i, n - 2);

    const double detect_eps = std::ldexp(1.0, -static_cast<int>(prec) / 2);
    const Real gamma = sqrt(R(4) / R(3)) * Real::of(1.0000001, wp);
    const double max_norm_d = mpz_get_d(max_norm.get_mpz_t());
    const long max_iter = 4000L * n * n * (static_cast<long>(prec) / 64 + 1);

    auto detected = [&]() -> RelationResult {
        // Smallest |y_k| wins.
        int best = 0;
        for (int k = 1; k < n; ++k)
            if (abs(y[static_cast<size_t>(k)]) < abs(y[static_cast<size_t>(best)])) best = k;
        std::vector<Int> rel;
        rel.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) rel.push_back(B[static_cast<size_t>(i)][static_cast<size_t>(best)]);
        // Residual straight from the inputs.
        Real acc(wp);
        for (int i = 0; i < n; ++i) acc += values[static_cast<size_t>(i)] * Real::of(rel[static_cast<size_t>(i)], wp);
        RelationResult out;
        out.coefficients = normalize_relation(std::move(rel));
        out.residual = std::fabs(acc.to_double());
        out.norm_bound = 0.0;
        return out;
    };

    for (long iter = 0; iter < max_iter; ++iter) {
        // Norm bound 1 / max_j |H_jj|; stop once it clears max_norm.
        double hmax = 0.0;
        for (int j = 0; j < n - 1; ++j)
            hmax = std::max(hmax,
                            std::fabs(H[static_cast<size_t>(j)][static_cast<size_t>(j)].to_double()));
        if (hmax > 0 && 1.0 / hmax > max_norm_d * std::sqrt(static_cast<double>(n))) {
            RelationResult out;
            out.norm_bound = 1.0 / hmax;
            return out;
        }

        for (int k = 0; k < n; ++k)
            if (std::fabs(y[static_cast<size_t>(k)].to_double()) < detect_eps) return detected();

        // Pivot: maximize gamma^i |H_ii|.
        int m = 0;
        {
            Real best(wp), g(Real::of(1, wp));
            for (int i = 0; i < n - 1; ++i) {
                g *= gamma;
                Real v = g * abs(H[static_cast<size_t>(i)][static_cast<size_t>(i)]);
                if (i == 0 || best < v) {
                    best = v;
                    m = i;
                }
            }
        }

        std::swap(y[static_cast<size_t>(m)], y[static_cast<size_t>(m + 1)]);
        std::swap(H[static_cast<size_t>(m)], H[static_cast<size_t>(m + 1)]);
        for (int i = 0; i < n; ++i)
            std::swap(B[static_cast<size_t>(i)][static_cast<size_t>(m)],
                      B[static_cast<size_t>(i)][static_cast<size_t>(m + 1)]);

        if (m < n - 2) {
            Real t0 = sqrt(H[static_cast<size_t>(m)][static_cast<size_t>(m)] *
                               H[static_cast<size_t>(m)][static_cast<size_t>(m)] +
                           H[static_cast<size_t>(m)][static_cast<size_t>(m + 1)] *
                               H[static_cast<size_t>(m)][static_cast<size_t>(m + 1)]);
            if (!t0.is_zero()) {
                Real c = H[static_cast<size_t>(m)][static_cast<size_t>(m)] / t0;
                Real st = H[static_cast<size_t>(m)][static_cast<size_t>(m + 1)] / t0;
                for (int i = m; i < n; ++i) {
                    Real a = H[static_cast<size_t>(i)][static_cast<size_t>(m)];
                    Real bb = H[static_cast<size_t>(i)][static_cast<size_t>(m + 1)];
                    H[static_cast<size_t>(i)][static_cast<size_t>(m)] = c * a + st * bb;
                    H[static_cast<size_t>(i)][static_cast<size_t>(m + 1)] = c * bb - st * a;
                }
            }
        }
        for (int i = m + 1; i < n; ++i) reduce_row(i, std::min(i - 1, m + 1));
    }
    throw InsufficientPrecision("find_relation: iteration budget exhausted at this precision");
}

}  // namespace aplim
