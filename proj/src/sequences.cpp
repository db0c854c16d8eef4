#include "aplim/sequences.hpp"

#include <cmath>

#include "aplim/data.hpp"
#include "aplim/lcm_table.hpp"

namespace aplim {

AperyPair apery_zeta3(long N) {
    if (N < 1) throw std::invalid_argument("apery_zeta3: N must be >= 1");
    const Recurrence& rec = data::apery_recurrence();
    Rational z(0);
    AperyPair out;
    out.u = run(rec, z, {Rational(0), Rational(6)}, N).values;
    out.v = run(rec, z, {Rational(1), Rational(5)}, N).values;
    return out;
}

std::array<Rational, 3> j1_coordinates(const Rational& z) {
    if (z == 0) throw std::invalid_argument("j1_coordinates: z must be nonzero");
    Rational z2 = z * z;
    return {-(3 + 4 * z) / (4 * z2), -5 * (1 - z) / z2, Rational(13) / (2 * z2)};
}

std::array<Rational, 3> j2_coordinates(const Rational& z) {
    if (z == 0) throw std::invalid_argument("j2_coordinates: z must be nonzero");
    Rational z4 = rational_pow(z, 4);
    return {(105 + 480 * z + 64 * z * z) / (64 * z4),
            (3151 - 2167 * z - 984 * z * z) / (144 * z4),
            -(7247 + 3452 * z) / (288 * z4)};
}

CoordinateTriple coordinate_triple(const Rational& z, long N) {
    const Recurrence& rec = data::j_family_recurrence();
    auto j1 = j1_coordinates(z);
    auto j2 = j2_coordinates(z);
    CoordinateTriple out;
    out.z = z;
    out.a = run(rec, z, {Rational(1), j1[0], j2[0]}, N).values;
    out.b = run(rec, z, {Rational(0), j1[1], j2[1]}, N).values;
    out.c = run(rec, z, {Rational(0), j1[2], j2[2]}, N).values;
    return out;
}

Rational wedge_A_closed(int n, const Rational& z) {
    switch (n) {
        case 0:
            return Rational(13) / (2 * z * z);
        case 1:
            return (395 * z * z - 1051 * z + 591) / (72 * rational_pow(z, 6));
        case 2:
            return (15196 * rational_pow(z, 4) - 201551 * rational_pow(z, 3) +
                    548091 * z * z - 543600 * z + 183120) /
                   (3600 * rational_pow(z, 10));
        default:
            throw std::invalid_argument("wedge_A_closed: n must be 0, 1 or 2");
    }
}

Rational wedge_B_closed(int n, const Rational& z) {
    switch (n) {
        case 0:
            return Rational(0);
        case 1:
            return (1117 * z * z - 2299 * z + 1182) / (72 * rational_pow(z, 6));
        case 2:
            return (6867 * rational_pow(z, 4) - 65547 * rational_pow(z, 3) +
                    156430 * z * z - 143530 * z + 45780) /
                   (450 * rational_pow(z, 10));
        default:
            throw std::invalid_argument("wedge_B_closed: n must be 0, 1 or 2");
    }
}

WedgePair wedge_pair(const Rational& z, long N) {
    if (N < 2) throw std::invalid_argument("wedge_pair: N must be >= 2");
    CoordinateTriple t = coordinate_triple(z, N + 1);
    WedgePair out;
    out.z = z;
    out.A.reserve(static_cast<size_t>(N) + 1);
    out.B.reserve(static_cast<size_t>(N) + 1);
    for (long n = 0; n <= N; ++n) {
        size_t i = static_cast<size_t>(n);
        out.A.push_back(t.a[i] * t.c[i + 1] - t.a[i + 1] * t.c[i]);
        out.B.push_back(-(t.b[i] * t.c[i + 1] - t.b[i + 1] * t.c[i]));
    }
    for (int n = 0; n <= 2; ++n) {
        if (out.A[static_cast<size_t>(n)] != wedge_A_closed(n, z))
            throw InitialValueMismatch("wedge_pair: A_" + std::to_string(n) +
                                       " disagrees with its closed form at z = " + to_string(z));
        if (out.B[static_cast<size_t>(n)] != wedge_B_closed(n, z))
            throw InitialValueMismatch("wedge_pair: B_" + std::to_string(n) +
                                       " disagrees with its closed form at z = " + to_string(z));
    }
    return out;
}

bool IntegralityReport::all_pass() const {
    for (const auto& c : claims)
        if (!c.pass) return false;
    return true;
}

IntegralityReport integrality_report(const Rational& z, long N) {
    if (z == 0 || !is_integer(1 / Rational(z)) || abs(z.get_den()) < 2)
        throw std::invalid_argument("integrality_report: needs 1/z integer with |1/z| >= 2");
    if (N < 0) throw std::invalid_argument("integrality_report: N must be >= 0");

    CoordinateTriple t = coordinate_triple(z, std::max<long>(N + 1, 2));
    WedgePair w = wedge_pair(z, std::max<long>(N, 2));
    LcmTable lcm(2 * N);

    IntegralityReport report;
    report.z = z;
    report.N = N;
    report.claims = {
        {"z^n 2^4n a_n", 0, true, -1, ""},
        {"z^n 2^4n D_2n^2 b_n", 0, true, -1, ""},
        {"z^n 2^4n D_2n^2 c_n", 0, true, -1, ""},
        {"z^2n+2 2^2n D_2n (n+1)(2n+1)^2 A_n", 1, true, -1, ""},
        {"z^2n+2 2^2n D_2n^2 (n+1)(2n+1)^2 B_n", 0, true, -1, ""},
    };

    auto record = [&](IntegralityClaim& claim, long n, const Rational& value) {
        if (claim.pass && !is_integer(value)) {
            claim.pass = false;
            claim.first_fail = n;
            claim.fail_value = to_string(value);
        }
    };

    Rational zn(1);         // z^n
    Rational two4n(1);      // 2^4n
    Rational z2n2 = z * z;  // z^{2n+2}
    Rational two2n(1);      // 2^2n
    for (long n = 0; n <= N; ++n) {
        size_t i = static_cast<size_t>(n);
        const Int& d2n = lcm.at(2 * n);
        Rational d(d2n), d_sq(d2n * d2n);
        Rational front = zn * two4n;
        record(report.claims[0], n, front * t.a[i]);
        record(report.claims[1], n, front * d_sq * t.b[i]);
        record(report.claims[2], n, front * d_sq * t.c[i]);
        Rational weight = Rational((n + 1) * (2 * n + 1) * (2 * n + 1));
        if (n >= report.claims[3].start_n)
            record(report.claims[3], n, z2n2 * two2n * d * weight * w.A[i]);
        record(report.claims[4], n, z2n2 * two2n * d_sq * weight * w.B[i]);
        zn *= z;
        two4n *= 16;
        z2n2 *= z * z;
        two2n *= 4;
    }
    return report;
}

LimitEstimate apery_limit(const std::vector<Rational>& numerators,
                          const std::vector<Rational>& denominators, Prec prec) {
    if (numerators.size() != denominators.size() || numerators.size() < 2)
        throw std::invalid_argument("apery_limit: need two aligned sequences, length >= 2");
    size_t N = numerators.size() - 1;
    for (size_t i : {N, N - 1})
        if (denominators[i] == 0)
            throw std::invalid_argument("apery_limit: zero denominator near the end");

    Rational qN = numerators[N] / denominators[N];
    Rational qN1 = numerators[N - 1] / denominators[N - 1];
    Real mid = Real::of(qN, prec);
    // Heuristic radius: the last step, kept in mpfr range before narrowing so
    // a 1e-400-sized step does not underflow to an "exact" zero.
    double err = 0.0;
    if (qN != qN1) {
        err = abs(Real::of(qN - qN1, 64)).to_double();
        if (err == 0.0) err = 5e-324;
        err = std::nextafter(err, 1e308);
    }
    LimitEstimate out{BallReal(std::move(mid), err), 0.0};

    // Fit the geometric rate of |q_{n+1} - q_n| over the tail (log via mpfr;
    // the steps shrink far below double range).
    std::vector<double> logs;
    size_t window = std::min<size_t>(N, 20);
    for (size_t n = N - window; n + 1 <= N; ++n) {
        if (denominators[n] == 0 || denominators[n + 1] == 0) continue;
        Rational step = numerators[n + 1] / denominators[n + 1] - numerators[n] / denominators[n];
        if (step == 0) continue;
        logs.push_back(log(abs(Real::of(step, 64))).to_double());
    }
    if (logs.size() >= 2) {
        double acc = 0;
        for (size_t i = 0; i + 1 < logs.size(); ++i) acc += logs[i + 1] - logs[i];
        out.rate = std::exp(acc / static_cast<double>(logs.size() - 1));
    }
    return out;
}

}  // namespace aplim
