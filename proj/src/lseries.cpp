#include "aplim/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "aplim/ball.hpp"
#include "aplim/data.hpp"
#include "aplim/errors.hpp"
#include "aplim/hypergeom.hpp"
#include "aplim/reconstruct.hpp"

namespace aplim {

std::vector<CurveModel> curve_models() {
    static std::mutex mu;
    static std::vector<CurveModel> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache.empty()) return cache;
    std::istringstream in{std::string(data::embedded_text("curves.txt"))};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        CurveModel c;
        if (ls >> c.label >> c.k_squared >> c.a1 >> c.a2 >> c.a3 >> c.a4 >> c.a6 >> c.conductor)
            cache.push_back(std::move(c));
    }
    if (cache.empty()) throw Error("curves.txt: no curve records");
    return cache;
}

const CurveModel& curve_by_label(const std::string& label) {
    static std::vector<CurveModel> models = curve_models();
    for (const auto& c : models)
        if (c.label == label) return c;
    throw Error("no curve with label '" + label + "'");
}

const CurveModel& curve_by_k2(long k2) {
    static std::vector<CurveModel> models = curve_models();
    for (const auto& c : models)
        if (c.k_squared == k2) return c;
    throw Error("no curve for k^2 = " + std::to_string(k2));
}

namespace {

long mod(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

}  // namespace

long ap_xy_loop(const CurveModel& c, long p) {
    long count = 0;
    for (long x = 0; x < p; ++x) {
        long rhs = mod(((x + c.a2) * x + c.a4) * x + c.a6, p);
        long bx = mod(c.a1 * x + c.a3, p);
        for (long y = 0; y < p; ++y)
            if (mod(y * y + bx * y - rhs, p) == 0) ++count;
    }
    return p - count;
}

long ap(const CurveModel& c, long p) {
    if (p < 2) throw std::invalid_argument("ap: p must be prime");
    if (p < 16) return ap_xy_loop(c, p);
    // Odd p: complete the square; #solutions in y is 1 + chi(D(x)) with
    // D(x) = (a1 x + a3)^2 + 4 f(x), so a_p = -sum_x chi(D(x)).
    std::vector<signed char> chi(static_cast<size_t>(p), -1);
    for (long x = 1; x < p; ++x) {
        unsigned long long sq = static_cast<unsigned long long>(x) * x % p;
        chi[static_cast<size_t>(sq)] = 1;
    }
    chi[0] = 0;
    long acc = 0;
    for (long x = 0; x < p; ++x) {
        unsigned long long f =
            ((((x + mod(c.a2, p)) % p * x + mod(c.a4, p)) % p * x) + mod(c.a6, p)) % p;
        unsigned long long b = static_cast<unsigned long long>(mod(c.a1 * x + c.a3, p));
        unsigned long long d = (b * b % p + 4 * f) % p;
        acc += chi[static_cast<size_t>(d)];
    }
    return -acc;
}

std::vector<long> hecke_coeffs(const CurveModel& c, long M) {
    if (M < 1) throw std::invalid_argument("hecke_coeffs: M must be >= 1");
    std::vector<long> spf(static_cast<size_t>(M) + 1, 0);
    for (long i = 2; i <= M; ++i)
        if (spf[static_cast<size_t>(i)] == 0)
            for (long j = i; j <= M; j += i)
                if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = i;

    std::vector<long> a(static_cast<size_t>(M) + 1, 0);
    a[1] = 1;
    for (long n = 2; n <= M; ++n) {
        long p = spf[static_cast<size_t>(n)];
        if (n == p) {
            a[static_cast<size_t>(n)] = ap(c, p);
            continue;
        }
        long m = n;
        long pe = 1;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        if (m > 1) {
            a[static_cast<size_t>(n)] = a[static_cast<size_t>(pe)] * a[static_cast<size_t>(m)];
        } else if (c.conductor % p == 0) {
            a[static_cast<size_t>(n)] = a[static_cast<size_t>(p)] * a[static_cast<size_t>(n / p)];
        } else {
            a[static_cast<size_t>(n)] =
                a[static_cast<size_t>(p)] * a[static_cast<size_t>(n / p)] -
                p * a[static_cast<size_t>(n / (p * p))];
        }
    }
    return a;
}

Real exp_integral_e1(const Real& x, Prec prec) {
    if (!(x > 0L)) throw DomainError("exp_integral_e1: x must be positive");
    double xd = x.to_double();
    if (xd * 1.4427 > static_cast<double>(prec) + 16) {
        // E1(x) <= e^-x: already below the target scale; e^-x/x keeps the
        // leading asymptotics without the series.
        return exp(-x) / x;
    }
    // Alternating series E1 = -gamma - log x + sum (-1)^(k+1) x^k / (k k!),
    // summed with enough guard bits to absorb the e^x-sized cancellation.
    Prec wp = prec + static_cast<Prec>(xd * 1.4427) + 32;
    Real xb(wp);
    mpfr_set(xb.raw(), x.raw(), MPFR_RNDN);
    Real sum = -Real::euler_gamma(wp) - log(xb);
    Real p = Real::of(1, wp);  // x^k / k!
    for (long k = 1;; ++k) {
        p = p * xb / k;
        Real term = p / k;
        if (k % 2 == 1)
            sum += term;
        else
            sum -= term;
        if (static_cast<double>(k) > xd &&
            (term.is_zero() || term.exponent() < -static_cast<long>(wp - 8)))
            break;
        if (k > 4 * static_cast<long>(wp) + 10000)
            throw NoConvergence("exp_integral_e1: series stalled");
    }
    Real out(prec);
    mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
    return out;
}

namespace {

// Truncation horizon: |a_n| <= d(n) sqrt(n) <= n^{3/2}, so the tail of any of
// the smoothed sums is below sum_{n>M} n^{3/2} e^{-c n}.
long horizon(double c, Prec prec) {
    double target = -(static_cast<double>(prec) + 10) * std::log(2.0);
    long M = 16;
    while (true) {
        double lt = 1.5 * std::log(static_cast<double>(M + 1)) - c * (M + 1);
        double r = std::exp(-c) * std::pow(1.0 + 1.0 / M, 1.5);
        if (r < 1.0 && lt + std::log(1.0 / (1.0 - r)) < target) return M;
        M += M / 2 + 16;
        if (M > 2'000'000) throw NoConvergence("lseries: horizon too large at this conductor");
    }
}

struct SmoothedSeries {
    std::vector<long> a;  // twisted or plain coefficients, index 0 unused
    long conductor;
    Prec wp;

    // sum a_n / n e^{-c n t}
    Real s1(const Real& c, const Real& t) const {
        Real acc(wp);
        Real ct = c * t;
        for (size_t n = a.size() - 1; n >= 1; --n) {
            if (a[n] == 0) continue;
            acc += exp(-(ct * static_cast<long>(n))) * a[n] / static_cast<long>(n);
        }
        return acc;
    }

    // sum a_n (1 + x_n) e^{-x_n} / (2 pi n)^2 with x_n = c n t
    Real s2_gamma(const Real& c, const Real& t, const Real& pi) const {
        Real acc(wp);
        Real ct = c * t;
        for (size_t n = a.size() - 1; n >= 1; --n) {
            if (a[n] == 0) continue;
            Real x = ct * static_cast<long>(n);
            Real w = (1 + x) * exp(-x) / pow_si(pi * 2 * static_cast<long>(n), 2);
            acc += w * a[n];
        }
        return acc;
    }

    // sum a_n E1(c n / t)
    Real s2_e1(const Real& c, const Real& t) const {
        Real acc(wp);
        Real cd = c / t;
        for (size_t n = a.size() - 1; n >= 1; --n) {
            if (a[n] == 0) continue;
            acc += exp_integral_e1(cd * static_cast<long>(n), wp) * a[n];
        }
        return acc;
    }

    // L(E,2) from the approximate functional equation split at t.
    Real l2(const Real& t, int eps, const Real& pi) const {
        Real c = pi * 2 / sqrt(Real::of(conductor, wp));
        Real main = s2_gamma(c, t, pi);
        Real dual = s2_e1(c, t) / conductor;
        Real combined = eps > 0 ? main + dual : main - dual;
        return combined * pow_si(pi, 2) * 4;
    }

    Real l1_center(const Real& pi, int eps) const {
        if (eps < 0) return Real(wp);
        Real c = pi * 2 / sqrt(Real::of(conductor, wp));
        return s1(c, Real::of(1, wp)) * 2;
    }
};

SmoothedSeries series_for(const CurveModel& curve, Prec wp, Prec prec, bool twist) {
    long N = twist ? 16 * curve.conductor : curve.conductor;
    // Horizon budget covers the slowest kernel over every split point in use.
    double c_min = 2 * 3.14159 / (std::sqrt(static_cast<double>(N)) * 1.6);
    long M = horizon(c_min, prec);
    std::vector<long> a = hecke_coeffs(curve, M);
    if (twist) {
        if (curve.conductor % 2 == 0)
            throw DomainError("l_twist_chi4: conductor must be odd");
        for (size_t n = 0; n < a.size(); ++n) {
            long r = static_cast<long>(n % 4);
            if (r == 0 || r == 2)
                a[n] = 0;
            else if (r == 3)
                a[n] = -a[n];
        }
    }
    return SmoothedSeries{std::move(a), N, wp};
}

int sign_from_split(const SmoothedSeries& ser, Prec prec, double split_t = 1.2) {
    Prec wp = ser.wp;
    Real pi = Real::pi(wp);
    Real t = Real::of(split_t, wp);
    Real tinv = 1 / t;
    double scale = 1.0;
    double delta[2];
    for (int i = 0; i < 2; ++i) {
        int eps = i == 0 ? 1 : -1;
        Real at = ser.l2(t, eps, pi);
        Real bt = ser.l2(tinv, eps, pi);
        delta[i] = std::fabs((at - bt).to_double());
        scale = std::max({scale, std::fabs(at.to_double()), std::fabs(bt.to_double())});
    }
    double tol = scale * std::ldexp(1.0, -static_cast<int>(prec) / 2);
    bool plus_ok = delta[0] < tol, minus_ok = delta[1] < tol;
    if (plus_ok && !minus_ok) return 1;
    if (minus_ok && !plus_ok) return -1;
    if (plus_ok && minus_ok)
        throw AmbiguousSign("epsilon_sign: both signs consistent; raise the horizon");
    throw Error("epsilon_sign: functional equation fails for both signs (conductor " +
                std::to_string(ser.conductor) + "): wrong model or conductor");
}

}  // namespace

int epsilon_sign(const CurveModel& curve, Prec prec, double split_t) {
    if (!(split_t > 1.0 && split_t < 2.0))
        throw std::invalid_argument("epsilon_sign: split point must be in (1, 2)");
    return sign_from_split(series_for(curve, prec + 32, prec, false), prec, split_t);
}

Real l_value(const CurveModel& curve, int s, Prec prec) {
    if (s != 1 && s != 2) throw std::invalid_argument("l_value: s must be 1 or 2");
    Prec wp = prec + 32;
    SmoothedSeries ser = series_for(curve, wp, prec, false);
    int eps = sign_from_split(ser, prec);
    Real pi = Real::pi(wp);
    Real out(prec);
    if (s == 1) {
        mpfr_set(out.raw(), ser.l1_center(pi, eps).raw(), MPFR_RNDN);
    } else {
        mpfr_set(out.raw(), ser.l2(Real::of(1, wp), eps, pi).raw(), MPFR_RNDN);
    }
    return out;
}

Real l_twist_chi4(const CurveModel& curve, Prec prec) {
    Prec wp = prec + 32;
    SmoothedSeries ser = series_for(curve, wp, prec, true);
    int eps = sign_from_split(ser, prec);
    Real pi = Real::pi(wp);
    Real out(prec);
    mpfr_set(out.raw(), ser.l1_center(pi, eps).raw(), MPFR_RNDN);
    return out;
}

double LValueReport::max_relative_diff() const {
    double worst = 0;
    for (const auto& c : identity_checks)
        if (!c.informational) worst = std::max(worst, c.relative_diff);
    return worst;
}

namespace {

double rel_diff(const Real& a, const Real& b) {
    double x = a.to_double(), y = b.to_double();
    double scale = std::max(std::fabs(x), std::fabs(y));
    if (scale == 0) return 0;
    return std::fabs((a - b).to_double()) / scale;
}

}  // namespace

LValueReport verify_identities(const std::string& k_key, Prec prec) {
    long k2;
    if (k_key == "1")
        k2 = 1;
    else if (k_key == "sqrt2")
        k2 = 2;
    else if (k_key == "2")
        k2 = 4;
    else if (k_key == "2sqrt2")
        k2 = 8;
    else if (k_key == "3")
        k2 = 9;
    else
        throw std::invalid_argument("verify_identities: k must be one of 1, sqrt2, 2, 2sqrt2, 3");

    const CurveModel& curve = curve_by_k2(k2);
    Prec wp = prec + 32;
    LValueReport rep{curve, 0, Real(prec), Real(prec), Real(prec), std::nullopt,
                     Real(prec), std::nullopt, {}};

    SmoothedSeries ser = series_for(curve, wp, prec, false);
    rep.epsilon = sign_from_split(ser, prec);
    Real pi = Real::pi(wp);
    rep.L1 = ser.l1_center(pi, rep.epsilon);
    rep.L2 = ser.l2(Real::of(1, wp), rep.epsilon, pi);
    // Lambda(2) = eps Lambda(0) gives L'(E,0) = eps N L(E,2) / (2 pi)^2.
    rep.lprime0 = rep.L2 * curve.conductor / pow_si(pi * 2, 2) * rep.epsilon;

    // mu(k) over the hypergeometric route: (k/4) 3F2(...; k^2/16), 0 < k < 4.
    Rational z = make_rational(k2, 16);
    HypergeometricSpec spec{{make_rational(1, 2), make_rational(1, 2), make_rational(1, 2)},
                            {Rational(1), make_rational(3, 2)},
                            z};
    BallReal mu_ball = sqrt(BallReal::of(Rational(k2), wp)) * pfq(spec, wp);
    rep.mu = mu_ball.mid() / 4;

    Real ratio = rep.mu / rep.lprime0;
    double ratio_rad = (std::fabs(ratio.to_double()) + 1) * 1e-15;
    rep.mu_over_lprime = rational_reconstruct(BallReal(ratio, ratio_rad), Int(64));

    auto check = [&](const std::string& name, const Real& lhs, const Real& rhs,
                     bool informational = false) {
        rep.identity_checks.push_back({name, lhs, rhs, rel_diff(lhs, rhs), informational});
    };

    if (rep.mu_over_lprime)
        check("mu(k) = (" + to_string(*rep.mu_over_lprime) + ") L'(E,0)", rep.mu,
              rep.lprime0 * Real::of(*rep.mu_over_lprime, wp));

    if (k_key == "2sqrt2") {
        Real lam = lambda_val(make_rational(1, 2), wp).mid();
        Real r1 = rho1(make_rational(1, 2), wp).mid();
        Real sqrt2 = sqrt(Real::of(2, wp));
        check("lambda(1/2) = 2 sqrt2 pi L'(E,0)", lam, sqrt2 * 2 * pi * rep.lprime0);
        check("lambda(1/2) = 16 sqrt2 L(E,2)/pi", lam, sqrt2 * 16 * rep.L2 / pi);
        check("rho1(1/2) = 4 sqrt2 L(E,1)", r1, sqrt2 * 4 * rep.L1);
    } else if (k_key == "1") {
        Real lam = lambda_val(make_rational(1, 16), wp).mid();
        Real r1 = rho1(make_rational(1, 16), wp).mid();
        rep.L1_twist = l_twist_chi4(curve, prec);
        check("lambda(1/16) = 8 pi L'(E,0)", lam, pi * 8 * rep.lprime0);
        check("lambda(1/16) = 30 L(E,2)/pi", lam, rep.L2 * 30 / pi);
        // The claimed constant 1/2 is falsified numerically: the twisted
        // central value satisfies rho1(1/16) = 2 L(E,chi-4,1), confirmed both
        // through the twisted coefficient series and through point counts on
        // the twisted curve y^2 = x^3 - 5x^2 + 8x - 16 of conductor 240. The
        // claim stays here, honestly red; the measured row documents it.
        check("rho1(1/16) = (1/2) L(E,chi-4,1)", r1, *rep.L1_twist / 2);
        check("rho1(1/16) = 2 L(E,chi-4,1) (measured constant)", r1, *rep.L1_twist * 2,
              true);
    }
    return rep;
}

}  // namespace aplim
