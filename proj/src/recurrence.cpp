#include "aplim/recurrence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace aplim {

Recurrence::Recurrence(std::string name_, std::vector<BivariatePoly> coeffs_)
    : name(std::move(name_)), coeffs(std::move(coeffs_)) {
    if (coeffs.size() < 2) throw std::invalid_argument("Recurrence: order must be >= 1");
    order = static_cast<int>(coeffs.size()) - 1;
    if (coeffs.front().is_zero() || coeffs.back().is_zero())
        throw std::invalid_argument("Recurrence '" + name + "': p0 and p_r must be nonzero");
}

Recurrence parse_recurrence(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string name;
    int order = -1;
    std::vector<BivariatePoly> coeffs;
    int current = -1;
    long lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("recurrence data line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "recurrence") {
            std::string kw;
            if (!(ls >> name >> kw >> order) || kw != "order" || order < 1) fail("bad header");
            coeffs.assign(static_cast<size_t>(order) + 1, BivariatePoly());
        } else if (tok == "coeff") {
            if (order < 0) fail("coeff before header");
            if (!(ls >> current) || current < 0 || current > order) fail("bad coeff index");
        } else {
            if (current < 0) fail("monomial outside coeff block");
            int deg_n = 0, deg_z = 0;
            std::string value;
            try {
                deg_n = std::stoi(tok);
            } catch (...) {
                fail("bad deg_n");
            }
            if (!(ls >> deg_z >> value)) fail("bad monomial");
            Int c;
            if (mpz_set_str(c.get_mpz_t(), value.c_str(), 10) != 0) fail("bad coefficient");
            auto& poly = coeffs[static_cast<size_t>(current)];
            if (poly.coeff(deg_n, deg_z) != 0) fail("duplicate monomial");
            poly.set_coeff(deg_n, deg_z, c);
        }
    }
    if (order < 0) throw std::invalid_argument("recurrence data: missing header");
    return Recurrence(name, std::move(coeffs));
}

std::string format_recurrence(const Recurrence& rec) {
    std::ostringstream out;
    out << "recurrence " << rec.name << " order " << rec.order << "\n";
    for (int i = 0; i <= rec.order; ++i) {
        out << "coeff " << i << "\n";
        for (const auto& [key, c] : rec.p(i).terms())
            out << key.first << " " << key.second << " " << c.get_str() << "\n";
    }
    return out.str();
}

SequenceRun run(const Recurrence& rec, const Rational& z, const std::vector<Rational>& initial,
                long N) {
    const int r = rec.order;
    if (static_cast<int>(initial.size()) != r)
        throw std::invalid_argument("run: initial data must have length = order");
    if (N < r - 1) throw std::invalid_argument("run: N below the initial segment");
    SequenceRun out;
    out.z = z;
    out.recurrence_name = rec.name;
    out.values = initial;
    out.values.reserve(static_cast<size_t>(N) + 1);
    for (long n = 0; n + r <= N; ++n) {
        Rational lead = rec.p(0).eval(n, z);
        if (lead == 0) throw LeadingCoefficientVanishes(n);
        Rational acc(0);
        for (int i = 1; i <= r; ++i)
            acc += rec.p(i).eval(n, z) * out.values[static_cast<size_t>(n + r - i)];
        out.values.push_back(-acc / lead);
    }
    return out;
}

std::vector<std::vector<RationalFunction>> companion_matrix(const Recurrence& rec,
                                                            const Rational& z) {
    const int r = rec.order;
    UniPoly p0 = rec.p(0).at_z(z);
    if (p0.is_zero())
        throw DomainError("companion_matrix: p0 vanishes identically at this z");
    std::vector<std::vector<RationalFunction>> m(
        static_cast<size_t>(r), std::vector<RationalFunction>(static_cast<size_t>(r)));
    for (int i = 0; i + 1 < r; ++i) m[i][i + 1] = RationalFunction::constant(1);
    for (int j = 0; j < r; ++j)
        m[r - 1][j] = RationalFunction(-rec.p(r - j).at_z(z), p0);
    return m;
}

namespace {

using PolyVec = std::array<UniPoly, 3>;
using PolyMat = std::array<PolyVec, 3>;

// Second compound of the 3x3 polynomial matrix c, minor basis (01, 02, 12).
PolyMat second_compound(const PolyMat& c) {
    constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    PolyMat out;
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) {
            int a = pairs[row][0], b = pairs[row][1];
            int p = pairs[col][0], q = pairs[col][1];
            out[row][col] = c[a][p] * c[b][q] - c[a][q] * c[b][p];
        }
    return out;
}

PolyVec row_times(const PolyVec& v, const PolyMat& m) {
    PolyVec out;
    for (int j = 0; j < 3; ++j)
        out[j] = v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j];
    return out;
}

UniPoly det3(const PolyVec& c0, const PolyVec& c1, const PolyVec& c2) {
    return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
           c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

// Joint normalization: integer coefficients, overall content 1, leading
// coefficient of the highest-shift polynomial positive.
std::vector<BivariatePoly> normalize_operator(std::vector<UniPoly> polys) {
    Int den_lcm(1), num_gcd(0);
    for (const auto& p : polys)
        for (const auto& c : p.coeffs()) {
            if (c == 0) continue;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        }
    for (auto& p : polys) p = p * Rational(den_lcm);
    for (const auto& p : polys)
        for (const auto& c : p.coeffs()) {
            if (c == 0) continue;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        }
    if (num_gcd == 0) throw std::logic_error("normalize_operator: zero operator");
    Rational scale = make_rational(1, num_gcd);
    if (polys.front().is_zero() || polys.front().leading() < 0) scale = -scale;
    std::vector<BivariatePoly> out;
    out.reserve(polys.size());
    for (auto& p : polys) {
        p = p * scale;
        BivariatePoly q;
        for (int i = 0; i <= p.degree(); ++i) {
            Rational c = p.coeff(i);
            if (c != 0) q.set_coeff(i, 0, c.get_num());
        }
        out.push_back(std::move(q));
    }
    return out;
}

Recurrence build_operator(const std::string& name, std::vector<UniPoly> window) {
    // window[i] multiplies w_{n+i}; convert to the p0-first convention.
    std::vector<UniPoly> rev(window.rbegin(), window.rend());
    return Recurrence(name, normalize_operator(std::move(rev)));
}

}  // namespace

Recurrence exterior_square(const Recurrence& rec, const Rational& z) {
    if (rec.order != 3)
        throw std::invalid_argument("exterior_square: needs an order-3 recurrence");
    std::array<UniPoly, 4> u;
    for (int i = 0; i <= 3; ++i) u[static_cast<size_t>(i)] = rec.p(i).at_z(z);
    if (u[0].is_zero()) throw DomainError("exterior_square: p0 vanishes identically at this z");

    auto companion_num = [&](long shift) {
        PolyMat c;
        UniPoly p0 = u[0].shifted(shift);
        c[0] = {UniPoly(), p0, UniPoly()};
        c[1] = {UniPoly(), UniPoly(), p0};
        c[2] = {-u[3].shifted(shift), -u[2].shifted(shift), -u[1].shifted(shift)};
        return c;
    };

    PolyMat P0 = second_compound(companion_num(0));
    PolyMat P1 = second_compound(companion_num(1));
    PolyMat P2 = second_compound(companion_num(2));

    UniPoly d0 = u[0], d1 = u[0].shifted(1), d2 = u[0].shifted(2);
    UniPoly d1d2_sq = (d1 * d2) * (d1 * d2);
    UniPoly d2_sq = d2 * d2;
    UniPoly big_d = (d0 * d1 * d2) * (d0 * d1 * d2);

    // Columns c_i express w_{n+i} over the minor basis at n, cleared to the
    // common denominator (p0(n) p0(n+1) p0(n+2))^2.
    PolyVec c0 = {big_d, UniPoly(), UniPoly()};
    PolyVec r1 = P0[0];
    PolyVec c1 = {r1[0] * d1d2_sq, r1[1] * d1d2_sq, r1[2] * d1d2_sq};
    PolyVec r2 = row_times(P1[0], P0);
    PolyVec c2 = {r2[0] * d2_sq, r2[1] * d2_sq, r2[2] * d2_sq};
    PolyVec c3 = row_times(row_times(P2[0], P1), P0);

    // Rank-deficient fallbacks: the minor sequence obeys a shorter operator.
    if (c1[1].is_zero() && c1[2].is_zero()) {
        auto lower = build_operator(rec.name + ":xsq", {c1[0], -big_d});
        throw DegenerateSystem("exterior square degenerates to order 1", std::move(lower));
    }
    UniPoly det012 = det3(c0, c1, c2);
    if (det012.is_zero()) {
        // Nullvector of A = [c0 c1 c2] from a nonzero adjugate column, since
        // A adj(A) = det(A) I = 0.
        std::array<PolyVec, 3> col = {c0, c1, c2};
        auto entry = [&](int row, int j) -> const UniPoly& {
            return col[static_cast<size_t>(j)][static_cast<size_t>(row)];
        };
        for (int j = 0; j < 3; ++j) {
            PolyVec q;
            bool nonzero = false;
            for (int i = 0; i < 3; ++i) {
                int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                int s0 = (i + 1) % 3, s1 = (i + 2) % 3;
                // adj[i][j] = (-1)^{i+j} minor(j, i); the cyclic index choice
                // bakes the sign in.
                q[static_cast<size_t>(i)] =
                    entry(r0, s0) * entry(r1, s1) - entry(r0, s1) * entry(r1, s0);
                nonzero = nonzero || !q[static_cast<size_t>(i)].is_zero();
            }
            if (nonzero) {
                auto lower = build_operator(rec.name + ":xsq", {q[0], q[1], q[2]});
                throw DegenerateSystem("exterior square degenerates to order 2",
                                       std::move(lower));
            }
        }
        throw DegenerateSystem("exterior square rank collapse",
                               build_operator(rec.name + ":xsq", {c1[0], -big_d}));
    }

    UniPoly q0 = det3(c1, c2, c3);
    UniPoly q1 = -det3(c0, c2, c3);
    UniPoly q2 = det3(c0, c1, c3);
    UniPoly q3 = -det012;
    if (q0.is_zero()) {
        auto lower = build_operator(rec.name + ":xsq", {q1, q2, q3});
        throw DegenerateSystem("exterior square trailing coefficient vanishes",
                               std::move(lower));
    }
    return build_operator(rec.name + ":xsq", {q0, q1, q2, q3});
}

// --- characteristic roots ---------------------------------------------------

namespace {

struct Cplx {
    Real re, im;
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
};

Cplx c_add(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
Cplx c_sub(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
Cplx c_mul(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cplx c_div(const Cplx& a, const Cplx& b) {
    Real nrm = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / nrm, (a.im * b.re - a.re * b.im) / nrm};
}
double c_abs2_d(const Cplx& a) {
    double re = a.re.to_double(), im = a.im.to_double();
    return re * re + im * im;
}

struct BallCplx {
    BallReal re, im;
};

BallCplx bc_add(const BallCplx& a, const BallCplx& b) { return {a.re + b.re, a.im + b.im}; }
BallCplx bc_mul(const BallCplx& a, const BallCplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

double hypot_up(double x, double y) {
    return std::nextafter(std::hypot(x, y), std::numeric_limits<double>::infinity());
}

double bc_mod_upper(const BallCplx& a) { return hypot_up(a.re.abs_upper(), a.im.abs_upper()); }
double bc_mod_lower(const BallCplx& a) {
    double m = std::hypot(a.re.abs_lower(), a.im.abs_lower());
    return std::nextafter(m, 0.0);
}

}  // namespace

double ComplexBall::modulus_upper() const { return hypot_up(re.abs_upper(), im.abs_upper()); }

double ComplexBall::modulus_lower() const {
    double m = std::hypot(re.abs_lower(), im.abs_lower());
    return std::nextafter(m, 0.0);
}

std::vector<ComplexBall> characteristic_roots_at_infinity(const Recurrence& rec,
                                                          const Rational& z, Prec prec) {
    const int r = rec.order;
    int top = -1;
    std::vector<UniPoly> u(static_cast<size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) {
        u[static_cast<size_t>(i)] = rec.p(i).at_z(z);
        top = std::max(top, u[static_cast<size_t>(i)].degree());
    }
    // chi(t) = sum_i c_i t^{r-i} with c_i the coefficient of n^top in p_i.
    std::vector<Rational> chi(static_cast<size_t>(r) + 1, Rational(0));
    for (int i = 0; i <= r; ++i) chi[static_cast<size_t>(r - i)] = u[static_cast<size_t>(i)].coeff(top);
    if (chi.back() == 0)
        throw DomainError("characteristic_roots: p0 does not reach the top n-degree");

    std::vector<ComplexBall> roots;
    size_t low = 0;
    while (low < chi.size() - 1 && chi[low] == 0) ++low;  // explicit zero roots
    for (size_t i = 0; i < low; ++i)
        roots.push_back({BallReal::of(0, prec), BallReal::of(0, prec)});
    std::vector<Rational> a(chi.begin() + static_cast<long>(low), chi.end());
    int d = static_cast<int>(a.size()) - 1;
    if (d == 0) return roots;

    const Prec wp = prec + 64;
    std::vector<Cplx> w;
    std::vector<Cplx> b;  // monic coefficients, degree d..0 not needed; keep 0..d
    Real lead = Real::of(a[static_cast<size_t>(d)], wp);
    for (int k = 0; k <= d; ++k)
        b.emplace_back(Real::of(a[static_cast<size_t>(k)], wp) / lead, Real(wp));

    // Cauchy bound for |roots|, used to scale the standard starting points.
    double bound = 1.0;
    for (int k = 0; k < d; ++k)
        bound = std::max(bound, 1.0 + std::fabs(b[static_cast<size_t>(k)].re.to_double()));
    Cplx seed(Real::of(0.4, wp), Real::of(0.9, wp));
    Cplx cur(Real::of(bound, wp), Real(wp));
    for (int i = 0; i < d; ++i) {
        cur = c_mul(cur, seed);
        w.push_back(cur);
    }

    auto eval_poly = [&](const std::vector<Cplx>& coeffs, const Cplx& x) {
        Cplx acc = coeffs.back();
        for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k)
            acc = c_add(c_mul(acc, x), coeffs[static_cast<size_t>(k)]);
        return acc;
    };

    const double tol = std::ldexp(1.0, -static_cast<int>(prec + 16));
    for (int iter = 0; iter < 600; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            Cplx num = eval_poly(b, w[static_cast<size_t>(i)]);
            Cplx den(Real::of(1L, wp), Real(wp));
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                den = c_mul(den, c_sub(w[static_cast<size_t>(i)], w[static_cast<size_t>(j)]));
            }
            Cplx delta = c_div(num, den);
            w[static_cast<size_t>(i)] = c_sub(w[static_cast<size_t>(i)], delta);
            double rel = std::sqrt(c_abs2_d(delta)) /
                         (1.0 + std::sqrt(c_abs2_d(w[static_cast<size_t>(i)])));
            worst = std::max(worst, rel);
        }
        if (worst < tol) break;
    }

    // Certified disk around each approximation: a degree-d polynomial has a
    // root within d |chi(w)| / |chi'(w)| of any point w.
    std::vector<BallCplx> chi_b, dchi_b;
    for (int k = 0; k <= d; ++k)
        chi_b.push_back({BallReal::of(a[static_cast<size_t>(k)], wp), BallReal::of(0, wp)});
    for (int k = 1; k <= d; ++k)
        dchi_b.push_back({BallReal::of(a[static_cast<size_t>(k)] * k, wp), BallReal::of(0, wp)});
    auto eval_ball = [&](const std::vector<BallCplx>& coeffs, const BallCplx& x) {
        BallCplx acc = coeffs.back();
        for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k)
            acc = bc_add(bc_mul(acc, x), coeffs[static_cast<size_t>(k)]);
        return acc;
    };

    for (int i = 0; i < d; ++i) {
        BallCplx x = {BallReal::exact(w[static_cast<size_t>(i)].re),
                      BallReal::exact(w[static_cast<size_t>(i)].im)};
        BallCplx val = eval_ball(chi_b, x);
        BallCplx der = eval_ball(dchi_b, x);
        double dlo = bc_mod_lower(der);
        if (!(dlo > 0))
            throw InsufficientPrecision("characteristic_roots: cannot certify a root disk");
        double radius = d * bc_mod_upper(val) / dlo;
        radius = std::nextafter(radius * (1 + 1e-14), std::numeric_limits<double>::infinity());
        roots.push_back({BallReal(w[static_cast<size_t>(i)].re, radius),
                         BallReal(w[static_cast<size_t>(i)].im, radius)});
    }

    std::sort(roots.begin(), roots.end(), [](const ComplexBall& x, const ComplexBall& y) {
        double mx = (x.modulus_upper() + x.modulus_lower()) / 2;
        double my = (y.modulus_upper() + y.modulus_lower()) / 2;
        if (mx != my) return mx > my;
        double rx = x.re.mid().to_double(), ry = y.re.mid().to_double();
        if (rx != ry) return rx > ry;
        return x.im.mid().to_double() > y.im.mid().to_double();
    });
    return roots;
}

AnnihilationReport verify_annihilates(const Recurrence& rec, const Rational& z,
                                      const std::vector<BallReal>& values,
                                      double min_margin_bits) {
    const int r = rec.order;
    if (static_cast<long>(values.size()) <= r)
        throw std::invalid_argument("verify_annihilates: need more than order+1 values");
    Prec prec = values.front().prec();
    for (const auto& v : values) prec = std::max(prec, v.prec());

    AnnihilationReport report;
    report.ok = true;
    report.worst_margin_bits = std::numeric_limits<double>::infinity();
    for (long n = 0; n + r < static_cast<long>(values.size()); ++n) {
        BallReal sum = BallReal::of(0, prec);
        double scale = 0.0;
        for (int i = 0; i <= r; ++i) {
            BallReal term = values[static_cast<size_t>(n + r - i)] *
                            BallReal::of(rec.p(i).eval(n, z), prec);
            scale = std::max(scale, term.abs_upper());
            sum = sum + term;
        }
        if (!sum.contains_zero()) {
            report.ok = false;
            report.first_failure = n;
            report.worst_margin_bits = 0.0;
            return report;
        }
        if (scale > 0.0) {
            double margin = std::log2(scale) - std::log2(sum.rad() > 0 ? sum.rad() : 5e-324);
            report.worst_margin_bits = std::min(report.worst_margin_bits, margin);
            if (margin < min_margin_bits)
                throw InsufficientPrecision(
                    "verify_annihilates: window " + std::to_string(n) +
                    " certifies only " + std::to_string(margin) + " bits of cancellation");
        }
    }
    return report;
}

}  // namespace aplim
