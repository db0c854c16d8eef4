#include "aplim/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "aplim/errors.hpp"

namespace aplim {

namespace {

// One abscissa t = k h of the tanh-sinh rule, stored as distances from both
// endpoints plus the weight pi cosh(t) x0 x1. Mirrored nodes swap x0 and x1.
struct Node {
    Real x0, x1, w;
};

using NodeTable = std::vector<Node>;  // k = 0, 1, 2, ... for one level's h

// Nodes for level L live at odd multiples of h_L = 2^-L relative to coarser
// levels; caching whole levels keeps the code simple and the tables small.
const NodeTable& nodes_for(Prec wp, int level) {
    static std::mutex mu;
    static std::map<std::pair<Prec, int>, std::unique_ptr<NodeTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(wp, level);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto table = std::make_unique<NodeTable>();
    Real pi = Real::pi(wp);
    Real half_pi = pi / 2;
    Real h = Real::of(1, wp);
    mpfr_div_2si(h.raw(), h.raw(), level, MPFR_RNDN);
    // Stop once w / sqrt(min(x0, x1)) drops below 2^-(wp+24): covers endpoint
    // exponents down to -1/2 with margin.
    const long stop_bits = wp + 24;
    for (long k = 0;; ++k) {
        Real t = h * k;
        Real s = half_pi * sinh(t);
        Real e2s = exp(s * 2);
        Real x0 = 1 / (1 + 1 / e2s);  // 1/(1+e^-2s)
        Real x1 = 1 / (1 + e2s);
        Real w = pi * cosh(t) * x0 * x1;
        if (!w.is_finite() || w.is_zero()) break;
        long wexp = w.exponent();
        long xexp = std::min(x0.is_zero() ? -stop_bits * 4 : x0.exponent(),
                             x1.is_zero() ? -stop_bits * 4 : x1.exponent());
        table->push_back({std::move(x0), std::move(x1), std::move(w)});
        if (k > 0 && wexp - xexp / 2 < -stop_bits) break;
    }
    const NodeTable& ref = *table;
    cache.emplace(key, std::move(table));
    return ref;
}

double diff_magnitude(const Real& a, const Real& b) {
    Real d = abs(a - b);
    if (d.is_zero()) return 0.0;
    double x = d.to_double();
    return x == 0.0 ? 5e-324 : x;
}

struct LevelSummer {
    int max_levels;
    Prec wp;
    Prec out_prec;

    // sum_fn(level) returns h * sum over that level's full grid.
    template <typename SumFn>
    QuadratureResult run(SumFn&& sum_fn) const {
        Real prev(wp);
        double err = std::numeric_limits<double>::infinity();
        int used = 0;
        for (int level = 3; level <= std::max(3, max_levels); ++level) {
            Real cur = sum_fn(level);
            if (!cur.is_finite()) throw NonFiniteIntegrand("quadrature sum is not finite");
            used = level;
            if (level > 3) {
                err = diff_magnitude(cur, prev);
                // Converged to working precision: further levels only add noise.
                double scale = std::fabs(cur.to_double());
                if (err <= scale * std::ldexp(1.0, -static_cast<int>(out_prec)) || err == 0.0) {
                    prev = std::move(cur);
                    break;
                }
            }
            prev = std::move(cur);
        }
        Real out(out_prec);
        mpfr_set(out.raw(), prev.raw(), MPFR_RNDN);
        return {std::move(out), err, used};
    }
};

}  // namespace

QuadratureResult tanh_sinh(const Integrand1D& f, int levels, Prec prec) {
    const Prec wp = prec + 32;
    auto level_sum = [&](int level) {
        const NodeTable& nodes = nodes_for(wp, level);
        Real acc(wp);
        for (size_t k = nodes.size(); k-- > 0;) {  // small terms first
            const Node& nd = nodes[k];
            Real fv = f(nd.x0, nd.x1);
            if (!fv.is_finite())
                throw NonFiniteIntegrand("tanh_sinh: integrand not finite at an interior node");
            acc += fv * nd.w;
            if (k > 0) {
                Real fm = f(nd.x1, nd.x0);
                if (!fm.is_finite())
                    throw NonFiniteIntegrand("tanh_sinh: integrand not finite at an interior node");
                acc += fm * nd.w;
            }
        }
        mpfr_div_2si(acc.raw(), acc.raw(), level, MPFR_RNDN);
        return acc;
    };
    return LevelSummer{levels, wp, prec}.run(level_sum);
}

namespace {

// Expanded node list (k < 0 mirrors) so double loops stay branch-free.
std::vector<const Node*> full_line(const NodeTable& nodes, std::vector<Node>& mirror_store) {
    mirror_store.clear();
    mirror_store.reserve(nodes.size());
    std::vector<const Node*> line;
    line.reserve(2 * nodes.size() - 1);
    for (size_t k = nodes.size(); k-- > 1;) {
        mirror_store.push_back({nodes[k].x1, nodes[k].x0, nodes[k].w});
        line.push_back(&mirror_store.back());
    }
    for (size_t k = 0; k < nodes.size(); ++k) line.push_back(&nodes[k]);
    return line;
}

// x-part, y-part and pair coupling of a 2-D integrand over the unit square:
// value(i, j) = fx(i) * fy(j) * couple(x_i, y_j).
struct SquareIntegrand {
    std::function<Real(const Real& x0, const Real& x1)> fx;
    std::function<Real(const Real& y0, const Real& y1)> fy;
    std::function<Real(const Real& x0, const Real& y0)> couple;
};

QuadratureResult square_quadrature(const SquareIntegrand& g, int levels, Prec prec,
                                   bool swap_axes) {
    const Prec wp = prec + 32;
    auto level_sum = [&](int level) {
        const NodeTable& nodes = nodes_for(wp, level);
        std::vector<Node> mirrors;
        std::vector<const Node*> line = full_line(nodes, mirrors);
        const size_t m = line.size();

        std::vector<Real> xf, yf;
        xf.reserve(m);
        yf.reserve(m);
        for (const Node* nd : line) {
            Real vx = g.fx(nd->x0, nd->x1) * nd->w;
            Real vy = g.fy(nd->x0, nd->x1) * nd->w;
            if (!vx.is_finite() || !vy.is_finite())
                throw NonFiniteIntegrand("square_quadrature: axis factor not finite");
            xf.push_back(std::move(vx));
            yf.push_back(std::move(vy));
        }

        Real acc(wp);
        Real cell(wp);
        for (size_t i = 0; i < m; ++i) {
            const Node* ni = line[i];
            Real row(wp);
            for (size_t j = 0; j < m; ++j) {
                const Node* nj = line[j];
                const Real& x0 = swap_axes ? nj->x0 : ni->x0;
                const Real& y0 = swap_axes ? ni->x0 : nj->x0;
                Real c = g.couple(x0, y0);
                if (!c.is_finite())
                    throw NonFiniteIntegrand("square_quadrature: coupling not finite");
                size_t xi = swap_axes ? j : i;
                size_t yj = swap_axes ? i : j;
                mpfr_mul(cell.raw(), c.raw(), xf[xi].raw(), MPFR_RNDN);
                mpfr_mul(cell.raw(), cell.raw(), yf[yj].raw(), MPFR_RNDN);
                mpfr_add(row.raw(), row.raw(), cell.raw(), MPFR_RNDN);
            }
            acc += row;
        }
        mpfr_div_2si(acc.raw(), acc.raw(), 2 * level, MPFR_RNDN);
        return acc;
    };
    return LevelSummer{levels, wp, prec}.run(level_sum);
}

Real rsqrt(const Real& x) {
    Real r(x.prec());
    mpfr_rec_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

QuadratureResult integral_J(long n, const Rational& z, int levels, Prec prec, bool swap_axes) {
    if (n < 0 || z <= 0 || z >= 1)
        throw std::invalid_argument("integral_J: need n >= 0 and 0 < z < 1");
    const Prec wp = prec + 32;
    Real zr = Real::of(z, wp);
    SquareIntegrand g;
    // x^(n-1/2) (1-x)^(n-1/2)
    g.fx = [n](const Real& x0, const Real& x1) {
        Real p = x0 * x1;
        return pow_si(p, n) * rsqrt(p);
    };
    // y^(n-1/2) (1-y)^n
    g.fy = [n](const Real& y0, const Real& y1) {
        return pow_si(y0, n) * rsqrt(y0) * pow_si(y1, n);
    };
    // (1 - z x y)^-(n+1/2)
    g.couple = [n, zr](const Real& x0, const Real& y0) {
        Real u = 1 - zr * x0 * y0;
        return pow_si(u, -n) * rsqrt(u);
    };
    return square_quadrature(g, levels, prec, swap_axes);
}

QuadratureResult integral_beukers(int n, int levels, Prec prec) {
    if (n != 0 && n != 1) throw std::invalid_argument("integral_beukers: n must be 0 or 1");
    const Prec wp = prec + 32;
    auto level_sum = [&](int level) {
        const NodeTable& nodes = nodes_for(wp, level);
        std::vector<Node> mirrors;
        std::vector<const Node*> line = full_line(nodes, mirrors);
        const size_t m = line.size();

        // Axis factor (u (1-u))^n * weight.
        std::vector<Real> af;
        af.reserve(m);
        for (const Node* nd : line)
            af.push_back(n == 0 ? nd->w : nd->x0 * nd->x1 * nd->w);

        Real acc(wp);
        Real t1(wp), t2(wp), denom(wp), cell(wp);
        for (size_t i = 0; i < m; ++i) {
            Real xy(wp);
            Real row_i(wp);
            for (size_t j = 0; j < m; ++j) {
                mpfr_mul(xy.raw(), line[i]->x0.raw(), line[j]->x0.raw(), MPFR_RNDN);
                Real fij = af[i] * af[j];
                Real row(wp);
                for (size_t l = 0; l < m; ++l) {
                    // 1 - (1 - x y) w = (1 - w) + x y w: all positive, no cancellation
                    mpfr_mul(t1.raw(), xy.raw(), line[l]->x0.raw(), MPFR_RNDN);
                    mpfr_add(denom.raw(), t1.raw(), line[l]->x1.raw(), MPFR_RNDN);
                    if (n == 0) {
                        mpfr_div(cell.raw(), af[l].raw(), denom.raw(), MPFR_RNDN);
                    } else {
                        mpfr_mul(t2.raw(), denom.raw(), denom.raw(), MPFR_RNDN);
                        mpfr_div(cell.raw(), af[l].raw(), t2.raw(), MPFR_RNDN);
                    }
                    mpfr_add(row.raw(), row.raw(), cell.raw(), MPFR_RNDN);
                }
                row_i += fij * row;
            }
            acc += row_i;
        }
        mpfr_div_2si(acc.raw(), acc.raw(), 3 * level + 1, MPFR_RNDN);  // h^3 and the 1/2
        return acc;
    };
    return LevelSummer{levels, wp, prec}.run(level_sum);
}

QuadratureResult integral_L(long n, long Z, int levels, Prec prec) {
    if (Z < 2 || n < 0) throw std::invalid_argument("integral_L: need integer Z >= 2, n >= 0");
    const Prec wp = prec + 32;
    Real zr = Real::of(Z, wp);
    SquareIntegrand g;
    // x^(n-1/2) (1-x)^(2n-1/2) (1-x/Z)^(1/2)
    g.fx = [n, zr](const Real& x0, const Real& x1) {
        return pow_si(x0, n) * rsqrt(x0) * pow_si(x1, 2 * n) * rsqrt(x1) *
               sqrt(1 - x0 / zr);
    };
    // y^n (1-y)^(n-1/2)
    g.fy = [n](const Real& y0, const Real& y1) {
        return pow_si(y0, n) * pow_si(y1, n) * rsqrt(y1);
    };
    // (x (1-y) + y Z)^-(n+1)
    g.couple = [n, zr](const Real& x0, const Real& y0) {
        Real denom = x0 * (1 - y0) + y0 * zr;
        return pow_si(denom, -(n + 1));
    };
    return square_quadrature(g, levels, prec, false);
}

QuadratureResult integral_sigma2(long Z, int levels, Prec prec) {
    if (Z < 2) throw std::invalid_argument("integral_sigma2: need integer Z >= 2");
    const Prec wp = prec + 32;
    Real zr = Real::of(Z, wp);
    SquareIntegrand g;
    g.fx = [zr](const Real& x0, const Real& x1) {
        return rsqrt(x0) * sqrt(x1) * sqrt(1 - x0 / zr);
    };
    g.fy = [](const Real&, const Real& y1) { return sqrt(y1); };
    g.couple = [zr](const Real& x0, const Real& y0) {
        return 1 / (x0 * (1 - y0) + y0 * zr);
    };
    return square_quadrature(g, levels, prec, false);
}

QuadratureResult integral_f_zform(long Z, int levels, Prec prec) {
    if (Z < 2) throw std::invalid_argument("integral_f_zform: need integer Z >= 2");
    const Prec wp = prec + 32;
    Real zr = Real::of(Z, wp);
    SquareIntegrand g;
    g.fx = [zr](const Real& x0, const Real& x1) {
        return rsqrt(x0 * x1) * sqrt(1 - x0 / zr);
    };
    g.fy = [](const Real&, const Real& y1) { return rsqrt(y1); };
    g.couple = [zr](const Real& x0, const Real& y0) {
        return 1 / (x0 * (1 - y0) + y0 * zr);
    };
    QuadratureResult res = square_quadrature(g, levels, prec, false);
    res.value = res.value * Z;
    res.error_estimate *= static_cast<double>(Z);
    return res;
}

QuadratureResult integral_f_logform(const Rational& z, int levels, Prec prec) {
    if (z <= 0 || z >= 1) throw std::invalid_argument("integral_f_logform: need 0 < z < 1");
    const Prec wp = prec + 32;
    Real zr = Real::of(z, wp);
    // -x^(-1/2) (1-x)^(-1/2) log((1-w)/(1+w)) with w = sqrt(1-zx); rewriting
    // via (1-w)(1+w) = zx keeps the kernel stable where x underflows:
    // log((1-w)/(1+w)) = log(z x) - 2 log(1+w).
    Integrand1D f = [zr](const Real& x0, const Real& x1) {
        Real w = sqrt(1 - zr * x0);
        Real kern = log(zr * x0) - 2 * log(1 + w);
        return -(rsqrt(x0 * x1) * kern);
    };
    return tanh_sinh(f, levels, prec);
}

Real mahler_integrand(const Real& k, const Real& t) {
    Prec wp = k.prec();
    Real c = cos(t) * 2 + k;
    Real c2m4 = c * c - 4;
    if (c2m4.sign() <= 0 || c.sign() <= 0) return Real(wp);  // log+ is zero on |c| <= 2
    return log((c + sqrt(c2m4)) / 2);
}

QuadratureResult mahler_mu(const Real& k, int levels, Prec prec) {
    if (!(k > 0L) || k == 4L) throw std::invalid_argument("mahler_mu: need k > 0, k != 4");
    const Prec wp = prec + 32;
    Real kw(wp);
    mpfr_set(kw.raw(), k.raw(), MPFR_RNDN);
    Real pi = Real::pi(wp);
    // |2 cos t + k| > 2 holds on (0, t*) with t* = acos((2-k)/2) when k < 4,
    // and on all of (0, pi) when k > 4; log+ rho vanishes beyond t*.
    Real upper = k < 4L ? acos((2 - kw) / 2) : pi;
    Integrand1D f = [&](const Real& u0, const Real&) {
        Real t = upper * u0;
        return mahler_integrand(kw, t);
    };
    QuadratureResult res = tanh_sinh(f, levels, prec + 8);
    Real scaled = res.value * upper / pi;
    Real out(prec);
    mpfr_set(out.raw(), scaled.raw(), MPFR_RNDN);
    double scale = std::fabs((upper / pi).to_double());
    return {std::move(out), res.error_estimate * scale, res.levels_used};
}

}  // namespace aplim
