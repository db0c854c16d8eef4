#include "aplim/bivariate_poly.hpp"

#include <stdexcept>

namespace aplim {

BivariatePoly BivariatePoly::constant(const Int& c) { return monomial(0, 0, c); }

BivariatePoly BivariatePoly::monomial(int deg_n, int deg_z, const Int& c) {
    BivariatePoly p;
    if (c != 0) p.terms_[{deg_n, deg_z}] = c;
    return p;
}

BivariatePoly BivariatePoly::n() { return monomial(1, 0, 1); }
BivariatePoly BivariatePoly::z() { return monomial(0, 1, 1); }

void BivariatePoly::set_coeff(int deg_n, int deg_z, const Int& c) {
    if (deg_n < 0 || deg_z < 0) throw std::invalid_argument("BivariatePoly: negative degree");
    if (c == 0)
        terms_.erase({deg_n, deg_z});
    else
        terms_[{deg_n, deg_z}] = c;
}

Int BivariatePoly::coeff(int deg_n, int deg_z) const {
    auto it = terms_.find({deg_n, deg_z});
    return it == terms_.end() ? Int(0) : it->second;
}

int BivariatePoly::degree_n() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first);
    return d;
}

int BivariatePoly::degree_z() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second);
    return d;
}

Rational BivariatePoly::eval(const Int& n, const Rational& z) const {
    // Group by deg_n; the map is ordered by (deg_n, deg_z), so evaluate each
    // block in z via Horner, then combine in n via Horner.
    Rational acc(0);
    int prev_deg_n = -1;
    Rational block(0);
    Rational n_q(n);
    auto flush = [&](int next_deg_n) {
        if (prev_deg_n >= 0) {
            acc += block * rational_pow(n_q, prev_deg_n);
            block = 0;
        }
        prev_deg_n = next_deg_n;
    };
    for (const auto& [key, c] : terms_) {
        if (key.first != prev_deg_n) flush(key.first);
        block += Rational(c) * rational_pow(z, key.second);
    }
    flush(-1);
    return acc;
}

Rational BivariatePoly::eval(long n, const Rational& z) const { return eval(Int(n), z); }

UniPoly BivariatePoly::at_z(const Rational& z) const {
    std::vector<Rational> coeffs(static_cast<size_t>(std::max(degree_n(), -1) + 1), Rational(0));
    for (const auto& [key, c] : terms_)
        coeffs[static_cast<size_t>(key.first)] += Rational(c) * rational_pow(z, key.second);
    return UniPoly(std::move(coeffs));
}

BivariatePoly BivariatePoly::shift_n(long k) const {
    if (k == 0) return *this;
    BivariatePoly out;
    Int kz(k);
    for (const auto& [key, c] : terms_) {
        const int a = key.first;
        // (n + k)^a = sum_j C(a, j) k^(a-j) n^j
        Int power(1);  // k^(a-j), built from j = a downward
        for (int j = a; j >= 0; --j) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(a),
                         static_cast<unsigned long>(j));
            Int add = c * binom * power;
            auto it = out.terms_.find({j, key.second});
            if (it == out.terms_.end()) {
                if (add != 0) out.terms_[{j, key.second}] = add;
            } else {
                it->second += add;
                if (it->second == 0) out.terms_.erase(it);
            }
            power *= kz;
        }
    }
    return out;
}

BivariatePoly BivariatePoly::pow(unsigned e) const {
    BivariatePoly acc = constant(1);
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

BivariatePoly BivariatePoly::operator-() const {
    BivariatePoly p(*this);
    for (auto& [key, c] : p.terms_) c = -c;
    return p;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
    for (const auto& [key, c] : o.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_[key] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
    for (const auto& [key, c] : o.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_[key] = -c;
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            BivariatePoly::Key key{ka.first + kb.first, ka.second + kb.second};
            auto it = out.terms_.find(key);
            if (it == out.terms_.end()) {
                out.terms_[key] = ca * cb;
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    return out;
}

BivariatePoly BivariatePoly::operator*(const Int& c) const {
    if (c == 0) return BivariatePoly();
    BivariatePoly p(*this);
    for (auto& [key, x] : p.terms_) x *= c;
    return p;
}

BivariatePoly operator*(long c, const BivariatePoly& p) { return p * Int(c); }

}  // namespace aplim
