#include "aplim/unipoly.hpp"

#include <stdexcept>

#include "aplim/errors.hpp"

namespace aplim {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) {
    UniPoly p;
    if (c != 0) p.coeffs_.push_back(c);
    return p;
}

UniPoly UniPoly::monomial(int degree, const Rational& c) {
    UniPoly p;
    if (c != 0) {
        p.coeffs_.assign(static_cast<size_t>(degree) + 1, Rational(0));
        p.coeffs_.back() = c;
    }
    return p;
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return Rational(0);
    return coeffs_[static_cast<size_t>(i)];
}

const Rational& UniPoly::leading() const {
    if (is_zero()) throw std::logic_error("UniPoly::leading on zero polynomial");
    return coeffs_.back();
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::shifted(long k) const {
    if (k == 0 || is_zero()) return *this;
    // Horner in (n + k): p(n+k) = (...((c_d)(n+k) + c_{d-1})(n+k) + ...)
    UniPoly shift({Rational(k), Rational(1)});
    UniPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * shift + UniPoly::constant(*it);
    return acc;
}

UniPoly UniPoly::operator-() const {
    UniPoly p(*this);
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UniPoly(std::move(out));
}

UniPoly UniPoly::operator*(const Rational& c) const {
    if (c == 0) return UniPoly();
    UniPoly p(*this);
    for (auto& x : p.coeffs_) x *= c;
    return p;
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("UniPoly::divrem by zero");
    UniPoly rem = a;
    if (a.degree() < b.degree()) return {UniPoly(), rem};
    std::vector<Rational> q(static_cast<size_t>(a.degree() - b.degree()) + 1, Rational(0));
    const Rational& lead = b.leading();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Rational factor = rem.leading() / lead;
        q[static_cast<size_t>(shift)] = factor;
        rem -= b * UniPoly::monomial(shift, factor);
    }
    return {UniPoly(std::move(q)), rem};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.monic();  // monic remainders tame coefficient growth
    }
    return a.is_zero() ? a : a.monic();
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

UniPoly UniPoly::primitive_part() const {
    if (is_zero()) return *this;
    Int den_lcm(1), num_gcd(0);
    for (const auto& c : coeffs_) {
        if (c == 0) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    UniPoly scaled = *this * Rational(den_lcm);
    for (const auto& c : scaled.coeffs_) {
        if (c == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    return scaled * make_rational(1, num_gcd);
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        bool unit = (a == 1 && i > 0);
        if (!unit) out += aplim::to_string(a);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

RationalFunction::RationalFunction(UniPoly num, UniPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    normalize();
}

RationalFunction RationalFunction::of(const UniPoly& p) {
    return RationalFunction(p, UniPoly::constant(1));
}

RationalFunction RationalFunction::constant(const Rational& c) {
    return of(UniPoly::constant(c));
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = UniPoly::constant(1);
        return;
    }
    UniPoly g = UniPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = UniPoly::divrem(num_, g).first;
        den_ = UniPoly::divrem(den_, g).first;
    }
    Rational lead = den_.leading();
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Rational RationalFunction::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) throw DomainError("RationalFunction::eval: pole at " + aplim::to_string(x));
    return num_.eval(x) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r(*this);
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::invalid_argument("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

}  // namespace aplim
