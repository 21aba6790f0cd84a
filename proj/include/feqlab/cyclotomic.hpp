#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "feqlab/rational.hpp"

namespace feqlab {

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace detail {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
using DensePoly = std::vector<Rational>;

inline void trim(DensePoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Long division; divisor must have a nonzero leading coefficient.
inline std::pair<DensePoly, DensePoly> poly_divmod(DensePoly num, const DensePoly& den) {
    trim(num);
    if (den.empty() || den.back().is_zero())
        throw DomainError("polynomial division by zero");
    DensePoly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational& lead = den.back();
    while (num.size() >= den.size()) {
        size_t shift = num.size() - den.size();
        Rational q = num.back() / lead;
        quot[shift] = q;
        for (size_t j = 0; j < den.size(); ++j)
            num[shift + j] -= q * den[j];
        trim(num);
    }
    return {std::move(quot), std::move(num)};
}

} // namespace detail

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
/// Computed by exact division: Phi_n = (x^n - 1) / prod of Phi_d over proper divisors d.
inline std::vector<Rational> cyclotomic_polynomial(unsigned n) {
    if (n < 1) throw DomainError("cyclotomic polynomial needs n >= 1");
    static std::map<unsigned, detail::DensePoly> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    auto hit = cache.find(n);
    if (hit != cache.end()) return hit->second;
    for (unsigned m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m)) continue;
        detail::DensePoly num(m + 1, Rational(0));
        num[0] = Rational(-1);
        num[m] = Rational(1);
        for (unsigned d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto [q, r] = detail::poly_divmod(std::move(num), cache.at(d));
            if (!r.empty()) throw DomainError("cyclotomic division left a remainder");
            num = std::move(q);
        }
        cache.emplace(m, std::move(num));
    }
    return cache.at(n);
}

/// Element of Q(zeta_L) on the power basis {zeta_L^j : 0 <= j < phi(L)},
/// canonically reduced mod Phi_L. Immutable value type; equality across
/// different orders compares in the common field Q(zeta_lcm).
class Cyclotomic {
public:
    Cyclotomic() : order_(1), c_{Rational(0)} {}
    Cyclotomic(const Rational& r) : order_(1), c_{r} {}
    Cyclotomic(long long n) : order_(1), c_{Rational(n)} {}

    /// Reduce an arbitrary polynomial in zeta_order mod Phi_order.
    static Cyclotomic from_poly(unsigned order, detail::DensePoly p) {
        if (order < 1) throw DomainError("cyclotomic order must be >= 1");
        auto [q, r] = detail::poly_divmod(std::move(p), cyclotomic_polynomial(order));
        (void)q;
        r.resize(euler_phi(order), Rational(0));
        return Cyclotomic(order, std::move(r));
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// True when the value lies in Q (all basis coefficients past 1 vanish).
    bool is_rational() const {
        for (size_t j = 1; j < c_.size(); ++j)
            if (!c_[j].is_zero()) return false;
        return true;
    }

    std::optional<Rational> as_rational() const {
        if (!is_rational()) return std::nullopt;
        return c_[0];
    }

    /// Re-express in Q(zeta_target); requires order | target.
    Cyclotomic lift_to(unsigned target) const {
        if (target % order_ != 0)
            throw DomainError("cyclotomic lift target must be a multiple of the order");
        if (target == order_) return *this;
        unsigned stride = target / order_;
        detail::DensePoly p(euler_phi(order_) * stride, Rational(0));
        for (size_t j = 0; j < c_.size(); ++j)
            p[j * stride] = c_[j];
        return from_poly(target, std::move(p));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] += y.c_[j];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        for (size_t j = 0; j < x.c_.size(); ++j) x.c_[j] -= y.c_[j];
        return x;
    }
    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = align(a, b);
        detail::DensePoly prod(x.c_.size() + y.c_.size() - 1, Rational(0));
        for (size_t j = 0; j < x.c_.size(); ++j) {
            if (x.c_[j].is_zero()) continue;
            for (size_t k = 0; k < y.c_.size(); ++k)
                prod[j + k] += x.c_[j] * y.c_[k];
        }
        return from_poly(x.order_, std::move(prod));
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
        return a * b.inverse();
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    /// Multiplicative inverse via extended Euclid against Phi_L
    /// (irreducible over Q, so the gcd is a nonzero constant).
    Cyclotomic inverse() const {
        if (is_zero()) throw DomainError("cyclotomic division by zero");
        if (auto r = as_rational()) return Cyclotomic(order_, inverse_coeffs(Rational(1) / *r));
        detail::DensePoly r0 = cyclotomic_polynomial(order_);
        detail::DensePoly r1 = c_;
        detail::trim(r1);
        detail::DensePoly s0{};
        detail::DensePoly s1{Rational(1)};
        while (!r1.empty()) {
            auto [q, rem] = detail::poly_divmod(r0, r1);
            detail::DensePoly s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.size() != 1)
            throw DomainError("cyclotomic inverse: gcd with the modulus is not constant");
        for (auto& c : s0) c /= r0[0];
        return from_poly(order_, std::move(s0));
    }

    /// Image under zeta_L -> zeta_L^{-1}; matches complex conjugation.
    Cyclotomic conj() const {
        detail::DensePoly p(order_, Rational(0));
        for (size_t j = 0; j < c_.size(); ++j)
            p[j == 0 ? 0 : order_ - j] += c_[j];
        return from_poly(order_, std::move(p));
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return a.c_ == b.c_;
        unsigned common = std::lcm(a.order_, b.order_);
        return a.lift_to(common).c_ == b.lift_to(common).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& v) {
        os << "cyc(" << v.order_ << ")[";
        for (size_t j = 0; j < v.c_.size(); ++j)
            os << (j ? ", " : "") << v.c_[j].to_string();
        return os << "]";
    }

private:
    Cyclotomic(unsigned order, std::vector<Rational> coeffs)
        : order_(order), c_(std::move(coeffs)) {}

    std::vector<Rational> inverse_coeffs(Rational r) const {
        std::vector<Rational> v(c_.size(), Rational(0));
        v[0] = std::move(r);
        return v;
    }

    static std::pair<Cyclotomic, Cyclotomic> align(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return {a, b};
        if (auto r = a.as_rational()) {
            Cyclotomic lifted(*r);
            return {lifted.lift_to(b.order_), b};
        }
        if (auto r = b.as_rational()) {
            Cyclotomic lifted(*r);
            return {a, lifted.lift_to(a.order_)};
        }
        throw DomainError("cyclotomic arithmetic across different orders");
    }

    static detail::DensePoly poly_mul(const detail::DensePoly& a, const detail::DensePoly& b) {
        if (a.empty() || b.empty()) return {};
        detail::DensePoly r(a.size() + b.size() - 1, Rational(0));
        for (size_t j = 0; j < a.size(); ++j)
            for (size_t k = 0; k < b.size(); ++k)
                r[j + k] += a[j] * b[k];
        return r;
    }

    static detail::DensePoly poly_sub(const detail::DensePoly& a, const detail::DensePoly& b) {
        detail::DensePoly r = a;
        if (r.size() < b.size()) r.resize(b.size(), Rational(0));
        for (size_t j = 0; j < b.size(); ++j) r[j] -= b[j];
        detail::trim(r);
        return r;
    }

    unsigned order_;
    std::vector<Rational> c_;
};

/// Canonical zeta_L^k (k may be negative).
inline Cyclotomic zeta(unsigned L, long long k = 1) {
    if (L < 1) throw DomainError("zeta order must be >= 1");
    long long e = k % static_cast<long long>(L);
    if (e < 0) e += L;
    detail::DensePoly p(static_cast<size_t>(e) + 1, Rational(0));
    p[static_cast<size_t>(e)] = Rational(1);
    return Cyclotomic::from_poly(L, std::move(p));
}

inline Cyclotomic cyc_conj(const Cyclotomic& a) { return a.conj(); }

/// Sum of theta^{kt} over k = 0..N-1 for theta a primitive N-th root;
/// equals N when N | t and 0 otherwise.
inline Cyclotomic root_power_sum(unsigned N, unsigned long long t) {
    if (N < 1) throw DomainError("root power sum needs N >= 1");
    Cyclotomic sum = Cyclotomic(0).lift_to(N);
    unsigned long long tr = t % N;
    for (unsigned k = 0; k < N; ++k)
        sum += zeta(N, static_cast<long long>((k * tr) % N));
    return sum;
}

} // namespace feqlab
