#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "feqlab/cyclotomic.hpp"
#include "feqlab/rational.hpp"
#include "feqlab/variable.hpp"

namespace feqlab {

/// Exponent vector in canonical form: sorted by VarId, no zero exponents.
using Monomial = std::vector<std::pair<VarId, unsigned>>;

inline Monomial canonical_monomial(Monomial m) {
    std::sort(m.begin(), m.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Monomial out;
    for (const auto& [v, e] : m) {
        if (e == 0) continue;
        if (!out.empty() && out.back().first == v)
            out.back().second += e;
        else
            out.emplace_back(v, e);
    }
    return out;
}

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto key = [](const std::pair<VarId, unsigned>& t) {
            return std::tuple(t.first, t.second);
        };
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [&](const auto& s, const auto& t) { return key(s) < key(t); });
    }
};

inline Rational conj_coeff(const Rational& r) { return r; }
inline Cyclotomic conj_coeff(const Cyclotomic& c) { return c.conj(); }

/// Sparse multivariate polynomial over K (Rational or Cyclotomic).
/// Canonical form: the term map holds no zero coefficients, so structural
/// equality is mathematical equality.
template <class K>
class Polynomial {
public:
    using TermMap = std::map<Monomial, K, MonomialLess>;

    Polynomial() = default;

    static Polynomial zero() { return {}; }

    static Polynomial constant(K c) {
        Polynomial p;
        p.add_term(Monomial{}, std::move(c));
        return p;
    }

    static Polynomial variable(VarId v) {
        Polynomial p;
        p.add_term(Monomial{{v, 1}}, K(1));
        return p;
    }

    static Polynomial monomial(Monomial m, K c) {
        Polynomial p;
        p.add_term(canonical_monomial(std::move(m)), std::move(c));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    K constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? K(0) : it->second;
    }

    std::set<VarId> vars() const {
        std::set<VarId> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m) out.insert(v);
        return out;
    }

    /// Total degree; -1 is the degree of the zero polynomial.
    int total_degree() const {
        int best = -1;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (const auto& [v, e] : m) d += static_cast<int>(e);
            best = std::max(best, d);
        }
        return best;
    }

    int degree_of(VarId v) const {
        int best = 0;
        for (const auto& [m, c] : terms_)
            for (const auto& [mv, e] : m)
                if (mv == v) best = std::max(best, static_cast<int>(e));
        return best;
    }

    std::map<VarId, int> per_variable_degrees() const {
        std::map<VarId, int> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m)
                out[v] = std::max(out[v], static_cast<int>(e));
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, K(0) - c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, K(0) - c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                K c = ca * cb;
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                r.add_term(canonical_monomial(std::move(m)), std::move(c));
            }
        }
        return r;
    }
    friend Polynomial operator*(const K& s, const Polynomial& p) {
        Polynomial r;
        for (const auto& [m, c] : p.terms_) r.add_term(m, s * c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& p, const K& s) { return s * p; }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return false;
            if (!(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const {
        Polynomial base = *this;
        Polynomial acc = constant(K(1));
        while (e > 0) {
            if (e & 1u) acc = acc * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return acc;
    }

    /// Simultaneous substitution: every binding is applied to the original
    /// polynomial; unbound variables pass through.
    Polynomial substitute(const std::map<VarId, Polynomial>& bindings) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Polynomial term = constant(c);
            for (const auto& [v, e] : m) {
                auto it = bindings.find(v);
                if (it == bindings.end())
                    term = term * variable(v).pow(e);
                else
                    term = term * it->second.pow(e);
            }
            out += term;
        }
        return out;
    }

    /// Conjugate coefficients and swap every variable with its partner.
    Polynomial conj() const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Monomial swapped;
            swapped.reserve(m.size());
            for (const auto& [v, e] : m) swapped.emplace_back(v.conjugate(), e);
            out.add_term(canonical_monomial(std::move(swapped)), conj_coeff(c));
        }
        return out;
    }

    Polynomial differentiate(VarId v) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            for (size_t j = 0; j < m.size(); ++j) {
                if (!(m[j].first == v)) continue;
                Monomial dm = m;
                unsigned e = dm[j].second;
                if (e == 1)
                    dm.erase(dm.begin() + static_cast<long>(j));
                else
                    dm[j].second = e - 1;
                out.add_term(std::move(dm), c * K(static_cast<long long>(e)));
            }
        }
        return out;
    }

    /// Exact value of the polynomial; every variable must be bound.
    K evaluate(const std::map<VarId, K>& assignment) const {
        K total(0);
        for (const auto& [m, c] : terms_) {
            K v = c;
            for (const auto& [var, e] : m) {
                auto it = assignment.find(var);
                if (it == assignment.end())
                    throw DomainError("evaluate: no value bound for " + var.name());
                v = v * pow_scalar(it->second, e);
            }
            total = total + v;
        }
        return total;
    }

private:
    static K pow_scalar(K base, unsigned e) {
        K acc(1);
        while (e > 0) {
            if (e & 1u) acc = acc * base;
            e >>= 1u;
            if (e) base = base * base;
        }
        return acc;
    }

    void add_term(Monomial m, K c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    TermMap terms_;
};

using RationalPoly = Polynomial<Rational>;
using CycloPoly = Polynomial<Cyclotomic>;

/// ∂²p/∂u² + ∂²p/∂w² for the real bivariate pair.
template <class K>
Polynomial<K> laplacian(const Polynomial<K>& p) {
    return p.differentiate(var_u()).differentiate(var_u()) +
           p.differentiate(var_w()).differentiate(var_w());
}

inline CycloPoly to_cyclotomic(const RationalPoly& p) {
    CycloPoly out;
    for (const auto& [m, c] : p.terms())
        out += CycloPoly::monomial(m, Cyclotomic(c));
    return out;
}

/// u -> (z + zbar)/2, w -> (z - zbar)/(2i) with i = zeta_L^{L/4}.
/// Input is a real bivariate polynomial in u, w; the ambient order L
/// must be divisible by 4 so the coefficient field contains i.
inline CycloPoly complexify(const CycloPoly& p, unsigned L) {
    if (L % 4 != 0) throw DomainError("complexify needs an ambient order divisible by 4");
    Cyclotomic i = zeta(L, static_cast<long long>(L / 4));
    Cyclotomic half(rat(1, 2));
    CycloPoly z = CycloPoly::variable(var_z());
    CycloPoly zb = CycloPoly::variable(var_zbar());
    std::map<VarId, CycloPoly> bind{
        {var_u(), half * (z + zb)},
        {var_w(), (half / i) * (z - zb)},
    };
    return p.substitute(bind);
}

/// z -> u + i*w, zbar -> u - i*w; exact inverse of complexify.
inline CycloPoly realize(const CycloPoly& q, unsigned L) {
    if (L % 4 != 0) throw DomainError("realize needs an ambient order divisible by 4");
    Cyclotomic i = zeta(L, static_cast<long long>(L / 4));
    CycloPoly u = CycloPoly::variable(var_u());
    CycloPoly w = CycloPoly::variable(var_w());
    std::map<VarId, CycloPoly> bind{
        {var_z(), u + i * w},
        {var_zbar(), u - i * w},
    };
    return q.substitute(bind);
}

} // namespace feqlab
