#pragma once

#include <set>
#include <string>
#include <vector>

#include "feqlab/operators.hpp"

namespace feqlab {

enum class Equation { Knw, Haruki, Nagumo, Frechet };

inline std::string equation_name(Equation e) {
    switch (e) {
        case Equation::Knw: return "knw";
        case Equation::Haruki: return "haruki";
        case Equation::Nagumo: return "nagumo";
        case Equation::Frechet: return "frechet";
    }
    return "?";
}

/// Natural number extended with a top element.
struct ExtNat {
    static ExtNat infinity() { return ExtNat(true, 0); }
    static ExtNat finite(unsigned v) { return ExtNat(false, v); }

    bool is_infinite() const { return inf_; }
    unsigned value() const {
        if (inf_) throw DomainError("infinite corner coordinate has no finite value");
        return v_;
    }

    friend bool operator==(const ExtNat& a, const ExtNat& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator!=(const ExtNat& a, const ExtNat& b) { return !(a == b); }
    friend bool operator<=(const ExtNat& a, const ExtNat& b) {
        if (b.inf_) return true;
        if (a.inf_) return false;
        return a.v_ <= b.v_;
    }
    friend bool operator<(const ExtNat& a, const ExtNat& b) { return a <= b && a != b; }

private:
    ExtNat(bool inf, unsigned v) : inf_(inf), v_(v) {}
    bool inf_;
    unsigned v_;
};

using Corner = std::vector<ExtNat>;

/// Finite set of extended-natural corners, normalized to the antichain of
/// componentwise-maximal elements.
class CornerSet {
public:
    CornerSet(unsigned dimension, std::vector<Corner> corners) : d_(dimension) {
        if (d_ < 1) throw DomainError("corner set dimension must be >= 1");
        for (const auto& c : corners)
            if (c.size() != d_)
                throw DomainError("corner length differs from the set's dimension");
        for (const auto& c : corners) {
            bool dominated = false;
            for (const auto& other : corners) {
                if (&other == &c) continue;
                if (leq(c, other) && c != other) { dominated = true; break; }
                if (c == other && &other < &c) { dominated = true; break; }
            }
            if (!dominated) corners_.push_back(c);
        }
        std::sort(corners_.begin(), corners_.end(), lex_less);
    }

    unsigned dimension() const { return d_; }
    const std::vector<Corner>& corners() const { return corners_; }

    static bool leq(const Corner& a, const Corner& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (!(a[i] <= b[i])) return false;
        return true;
    }

private:
    static bool lex_less(const Corner& a, const Corner& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            auto key = [](const ExtNat& e) {
                return std::pair(e.is_infinite(), e.is_infinite() ? 0u : e.value());
            };
            if (key(a[i]) != key(b[i])) return key(a[i]) < key(b[i]);
        }
        return false;
    }

    unsigned d_;
    std::vector<Corner> corners_;
};

/// All finite tuples dominated by some corner. A finite corner coordinate
/// bounds its axis directly; an infinite one is truncated at the cap.
inline std::set<std::vector<unsigned>> downward_closure(const CornerSet& c,
                                                        const std::vector<unsigned>& cap) {
    if (cap.size() != c.dimension())
        throw DomainError("cap length differs from the corner set's dimension");
    std::set<std::vector<unsigned>> out;
    for (const Corner& corner : c.corners()) {
        std::vector<unsigned> bound(c.dimension());
        for (unsigned i = 0; i < c.dimension(); ++i)
            bound[i] = corner[i].is_infinite() ? cap[i] : corner[i].value();
        std::vector<unsigned> t(c.dimension(), 0);
        while (true) {
            out.insert(t);
            unsigned i = 0;
            while (i < c.dimension() && t[i] == bound[i]) t[i++] = 0;
            if (i == c.dimension()) break;
            ++t[i];
        }
    }
    return out;
}

/// The corners generating a finite downward-closed set: its maximal
/// elements. Rejects sets that are not downward closed.
inline CornerSet minimal_corners(const std::set<std::vector<unsigned>>& s, unsigned dimension) {
    for (const auto& t : s) {
        if (t.size() != dimension)
            throw DomainError("tuple length differs from the stated dimension");
        for (unsigned i = 0; i < dimension; ++i) {
            if (t[i] == 0) continue;
            std::vector<unsigned> below = t;
            --below[i];
            if (!s.count(below))
                throw DomainError("input set is not downward closed");
        }
    }
    std::vector<Corner> corners;
    for (const auto& t : s) {
        bool maximal = true;
        for (unsigned i = 0; i < dimension && maximal; ++i) {
            std::vector<unsigned> above = t;
            ++above[i];
            if (s.count(above)) maximal = false;
        }
        if (!maximal) continue;
        Corner c;
        c.reserve(dimension);
        for (unsigned v : t) c.push_back(ExtNat::finite(v));
        corners.push_back(std::move(c));
    }
    return CornerSet(dimension, std::move(corners));
}

inline bool haruki_membership(const CycloPoly& f, const EquationParams& params) {
    return haruki_defect(f, params).is_zero();
}

inline bool knw_membership(const CycloPoly& f, const EquationParams& params) {
    return knw_defect(f, params).is_zero();
}

/// Zero N-th difference with a fully symbolic step: exact "for all h".
template <class K>
bool frechet_membership(const Polynomial<K>& f, unsigned N, unsigned d) {
    return forward_difference(f, N, Step::symbolic(), d).is_zero();
}

/// Monomial bases of the three solution spaces:
/// haruki -> z^i zbar^j for i, j <= N-1; knw -> the two pure-power rays;
/// frechet -> x^alpha with |alpha| <= N-1.
inline std::vector<Monomial> solution_basis(Equation eq, unsigned N, unsigned d = 1) {
    if (N < 1) throw DomainError("solution basis needs N >= 1");
    std::vector<Monomial> out;
    switch (eq) {
        case Equation::Haruki:
            for (unsigned i = 0; i < N; ++i)
                for (unsigned j = 0; j < N; ++j)
                    out.push_back(canonical_monomial({{var_z(), i}, {var_zbar(), j}}));
            break;
        case Equation::Knw:
            for (unsigned i = 0; i < N; ++i)
                out.push_back(canonical_monomial({{var_z(), i}}));
            for (unsigned j = 1; j < N; ++j)
                out.push_back(canonical_monomial({{var_zbar(), j}}));
            break;
        case Equation::Frechet: {
            if (d < 1) throw DomainError("solution basis needs d >= 1");
            std::vector<unsigned> alpha(d, 0);
            auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
                if (i == d) {
                    Monomial m;
                    for (unsigned k = 0; k < d; ++k)
                        if (alpha[k]) m.emplace_back(coord(k + 1), alpha[k]);
                    out.push_back(std::move(m));
                    return;
                }
                for (unsigned e = 0; e <= left; ++e) {
                    alpha[i] = e;
                    self(self, i + 1, left - e);
                }
                alpha[i] = 0;
            };
            rec(rec, 0, N - 1);
            break;
        }
        case Equation::Nagumo:
            throw DomainError("no solution basis is defined for the nagumo equation");
    }
    return out;
}

struct MonomialVerdict {
    std::vector<unsigned> exponents; // (i, j) for z^i zbar^j, alpha for x^alpha
    bool member = false;             // exact defect oracle
    bool predicted = false;          // predicted rule
};

struct CharacterizationReport {
    Equation equation = Equation::Knw;
    unsigned N = 1;
    unsigned d = 1;
    unsigned degree_cap = 0;
    std::vector<MonomialVerdict> verdicts; // sorted by exponent vector
    bool agreement = true;
};

/// Sweep all monomials under the cap and compare the exact membership
/// oracle with the predicted rule. Complex equations sweep the
/// per-variable box (cap+1)^2; the real equation sweeps |alpha| <= cap.
inline CharacterizationReport characterize(Equation eq, unsigned N, unsigned d,
                                           unsigned degree_cap) {
    if (N < 1) throw DomainError("characterize needs N >= 1");
    if (degree_cap < N) throw DomainError("characterize needs degree_cap >= N");
    CharacterizationReport report;
    report.equation = eq;
    report.N = N;
    report.d = (eq == Equation::Frechet) ? d : 1;
    report.degree_cap = degree_cap;

    if (eq == Equation::Haruki || eq == Equation::Knw) {
        EquationParams params(N);
        for (unsigned i = 0; i <= degree_cap; ++i) {
            for (unsigned j = 0; j <= degree_cap; ++j) {
                CycloPoly f = CycloPoly::monomial({{var_z(), i}, {var_zbar(), j}},
                                                  Cyclotomic(1));
                MonomialVerdict v;
                v.exponents = {i, j};
                if (eq == Equation::Haruki) {
                    v.member = haruki_membership(f, params);
                    v.predicted = std::max(i, j) <= N - 1;
                } else {
                    v.member = knw_membership(f, params);
                    v.predicted = std::min(i, j) == 0 && std::max(i, j) <= N - 1;
                }
                report.agreement = report.agreement && v.member == v.predicted;
                report.verdicts.push_back(std::move(v));
            }
        }
        return report;
    }
    if (eq == Equation::Frechet) {
        if (d < 1) throw DomainError("characterize needs d >= 1");
        std::vector<unsigned> alpha(d, 0);
        auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
            if (i == d) {
                Monomial m;
                for (unsigned k = 0; k < d; ++k)
                    if (alpha[k]) m.emplace_back(coord(k + 1), alpha[k]);
                RationalPoly f = RationalPoly::monomial(m, Rational(1));
                MonomialVerdict v;
                v.exponents = alpha;
                v.member = frechet_membership(f, N, d);
                unsigned total = 0;
                for (unsigned e : alpha) total += e;
                v.predicted = total <= N - 1;
                report.agreement = report.agreement && v.member == v.predicted;
                report.verdicts.push_back(std::move(v));
                return;
            }
            for (unsigned e = 0; e <= left; ++e) {
                alpha[i] = e;
                self(self, i + 1, left - e);
            }
            alpha[i] = 0;
        };
        rec(rec, 0, degree_cap);
        return report;
    }
    throw DomainError("characterize covers the knw, haruki and frechet equations only");
}

} // namespace feqlab
