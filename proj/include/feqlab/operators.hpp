#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "feqlab/polynomial.hpp"

namespace feqlab {

/// Problem instance: N is the order of the mean / difference, d the real
/// dimension. All scalars live in Q(zeta_L) with L = lcm(2N, 4), which
/// simultaneously houses theta = zeta_L^{L/N} (primitive N-th root),
/// eta = zeta_L^{L/(2N)} (primitive 2N-th root, eta^2 = theta,
/// eta^N = -1) and i = zeta_L^{L/4}. coefficient_order folds the order of
/// the input's coefficients into L so they embed alongside theta and eta.
struct EquationParams {
    unsigned N;
    unsigned d;
    unsigned L;

    explicit EquationParams(unsigned order, unsigned dim = 1, unsigned coefficient_order = 1)
        : N(order), d(dim), L(std::lcm(std::lcm(2 * order, 4u), coefficient_order)) {
        if (order < 1 || dim < 1)
            throw DomainError("equation parameters need N >= 1 and d >= 1");
        if (coefficient_order < 1) throw DomainError("coefficient order must be at least 1");
    }

    Cyclotomic theta(long long k = 1) const {
        return zeta(L, k * static_cast<long long>(L / N));
    }
    Cyclotomic eta(long long k = 1) const {
        return zeta(L, k * static_cast<long long>(L / (2 * N)));
    }
    Cyclotomic imag_unit() const { return zeta(L, static_cast<long long>(L / 4)); }
};

namespace detail {

inline void require_complex_input(const CycloPoly& f, const char* op) {
    for (VarId v : f.vars())
        if (v.kind != VarKind::Z && v.kind != VarKind::Zbar)
            throw DomainError(std::string(op) + ": input must use only z and zbar, found " +
                              v.name());
}

template <class K>
void require_real_input(const Polynomial<K>& f, unsigned d, const char* op) {
    for (VarId v : f.vars()) {
        if (v.kind == VarKind::Coord) {
            if (v.index < 1 || v.index > d)
                throw DomainError(std::string(op) + ": coordinate " + v.name() +
                                  " exceeds dimension " + std::to_string(d));
        } else if (v.kind != VarKind::Step && v.kind != VarKind::FamilyStep) {
            throw DomainError(std::string(op) + ": input must be real-form, found " + v.name());
        }
    }
}

} // namespace detail

/// Average of f over the N rotated points x + theta^k * (scale * y):
/// (1/N) sum_k f(x + theta^k scale y). The plain average has scale 1;
/// scale eta gives the second Haruki average.
inline CycloPoly knw_average(const CycloPoly& f, const EquationParams& params,
                             const Cyclotomic& scale = Cyclotomic(1)) {
    detail::require_complex_input(f, "knw_average");
    CycloPoly x = CycloPoly::variable(var_x());
    CycloPoly xb = CycloPoly::variable(var_xbar());
    CycloPoly y = CycloPoly::variable(var_y());
    CycloPoly yb = CycloPoly::variable(var_ybar());
    Cyclotomic sc = scale.order() == params.L ? scale : scale.lift_to(params.L);
    CycloPoly total;
    for (unsigned k = 0; k < params.N; ++k) {
        std::map<VarId, CycloPoly> bind{
            {var_z(), x + (params.theta(k) * sc) * y},
            {var_zbar(), xb + (params.theta(-static_cast<long long>(k)) * sc.conj()) * yb},
        };
        total += f.substitute(bind);
    }
    return Cyclotomic(rat(1, params.N)) * total;
}

/// H_y(f) - f(x): zero exactly when f satisfies the mean-value equation.
inline CycloPoly knw_defect(const CycloPoly& f, const EquationParams& params) {
    detail::require_complex_input(f, "knw_defect");
    std::map<VarId, CycloPoly> rename{
        {var_z(), CycloPoly::variable(var_x())},
        {var_zbar(), CycloPoly::variable(var_xbar())},
    };
    return knw_average(f, params) - f.substitute(rename);
}

/// H_y(f) - H_{eta y}(f): zero exactly when the two rotated averages agree.
inline CycloPoly haruki_defect(const CycloPoly& f, const EquationParams& params) {
    detail::require_complex_input(f, "haruki_defect");
    return knw_average(f, params) - knw_average(f, params, params.eta());
}

/// f(a z + b); the conjugate variable moves by the conjugated scalars.
inline CycloPoly affine_transform(const CycloPoly& f, const Cyclotomic& a, const Cyclotomic& b) {
    std::map<VarId, CycloPoly> bind{
        {var_z(), a * CycloPoly::variable(var_z()) + CycloPoly::constant(b)},
        {var_zbar(), a.conj() * CycloPoly::variable(var_zbar()) + CycloPoly::constant(b.conj())},
    };
    return f.substitute(bind);
}

/// Componentwise x_i -> a_i x_i + b_i.
template <class K>
Polynomial<K> real_affine_transform(const Polynomial<K>& f, const std::vector<Rational>& a,
                                    const std::vector<Rational>& b) {
    if (a.size() != b.size())
        throw DomainError("real affine transform: scale and shift vectors differ in length");
    detail::require_real_input(f, static_cast<unsigned>(a.size()), "real_affine_transform");
    std::map<VarId, Polynomial<K>> bind;
    for (unsigned i = 1; i <= a.size(); ++i) {
        bind.emplace(coord(i), K(a[i - 1]) * Polynomial<K>::variable(coord(i)) +
                                   Polynomial<K>::constant(K(b[i - 1])));
    }
    return f.substitute(bind);
}

/// A step for difference operators: either a concrete rational vector or a
/// symbolic one. Symbolic family 0 uses the plain variables h1..hd; family
/// r >= 1 uses the indexed variables h[r]1..h[r]d.
struct Step {
    static Step symbolic(unsigned family = 0) {
        Step s;
        s.symbolic_ = true;
        s.family_ = family;
        return s;
    }
    static Step concrete(std::vector<Rational> v) {
        Step s;
        s.symbolic_ = false;
        s.values_ = std::move(v);
        return s;
    }

    bool is_symbolic() const { return symbolic_; }
    unsigned family() const { return family_; }
    const std::vector<Rational>& values() const { return values_; }

    /// The step's i-th component as a polynomial (1-based coordinate).
    template <class K>
    Polynomial<K> component(unsigned i) const {
        if (symbolic_) {
            VarId v = family_ == 0 ? step(i) : family_step(family_, i);
            return Polynomial<K>::variable(v);
        }
        if (i < 1 || i > values_.size())
            throw DomainError("step component out of range");
        return Polynomial<K>::constant(K(values_[i - 1]));
    }

private:
    bool symbolic_ = true;
    unsigned family_ = 0;
    std::vector<Rational> values_;
};

/// Delta_h^N f = sum_{k=0}^{N} C(N,k) (-1)^{N-k} f(x + k h) over coordinates
/// x1..xd. A concrete step must have exactly d components.
template <class K>
Polynomial<K> forward_difference(const Polynomial<K>& f, unsigned N, const Step& h, unsigned d) {
    if (N < 1) throw DomainError("forward difference needs N >= 1");
    if (d < 1) throw DomainError("forward difference needs d >= 1");
    if (!h.is_symbolic() && h.values().size() != d)
        throw DomainError("forward difference: step length differs from dimension");
    detail::require_real_input(f, d, "forward_difference");
    Polynomial<K> total;
    for (unsigned k = 0; k <= N; ++k) {
        std::map<VarId, Polynomial<K>> bind;
        for (unsigned i = 1; i <= d; ++i) {
            bind.emplace(coord(i),
                         Polynomial<K>::variable(coord(i)) +
                             K(static_cast<long long>(k)) * h.template component<K>(i));
        }
        K weight{Rational(binomial(N, k) * ((N - k) % 2 == 0 ? 1 : -1))};
        total += weight * f.substitute(bind);
    }
    return total;
}

/// Delta_{h_1 ... h_s} f: composition of single forward differences, one per
/// step. A symbolic step with family 0 is assigned the family matching its
/// 1-based position so distinct steps stay independent.
template <class K>
Polynomial<K> mixed_difference(const Polynomial<K>& f, const std::vector<Step>& steps,
                               unsigned d) {
    if (steps.empty()) throw DomainError("mixed difference needs at least one step");
    Polynomial<K> acc = f;
    for (size_t r = steps.size(); r >= 1; --r) {
        Step s = steps[r - 1];
        if (s.is_symbolic() && s.family() == 0 && steps.size() > 1)
            s = Step::symbolic(static_cast<unsigned>(r));
        acc = forward_difference(acc, 1, s, d);
    }
    return acc;
}

/// Right-hand side of the identity expressing a mixed difference through
/// equal-step s-th differences: sum over eps in {0,1}^s of (-1)^{|eps|}
/// [Delta^s with step alpha_eps f](x + beta_eps), where
/// alpha_eps = -sum_r eps_r h_r / r and beta_eps = sum_r eps_r h_r.
template <class K>
Polynomial<K> djokovic_rhs(const Polynomial<K>& f, const std::vector<std::vector<Rational>>& steps,
                           unsigned d) {
    if (steps.empty()) throw DomainError("identity needs at least one step");
    for (const auto& h : steps)
        if (h.size() != d) throw DomainError("identity: step length differs from dimension");
    detail::require_real_input(f, d, "djokovic_rhs");
    const size_t s = steps.size();
    Polynomial<K> total;
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        std::vector<Rational> alpha(d, Rational(0));
        std::vector<Rational> beta(d, Rational(0));
        int bits = 0;
        for (size_t r = 1; r <= s; ++r) {
            if (!(mask >> (r - 1) & 1u)) continue;
            ++bits;
            for (unsigned i = 0; i < d; ++i) {
                alpha[i] -= steps[r - 1][i] / Rational(static_cast<long long>(r));
                beta[i] += steps[r - 1][i];
            }
        }
        Polynomial<K> term =
            forward_difference(f, static_cast<unsigned>(s), Step::concrete(alpha), d);
        std::map<VarId, Polynomial<K>> shift;
        for (unsigned i = 1; i <= d; ++i) {
            shift.emplace(coord(i), Polynomial<K>::variable(coord(i)) +
                                        Polynomial<K>::constant(K(beta[i - 1])));
        }
        term = term.substitute(shift);
        if (bits % 2 == 1) term = -term;
        total += term;
    }
    return total;
}

/// Exact equality of the mixed difference and its equal-step expansion.
template <class K>
bool djokovic_check(const Polynomial<K>& f, const std::vector<std::vector<Rational>>& steps,
                    unsigned d) {
    std::vector<Step> mixed;
    mixed.reserve(steps.size());
    for (const auto& h : steps) mixed.push_back(Step::concrete(h));
    return mixed_difference(f, mixed, d) == djokovic_rhs(f, steps, d);
}

} // namespace feqlab
