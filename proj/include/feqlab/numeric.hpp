#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feqlab/operators.hpp"
#include "feqlab/spaces.hpp"

namespace feqlab {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;
using RealFn = std::function<double(const std::vector<double>&)>;

inline Complex root_of_unity(unsigned long long num, unsigned long long den);

// zeta_L -> exp(2*pi*i/L).
inline Complex to_float(const Cyclotomic& a) {
    Complex acc(0.0, 0.0);
    const std::vector<Rational>& cs = a.coeffs();
    for (std::size_t j = 0; j < cs.size(); ++j) {
        if (cs[j].is_zero()) continue;
        acc += cs[j].to_double() * root_of_unity(j, a.order());
    }
    return acc;
}

inline double to_float(const Rational& q) { return q.to_double(); }

namespace numeric_detail {

inline Complex cpow(Complex base, unsigned e) {
    Complex acc(1.0, 0.0);
    while (e != 0) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline double rpow(double base, unsigned e) {
    double acc = 1.0;
    while (e != 0) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

} // namespace numeric_detail

inline Complex evaluate_numeric(const CycloPoly& p, const std::map<VarId, Complex>& binding) {
    Complex acc(0.0, 0.0);
    for (const auto& [m, c] : p.terms()) {
        Complex term = to_float(c);
        for (const auto& [v, e] : m) {
            auto it = binding.find(v);
            if (it == binding.end())
                throw DomainError("evaluate_numeric: unbound variable " + v.name());
            term *= numeric_detail::cpow(it->second, e);
        }
        acc += term;
    }
    return acc;
}

inline double evaluate_numeric(const RationalPoly& p, const std::map<VarId, double>& binding) {
    double acc = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double term = to_float(c);
        for (const auto& [v, e] : m) {
            auto it = binding.find(v);
            if (it == binding.end())
                throw DomainError("evaluate_numeric: unbound variable " + v.name());
            term *= numeric_detail::rpow(it->second, e);
        }
        acc += term;
    }
    return acc;
}

// f as a function of one complex argument; zbar is bound to the conjugate.
inline ComplexFn complex_function(const CycloPoly& f) {
    detail::require_complex_input(f, "complex_function");
    return [f](Complex z) {
        return evaluate_numeric(f, {{var_z(), z}, {var_zbar(), std::conj(z)}});
    };
}

inline RealFn real_function(const RationalPoly& f, unsigned d) {
    for (const VarId& v : f.vars())
        if (v.kind != VarKind::Coord || v.index > d)
            throw DomainError("real_function: input must use coordinates x1..x" +
                              std::to_string(d) + " only");
    return [f, d](const std::vector<double>& x) {
        std::map<VarId, double> binding;
        for (unsigned i = 0; i < d; ++i) binding[coord(i + 1)] = x[i];
        return evaluate_numeric(f, binding);
    };
}

// Non-polynomial test functions available to the CLI by name.
inline ComplexFn named_complex_function(const std::string& name) {
    if (name == "exp") return [](Complex z) { return std::exp(z); };
    if (name == "sin") return [](Complex z) { return std::sin(z); };
    if (name == "cos") return [](Complex z) { return std::cos(z); };
    throw DomainError("unknown named function '" + name + "'");
}

struct GridSpec {
    double min = -2.0;
    double max = 2.0;
    unsigned count = 9;

    void validate() const {
        if (count < 2) throw DomainError("grid needs at least 2 points per axis");
        if (!(min < max)) throw DomainError("grid range must satisfy min < max");
    }

    std::vector<double> points() const {
        validate();
        std::vector<double> pts(count);
        for (unsigned j = 0; j < count; ++j)
            pts[j] = min + (max - min) * j / (count - 1);
        return pts;
    }
};

struct ResidualReport {
    Equation equation = Equation::Knw;
    unsigned N = 1;
    unsigned d = 1;
    double max_abs_residual = 0.0;
    std::vector<double> witness;
    std::size_t samples_evaluated = 0;
    double tolerance = 1e-9;
    std::vector<std::vector<double>> poisoned;
};

struct Witness {
    std::vector<double> point;
    double residual;
};

// Axis labels for scan coordinates, in witness order.
inline std::vector<std::string> scan_axes(Equation eq, unsigned d) {
    if (eq != Equation::Frechet) return {"re_x", "im_x", "re_y", "im_y"};
    std::vector<std::string> axes;
    for (unsigned i = 1; i <= d; ++i) axes.push_back("x" + std::to_string(i));
    for (unsigned i = 1; i <= d; ++i) axes.push_back("h" + std::to_string(i));
    return axes;
}

// exp(2*pi*i*num/den), with quarter turns snapped to their exact values so
// grids built from representable points keep exact residual ties.
inline Complex root_of_unity(unsigned long long num, unsigned long long den) {
    num %= den;
    if ((4 * num) % den == 0) {
        switch ((4 * num) / den) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / den);
}

inline Complex theta_float(unsigned N, unsigned k) { return root_of_unity(k, N); }

inline Complex knw_residual(const ComplexFn& f, unsigned N, Complex x, Complex y) {
    Complex acc(0.0, 0.0);
    for (unsigned k = 0; k < N; ++k) acc += f(x + theta_float(N, k) * y);
    return acc / static_cast<double>(N) - f(x);
}

inline Complex haruki_residual(const ComplexFn& f, unsigned N, Complex x, Complex y) {
    Complex acc(0.0, 0.0);
    for (unsigned k = 0; k < N; ++k)
        acc += f(x + theta_float(N, k) * y) - f(x + root_of_unity(2 * k + 1, 2 * N) * y);
    return acc / static_cast<double>(N);
}

// side1 - side2 of the two power-sum forms; real by construction.
inline double nagumo_residual(const ComplexFn& f, unsigned N, Complex x, Complex y) {
    Complex f0 = f(x);
    double side1 = 0.0;
    double side2 = 0.0;
    for (unsigned k = 0; k < N; ++k) {
        Complex fk = f(x + theta_float(N, k) * y);
        side1 += std::norm(fk) - std::norm(f0);
        side2 += std::norm(fk - f0);
    }
    return side1 - side2;
}

inline double frechet_residual(const RealFn& f, unsigned N, const std::vector<double>& x,
                               const std::vector<double>& h) {
    std::vector<double> arg(x.size());
    double acc = 0.0;
    for (unsigned k = 0; k <= N; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) arg[i] = x[i] + k * h[i];
        double c = binomial(N, k).convert_to<double>();
        acc += ((N - k) % 2 != 0 ? -c : c) * f(arg);
    }
    return acc;
}

namespace numeric_detail {

// Visits the full grid in lexicographic index order (axis 0 slowest), so the
// retained witness is the lexicographically smallest maximizing index.
template <class ResidualAt>
ResidualReport scan_core(Equation eq, unsigned N, unsigned d, unsigned axes,
                         const GridSpec& grid, double tol, ResidualAt&& residual_at) {
    std::vector<double> pts = grid.points();
    ResidualReport rep;
    rep.equation = eq;
    rep.N = N;
    rep.d = d;
    rep.tolerance = tol;
    std::size_t total = 1;
    for (unsigned a = 0; a < axes; ++a) total *= pts.size();
    std::vector<double> coords(axes);
    bool have = false;
    for (std::size_t s = 0; s < total; ++s) {
        std::size_t rem = s;
        for (unsigned a = axes; a-- > 0;) {
            coords[a] = pts[rem % pts.size()];
            rem /= pts.size();
        }
        double r = residual_at(coords);
        ++rep.samples_evaluated;
        if (!std::isfinite(r)) {
            rep.poisoned.push_back(coords);
        } else if (!have || r > rep.max_abs_residual) {
            have = true;
            rep.max_abs_residual = r;
            rep.witness = coords;
        }
    }
    return rep;
}

} // namespace numeric_detail

inline ResidualReport residual_scan(const ComplexFn& f, Equation eq, unsigned N,
                                    const GridSpec& grid = {}, double tol = 1e-9) {
    if (N < 1) throw DomainError("equation order must be at least 1");
    if (eq == Equation::Frechet)
        throw DomainError("frechet scans take a real-form function and dimension");
    return numeric_detail::scan_core(
        eq, N, 1, 4, grid, tol, [&](const std::vector<double>& c) -> double {
            Complex x(c[0], c[1]);
            Complex y(c[2], c[3]);
            switch (eq) {
                case Equation::Knw: return std::abs(knw_residual(f, N, x, y));
                case Equation::Haruki: return std::abs(haruki_residual(f, N, x, y));
                default: return std::abs(nagumo_residual(f, N, x, y));
            }
        });
}

inline ResidualReport residual_scan(const RealFn& f, unsigned N, unsigned d,
                                    const GridSpec& grid = {}, double tol = 1e-9) {
    if (N < 1) throw DomainError("equation order must be at least 1");
    if (d < 1) throw DomainError("dimension must be at least 1");
    return numeric_detail::scan_core(
        Equation::Frechet, N, d, 2 * d, grid, tol, [&](const std::vector<double>& c) {
            std::vector<double> x(c.begin(), c.begin() + d);
            std::vector<double> h(c.begin() + d, c.end());
            return std::abs(frechet_residual(f, N, x, h));
        });
}

inline ResidualReport residual_scan(const CycloPoly& f, Equation eq, unsigned N,
                                    const GridSpec& grid = {}, double tol = 1e-9) {
    return residual_scan(complex_function(f), eq, N, grid, tol);
}

inline ResidualReport residual_scan(const RationalPoly& f, unsigned N, unsigned d,
                                    const GridSpec& grid = {}, double tol = 1e-9) {
    return residual_scan(real_function(f, d), N, d, grid, tol);
}

// Lexicographically first maximizing sample beyond tol, or absent when the
// whole grid stays within it.
inline std::optional<Witness> falsify(const ComplexFn& f, Equation eq, unsigned N,
                                      const GridSpec& grid = {}, double tol = 1e-9) {
    ResidualReport rep = residual_scan(f, eq, N, grid, tol);
    if (rep.max_abs_residual > tol) return Witness{rep.witness, rep.max_abs_residual};
    return std::nullopt;
}

inline std::optional<Witness> falsify(const RealFn& f, unsigned N, unsigned d,
                                      const GridSpec& grid = {}, double tol = 1e-9) {
    ResidualReport rep = residual_scan(f, N, d, grid, tol);
    if (rep.max_abs_residual > tol) return Witness{rep.witness, rep.max_abs_residual};
    return std::nullopt;
}

inline std::optional<Witness> falsify(const CycloPoly& f, Equation eq, unsigned N,
                                      const GridSpec& grid = {}, double tol = 1e-9) {
    return falsify(complex_function(f), eq, N, grid, tol);
}

inline std::optional<Witness> falsify(const RationalPoly& f, unsigned N, unsigned d,
                                      const GridSpec& grid = {}, double tol = 1e-9) {
    return falsify(real_function(f, d), N, d, grid, tol);
}

} // namespace feqlab
