#include "feqlab/operators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace feqlab;

namespace {

CycloPoly z_pow(unsigned n) { return CycloPoly::variable(var_z()).pow(n); }
CycloPoly zbar_pow(unsigned n) { return CycloPoly::variable(var_zbar()).pow(n); }

CycloPoly cvar(VarId v) { return CycloPoly::variable(v); }
RationalPoly rvar(VarId v) { return RationalPoly::variable(v); }

RationalPoly x_alpha(const std::vector<unsigned>& alpha) {
    RationalPoly p = RationalPoly::constant(Rational(1));
    for (unsigned i = 0; i < alpha.size(); ++i)
        p = p * rvar(coord(i + 1)).pow(alpha[i]);
    return p;
}

std::vector<Rational> unit_vec(unsigned d, unsigned i) {
    std::vector<Rational> e(d, Rational(0));
    e[i - 1] = Rational(1);
    return e;
}

CycloPoly random_complex_poly(std::mt19937& rng, unsigned L, int max_terms = 4,
                              unsigned max_exp = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<long long> coeff(-4, 4);
    std::uniform_int_distribution<unsigned> expo(0, max_exp);
    CycloPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        unsigned ez = expo(rng), eb = expo(rng);
        if (ez) m.emplace_back(var_z(), ez);
        if (eb) m.emplace_back(var_zbar(), eb);
        Cyclotomic c = Cyclotomic(coeff(rng)) + Cyclotomic(Rational(coeff(rng))) * zeta(L, L / 4);
        p += CycloPoly::monomial(m, c);
    }
    return p;
}

RationalPoly random_real_poly(std::mt19937& rng, unsigned d, unsigned max_total_degree,
                              int max_terms = 4) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<long long> coeff(-5, 5);
    std::uniform_int_distribution<long long> den(1, 3);
    std::uniform_int_distribution<unsigned> expo(0, max_total_degree);
    RationalPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        unsigned budget = max_total_degree;
        for (unsigned i = 1; i <= d; ++i) {
            unsigned e = expo(rng) % (budget + 1);
            budget -= e;
            if (e) m.emplace_back(coord(i), e);
        }
        p += RationalPoly::monomial(m, rat(coeff(rng), den(rng)));
    }
    return p;
}

Rational random_small_rational(std::mt19937& rng, long long hi = 5) {
    std::uniform_int_distribution<long long> num(-hi, hi);
    std::uniform_int_distribution<long long> den(1, hi);
    return rat(num(rng), den(rng));
}

} // namespace

TEST(EquationParams, RootsHaveStatedOrders) {
    for (unsigned N = 1; N <= 8; ++N) {
        EquationParams params(N);
        EXPECT_EQ(params.L % (2 * N), 0u);
        EXPECT_EQ(params.L % 4, 0u);
        Cyclotomic th = params.theta();
        Cyclotomic et = params.eta();
        EXPECT_EQ(th, params.theta(1));
        // theta is a primitive N-th root, eta a primitive 2N-th root.
        Cyclotomic pow(1);
        for (unsigned k = 1; k < N; ++k) {
            pow = pow * th;
            EXPECT_NE(pow, Cyclotomic(1)) << "N=" << N << " k=" << k;
        }
        EXPECT_EQ(pow * th, Cyclotomic(1));
        EXPECT_EQ(et * et, th);
        Cyclotomic etaN(1);
        for (unsigned k = 0; k < N; ++k) etaN = etaN * et;
        EXPECT_EQ(etaN, Cyclotomic(-1));
        Cyclotomic i = params.imag_unit();
        EXPECT_EQ(i * i, Cyclotomic(-1));
    }
    EXPECT_THROW(EquationParams(0), DomainError);
    EXPECT_THROW(EquationParams(2, 0), DomainError);
}

TEST(KnwAverage, PurePowerOfOrderN) {
    // Average of z^N picks up the full power of y: x^N + y^N.
    for (unsigned N : {1u, 2u, 3u, 5u}) {
        EquationParams params(N);
        CycloPoly expect = cvar(var_x()).pow(N) + cvar(var_y()).pow(N);
        EXPECT_EQ(knw_average(z_pow(N), params), expect) << "N=" << N;
    }
}

TEST(KnwAverage, PurePowerBelowOrderIsFixed) {
    EquationParams params(4);
    EXPECT_EQ(knw_average(z_pow(3), params), cvar(var_x()).pow(3));
}

TEST(KnwAverage, ModulusSquaredAtOrderTwo) {
    // Direct expansion oracle with theta = -1:
    //   ((x+y)(xb+yb) + (x-y)(xb-yb)) / 2 = x*xb + y*yb.
    CycloPoly x = cvar(var_x()), xb = cvar(var_xbar());
    CycloPoly y = cvar(var_y()), yb = cvar(var_ybar());
    CycloPoly oracle =
        Cyclotomic(rat(1, 2)) * ((x + y) * (xb + yb) + (x - y) * (xb - yb));
    EXPECT_EQ(oracle, x * xb + y * yb);
    EquationParams params(2);
    EXPECT_EQ(knw_average(z_pow(1) * zbar_pow(1), params), oracle);
}

TEST(KnwAverage, RejectsForeignVariables) {
    EquationParams params(2);
    EXPECT_THROW(knw_average(cvar(var_x()), params), DomainError);
    EXPECT_THROW(knw_average(cvar(var_u()), params), DomainError);
    EXPECT_THROW(knw_defect(cvar(var_y()), params), DomainError);
}

TEST(KnwDefect, SolutionsAndNonSolutions) {
    for (unsigned N = 1; N <= 6; ++N) {
        EquationParams params(N);
        if (N >= 2)
            EXPECT_TRUE(knw_defect(z_pow(N - 1), params).is_zero()) << "N=" << N;
        EXPECT_EQ(knw_defect(z_pow(N), params), cvar(var_y()).pow(N)) << "N=" << N;
        EXPECT_TRUE(knw_defect(CycloPoly::constant(Cyclotomic(3)), params).is_zero());
    }
}

TEST(HarukiDefect, BalancedModulusPowerIsSolution) {
    EquationParams params(3);
    CycloPoly f = (z_pow(1) * zbar_pow(1)).pow(params.N - 1);
    EXPECT_TRUE(haruki_defect(f, params).is_zero());
}

TEST(HarukiDefect, PurePowerAtOrderTwo) {
    EquationParams params(2);
    CycloPoly expect = Cyclotomic(2) * cvar(var_y()).pow(2);
    EXPECT_EQ(haruki_defect(z_pow(2), params), expect);
}

TEST(HarukiDefect, ConstantsAreSolutions) {
    for (unsigned N = 1; N <= 5; ++N) {
        EquationParams params(N);
        EXPECT_TRUE(haruki_defect(CycloPoly::constant(zeta(4) + 2), params).is_zero());
    }
}

TEST(AffineTransform, IdentityAndLinear) {
    std::mt19937 rng(301);
    EquationParams params(3);
    for (int t = 0; t < 20; ++t) {
        CycloPoly f = random_complex_poly(rng, params.L);
        EXPECT_EQ(affine_transform(f, Cyclotomic(1), Cyclotomic(0)), f);
    }
    Cyclotomic a = zeta(4) + 2, b = Cyclotomic(rat(1, 3));
    EXPECT_EQ(affine_transform(cvar(var_z()), a, b),
              a * cvar(var_z()) + CycloPoly::constant(b));
}

TEST(AffineTransform, ConjugateChannelUsesConjugatedScalars) {
    Cyclotomic i = zeta(4);
    CycloPoly got = affine_transform(cvar(var_zbar()), i, Cyclotomic(1));
    CycloPoly expect = (-i) * cvar(var_zbar()) + CycloPoly::constant(Cyclotomic(1));
    EXPECT_EQ(got, expect);
}

TEST(RealAffineTransform, PinnedCases) {
    RationalPoly f = rvar(coord(1)) * rvar(coord(2));
    std::vector<Rational> ones{Rational(1), Rational(1)};
    std::vector<Rational> zeros{Rational(0), Rational(0)};
    EXPECT_EQ(real_affine_transform(f, ones, zeros), f);

    std::vector<Rational> a{Rational(2), Rational(3)};
    EXPECT_EQ(real_affine_transform(f, a, zeros), Rational(6) * f);

    RationalPoly g = rvar(coord(1)) * rvar(coord(1));
    RationalPoly expect =
        g + Rational(2) * rvar(coord(1)) + RationalPoly::constant(Rational(1));
    EXPECT_EQ(real_affine_transform(g, {Rational(1)}, {Rational(1)}), expect);

    EXPECT_THROW(real_affine_transform(f, {Rational(1)}, zeros), DomainError);
    EXPECT_THROW(real_affine_transform(f, {Rational(1)}, {Rational(0)}), DomainError);
}

TEST(ForwardDifference, FirstDifferenceOfCoordinate) {
    RationalPoly got = forward_difference(rvar(coord(1)), 1, Step::symbolic(), 1);
    EXPECT_EQ(got, rvar(step(1)));
}

TEST(ForwardDifference, NthDifferenceOfNthPowerIsFactorial) {
    for (unsigned N = 1; N <= 6; ++N) {
        for (unsigned d = 1; d <= 3; ++d) {
            for (unsigned i = 1; i <= d; ++i) {
                RationalPoly f = rvar(coord(i)).pow(N);
                RationalPoly got = forward_difference(f, N, Step::concrete(unit_vec(d, i)), d);
                EXPECT_EQ(got, RationalPoly::constant(Rational(factorial(N))))
                    << "N=" << N << " d=" << d << " i=" << i;
            }
        }
    }
}

TEST(ForwardDifference, SecondDifferenceOfAffineVanishes) {
    RationalPoly f = Rational(3) * rvar(coord(1)) + RationalPoly::constant(Rational(7));
    EXPECT_TRUE(forward_difference(f, 2, Step::symbolic(), 1).is_zero());
}

TEST(ForwardDifference, ValidatesInput) {
    EXPECT_THROW(forward_difference(RationalPoly::variable(coord(2)), 1, Step::symbolic(), 1),
                 DomainError);
    EXPECT_THROW(
        forward_difference(rvar(coord(1)), 1, Step::concrete({Rational(1), Rational(2)}), 1),
        DomainError);
    CycloPoly complex_f = CycloPoly::variable(var_z());
    EXPECT_THROW(forward_difference(complex_f, 1, Step::symbolic(), 1), DomainError);
}

TEST(ForwardDifference, ReducesTotalDegree) {
    // First difference drops every monomial's total degree by at least one.
    for (unsigned d = 1; d <= 3; ++d) {
        std::vector<std::vector<unsigned>> alphas;
        for (unsigned a = 0; a <= 4; ++a)
            for (unsigned b = 0; b <= (d >= 2 ? 4u - std::min(4u, a) : 0u); ++b)
                for (unsigned c = 0; c <= (d >= 3 ? 2u : 0u); ++c) {
                    std::vector<unsigned> alpha{a};
                    if (d >= 2) alpha.push_back(b);
                    if (d >= 3) alpha.push_back(c);
                    alphas.push_back(alpha);
                }
        // Degree in the coordinates alone; symbolic step variables are
        // parameters, not part of the bound.
        auto coord_degree = [](const RationalPoly& p) {
            int best = -1;
            for (const auto& [m, c] : p.terms()) {
                int t = 0;
                for (const auto& [v, e] : m)
                    if (v.kind == VarKind::Coord) t += static_cast<int>(e);
                best = std::max(best, t);
            }
            return best;
        };
        std::mt19937 rng(308 + d);
        for (const auto& alpha : alphas) {
            RationalPoly f = x_alpha(alpha);
            if (f.total_degree() < 1) continue;
            RationalPoly df = forward_difference(f, 1, Step::symbolic(), d);
            EXPECT_LE(coord_degree(df), f.total_degree() - 1);
            std::vector<Rational> h(d);
            for (auto& c : h) c = random_small_rational(rng, 3);
            RationalPoly dc = forward_difference(f, 1, Step::concrete(h), d);
            EXPECT_LE(dc.total_degree(), f.total_degree() - 1);
        }
    }
}

TEST(MixedDifference, ProductOfCoordinates) {
    RationalPoly f = rvar(coord(1)) * rvar(coord(2));
    std::vector<Step> steps{Step::concrete(unit_vec(2, 1)), Step::concrete(unit_vec(2, 2))};
    EXPECT_EQ(mixed_difference(f, steps, 2), RationalPoly::constant(Rational(1)));
}

TEST(MixedDifference, RepeatedUnitStepsGiveFactorialProduct) {
    for (unsigned d = 1; d <= 3; ++d) {
        std::vector<std::vector<unsigned>> alphas;
        if (d == 1) alphas = {{1}, {2}, {3}, {4}};
        if (d == 2) alphas = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};
        if (d == 3) alphas = {{1, 1, 1}, {2, 1, 2}, {3, 2, 1}};
        for (const auto& alpha : alphas) {
            RationalPoly f = x_alpha(alpha);
            std::vector<Step> steps;
            Rational expect(1);
            for (unsigned i = 1; i <= d; ++i) {
                for (unsigned r = 0; r < alpha[i - 1]; ++r)
                    steps.push_back(Step::concrete(unit_vec(d, i)));
                expect *= Rational(factorial(alpha[i - 1]));
            }
            EXPECT_EQ(mixed_difference(f, steps, d), RationalPoly::constant(expect));
        }
    }
}

TEST(MixedDifference, OrderIndependent) {
    std::mt19937 rng(302);
    for (int t = 0; t < 40; ++t) {
        unsigned d = 1 + t % 3;
        RationalPoly f = random_real_poly(rng, d, 4);
        std::vector<Step> steps;
        unsigned s = 2 + t % 2;
        for (unsigned r = 0; r < s; ++r) {
            std::vector<Rational> v(d);
            for (auto& c : v) c = random_small_rational(rng, 3);
            steps.push_back(Step::concrete(v));
        }
        std::vector<Step> reversed(steps.rbegin(), steps.rend());
        ASSERT_EQ(mixed_difference(f, steps, d), mixed_difference(f, reversed, d));
    }
}

TEST(MixedDifference, SymbolicFamiliesStayIndependent) {
    // Two symbolic steps must not collapse onto the same variables.
    RationalPoly f = rvar(coord(1)).pow(2);
    std::vector<Step> steps{Step::symbolic(), Step::symbolic()};
    RationalPoly got = mixed_difference(f, steps, 1);
    RationalPoly expect =
        Rational(2) * (RationalPoly::variable(family_step(1, 1)) *
                       RationalPoly::variable(family_step(2, 1)));
    EXPECT_EQ(got, expect);
    // Reversing symbolic steps relabels nothing: same polynomial.
    std::vector<Step> rev(steps.rbegin(), steps.rend());
    EXPECT_EQ(mixed_difference(f, rev, 1), expect);
}

TEST(MixedDifference, MatchesSingleSymbolicDifferenceForOneStep) {
    std::mt19937 rng(303);
    for (int t = 0; t < 20; ++t) {
        RationalPoly f = random_real_poly(rng, 2, 3);
        EXPECT_EQ(mixed_difference(f, {Step::symbolic()}, 2),
                  forward_difference(f, 1, Step::symbolic(), 2));
    }
}

TEST(FixedVersusVariableStep, MonomialEquivalence) {
    // Symbolic N-th difference and N independent symbolic steps vanish on
    // exactly the same monomials: those of total degree <= N-1.
    for (unsigned N = 1; N <= 4; ++N) {
        for (unsigned d = 1; d <= 2; ++d) {
            unsigned cap = N + 2;
            for (unsigned a = 0; a <= cap; ++a) {
                for (unsigned b = 0; b <= (d == 2 ? cap - std::min(cap, a) : 0u); ++b) {
                    std::vector<unsigned> alpha{a};
                    if (d == 2) alpha.push_back(b);
                    RationalPoly f = x_alpha(alpha);
                    unsigned total = a + b;
                    bool fixed_zero =
                        forward_difference(f, N, Step::symbolic(), d).is_zero();
                    std::vector<Step> fam(N, Step::symbolic());
                    bool mixed_zero = mixed_difference(f, fam, d).is_zero();
                    EXPECT_EQ(fixed_zero, total < N) << "N=" << N << " total " << total;
                    EXPECT_EQ(mixed_zero, total < N) << "N=" << N << " total " << total;
                }
            }
        }
    }
}

TEST(Linearity, AllOperatorsAreLinear) {
    std::mt19937 rng(304);
    for (unsigned N : {2u, 3u}) {
        EquationParams params(N);
        for (int t = 0; t < 30; ++t) {
            CycloPoly f = random_complex_poly(rng, params.L);
            CycloPoly g = random_complex_poly(rng, params.L);
            Cyclotomic c =
                Cyclotomic(random_small_rational(rng)) + zeta(params.L, params.L / 4) * 2;
            ASSERT_EQ(knw_average(c * f + g, params),
                      c * knw_average(f, params) + knw_average(g, params));
            ASSERT_EQ(knw_defect(c * f + g, params),
                      c * knw_defect(f, params) + knw_defect(g, params));
            ASSERT_EQ(haruki_defect(c * f + g, params),
                      c * haruki_defect(f, params) + haruki_defect(g, params));
        }
    }
    for (int t = 0; t < 30; ++t) {
        unsigned d = 1 + t % 3;
        RationalPoly f = random_real_poly(rng, d, 3);
        RationalPoly g = random_real_poly(rng, d, 3);
        Rational c = random_small_rational(rng);
        ASSERT_EQ(forward_difference(c * f + g, 2, Step::symbolic(), d),
                  c * forward_difference(f, 2, Step::symbolic(), d) +
                      forward_difference(g, 2, Step::symbolic(), d));
        std::vector<Step> steps{Step::symbolic(), Step::symbolic()};
        ASSERT_EQ(mixed_difference(c * f + g, steps, d),
                  c * mixed_difference(f, steps, d) + mixed_difference(g, steps, d));
    }
}

TEST(Commutation, AverageOfTransformIsTransformOfScaledAverage) {
    // H_y(f(a z + b))(x) = H_{a y}(f) evaluated at a x + b; on the right
    // that is the substitution x -> a x + b, y -> a y (conjugates in step).
    std::mt19937 rng(305);
    for (unsigned N : {2u, 3u}) {
        EquationParams params(N);
        Cyclotomic i = params.imag_unit();
        for (int t = 0; t < 25; ++t) {
            CycloPoly f = random_complex_poly(rng, params.L, 3, 3);
            Cyclotomic a = Cyclotomic(random_small_rational(rng, 3)) +
                           i * Cyclotomic(random_small_rational(rng, 3));
            Cyclotomic b = Cyclotomic(random_small_rational(rng, 3)) +
                           i * Cyclotomic(random_small_rational(rng, 3));
            CycloPoly lhs = knw_average(affine_transform(f, a, b), params);
            std::map<VarId, CycloPoly> outer{
                {var_x(), a * CycloPoly::variable(var_x()) + CycloPoly::constant(b)},
                {var_xbar(),
                 a.conj() * CycloPoly::variable(var_xbar()) + CycloPoly::constant(b.conj())},
                {var_y(), a * CycloPoly::variable(var_y())},
                {var_ybar(), a.conj() * CycloPoly::variable(var_ybar())},
            };
            CycloPoly rhs = knw_average(f, params).substitute(outer);
            ASSERT_EQ(lhs, rhs) << "N=" << N;
        }
    }
}

TEST(EqualStepExpansion, SingleStepIsPlainDifference) {
    std::mt19937 rng(306);
    for (int t = 0; t < 25; ++t) {
        unsigned d = 1 + t % 2;
        RationalPoly f = random_real_poly(rng, d, 4);
        std::vector<Rational> h(d);
        for (auto& c : h) c = random_small_rational(rng, 4);
        RationalPoly rhs = djokovic_rhs(f, {h}, d);
        RationalPoly lhs = forward_difference(f, 1, Step::concrete(h), d);
        ASSERT_EQ(lhs, rhs);
    }
}

TEST(EqualStepExpansion, QuadraticWithIntegerSteps) {
    RationalPoly f = rvar(coord(1)).pow(2);
    std::vector<std::vector<Rational>> steps{{Rational(1)}, {Rational(2)}};
    EXPECT_EQ(djokovic_rhs(f, steps, 1), RationalPoly::constant(Rational(4)));
    EXPECT_EQ(mixed_difference(
                  f, {Step::concrete({Rational(1)}), Step::concrete({Rational(2)})}, 1),
              RationalPoly::constant(Rational(4)));
    EXPECT_TRUE(djokovic_check(f, steps, 1));
}

TEST(EqualStepExpansion, AnnihilatesConstants) {
    RationalPoly c = RationalPoly::constant(rat(5, 3));
    EXPECT_TRUE(djokovic_rhs(c, {{Rational(1)}, {Rational(2)}}, 1).is_zero());
}

TEST(EqualStepExpansion, IdentityHoldsOnRandomInstances) {
    std::mt19937 rng(307);
    for (int t = 0; t < 50; ++t) {
        unsigned d = 1 + t % 3;
        unsigned s = 1 + t % 4;
        RationalPoly f = random_real_poly(rng, d, 4);
        std::vector<std::vector<Rational>> steps;
        for (unsigned r = 0; r < s; ++r) {
            std::vector<Rational> h(d);
            for (auto& c : h) c = random_small_rational(rng, 5);
            steps.push_back(h);
        }
        ASSERT_TRUE(djokovic_check(f, steps, d)) << "trial " << t;
    }
}
