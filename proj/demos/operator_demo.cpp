// Shows the symbolic operators at work: root-of-unity averages, forward and
// mixed differences, the expansion identity, and corner-set geometry.

#include <iostream>

#include <feqlab/parser.hpp>
#include <feqlab/spaces.hpp>

using namespace feqlab;

int main() {
    EquationParams params(3);
    CycloPoly z3 = parse_complex("z^3").poly;
    std::cout << "average of z^3 over the cube roots: "
              << format_complex(knw_average(lift_coefficients(z3, params.L), params)) << "\n";
    std::cout << "same average with the step rotated half a sector: "
              << format_complex(
                     knw_average(lift_coefficients(z3, params.L), params, params.eta()))
              << "\n";

    RationalPoly cube = parse_real("x1^3").poly;
    std::cout << "third difference of x1^3, symbolic step: "
              << format_real(forward_difference(cube, 3, Step::symbolic(), 1)) << "\n";
    std::cout << "third difference of x1^3, unit step: "
              << format_real(forward_difference(cube, 3, Step::concrete({Rational(1)}), 1))
              << "\n";

    RationalPoly f = parse_real("x1^2*x2").poly;
    std::vector<std::vector<Rational>> steps{{Rational(1), Rational(0)},
                                             {rat(1, 2), Rational(1)}};
    std::cout << "expansion identity on x1^2*x2 with two rational steps: "
              << (djokovic_check(f, steps, 2) ? "holds" : "fails") << "\n";

    CornerSet rays(2, {{ExtNat::infinity(), ExtNat::finite(0)},
                       {ExtNat::finite(1), ExtNat::finite(1)}});
    std::cout << "tuples under two corners, capped at 3 per axis:";
    for (const std::vector<unsigned>& t : downward_closure(rays, {3, 3}))
        std::cout << " (" << t[0] << "," << t[1] << ")";
    std::cout << "\n";
    return 0;
}
