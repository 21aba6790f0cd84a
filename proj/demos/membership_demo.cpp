// Walks the exact membership oracles: builds a few polynomials, asks each
// solution space about them, and prints the monomial basis it certifies.

#include <iostream>

#include <feqlab/parser.hpp>
#include <feqlab/spaces.hpp>

using namespace feqlab;

namespace {

void report(const std::string& expr, unsigned N) {
    ParsedComplex p = parse_complex(expr);
    EquationParams params(N, 1, p.order);
    CycloPoly f = lift_coefficients(p.poly, params.L);
    std::cout << expr << " at N=" << N << ":\n";
    std::cout << "  two-average solution: " << (haruki_membership(f, params) ? "yes" : "no")
              << "\n";
    std::cout << "  one-average solution: " << (knw_membership(f, params) ? "yes" : "no")
              << "\n";
    CycloPoly defect = haruki_defect(f, params);
    if (!defect.is_zero()) std::cout << "  two-average defect: " << format_complex(defect) << "\n";
}

} // namespace

int main() {
    report("z^2*zbar^2", 3);
    report("z*zbar", 2);
    report("(1+2*i)*z^2 - zbar", 3);

    std::cout << "\nbasis of the N=3 two-average space:\n ";
    for (const Monomial& m : solution_basis(Equation::Haruki, 3))
        std::cout << " " << format_complex(CycloPoly::monomial(m, Cyclotomic(1)));
    std::cout << "\nbasis of the N=3 one-average space:\n ";
    for (const Monomial& m : solution_basis(Equation::Knw, 3))
        std::cout << " " << format_complex(CycloPoly::monomial(m, Cyclotomic(1)));
    std::cout << "\n";
    return 0;
}
