#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "feqlab/numeric.hpp"
#include "feqlab/parser.hpp"
#include "feqlab/spaces.hpp"

namespace feqlab {
namespace cli {

using nlohmann::json;

namespace cdetail {

constexpr const char* kSchema = "feqlab/1";

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == delim) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline Rational rational_literal(const std::string& raw) {
    std::string t = trim(raw);
    bool neg = !t.empty() && t[0] == '-';
    if (neg) t = t.substr(1);
    std::vector<std::string> parts = split(t, '/');
    if (parts.size() > 2 || !all_digits(parts[0]) ||
        (parts.size() == 2 && !all_digits(parts[1])))
        throw DomainError("bad rational literal '" + trim(raw) + "'");
    BigInt num(parts[0]);
    BigInt den = parts.size() == 2 ? BigInt(parts[1]) : BigInt(1);
    if (den == 0) throw DomainError("bad rational literal '" + trim(raw) + "': zero denominator");
    return Rational(neg ? -num : num, den);
}

inline std::vector<Rational> rational_vector(const std::string& raw) {
    std::vector<Rational> v;
    for (const std::string& part : split(raw, ',')) v.push_back(rational_literal(part));
    return v;
}

inline std::vector<std::vector<Rational>> step_vectors(const std::string& raw) {
    std::vector<std::vector<Rational>> vecs;
    for (const std::string& part : split(raw, ';')) vecs.push_back(rational_vector(part));
    if (vecs.empty()) throw DomainError("--steps needs at least one vector");
    for (const auto& v : vecs)
        if (v.size() != vecs.front().size())
            throw DomainError("step vectors must share a dimension");
    return vecs;
}

inline unsigned unsigned_literal(const std::string& raw, const char* what) {
    std::string t = trim(raw);
    if (!all_digits(t) || t.size() > 9)
        throw DomainError(std::string("bad ") + what + " '" + t + "'");
    return static_cast<unsigned>(std::stoul(t));
}

inline GridSpec grid_literal(const std::string& raw) {
    std::vector<std::string> parts = split(raw, ',');
    if (parts.size() != 3) throw DomainError("--grid expects min,max,count");
    GridSpec g;
    try {
        std::size_t used = 0;
        g.min = std::stod(trim(parts[0]), &used);
        if (used != trim(parts[0]).size()) throw std::invalid_argument("");
        g.max = std::stod(trim(parts[1]), &used);
        if (used != trim(parts[1]).size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
        throw DomainError("--grid expects numeric min,max");
    }
    g.count = unsigned_literal(parts[2], "grid count");
    g.validate();
    return g;
}

inline std::pair<unsigned, std::vector<Corner>> corner_points(const std::string& raw,
                                                              bool allow_inf) {
    std::vector<Corner> corners;
    for (const std::string& tuple : split(raw, ';')) {
        Corner c;
        for (const std::string& comp : split(tuple, ',')) {
            std::string t = trim(comp);
            if (t == "INF") {
                if (!allow_inf) throw DomainError("INF is only valid in corner positions");
                c.push_back(ExtNat::infinity());
            } else {
                c.push_back(ExtNat::finite(unsigned_literal(t, "coordinate")));
            }
        }
        corners.push_back(std::move(c));
    }
    unsigned dim = static_cast<unsigned>(corners.front().size());
    for (const Corner& c : corners)
        if (c.size() != dim) throw DomainError("tuples must share a dimension");
    return {dim, corners};
}

inline json corner_json(const Corner& c) {
    json arr = json::array();
    for (const ExtNat& e : c) {
        if (e.is_infinite())
            arr.push_back("INF");
        else
            arr.push_back(e.value());
    }
    return arr;
}

inline json base(const std::string& command) {
    return json{{"schema", kSchema}, {"command", command}};
}

inline int fail(std::ostream& out, const std::string& message,
                std::optional<std::size_t> position = std::nullopt) {
    json e = base("error");
    e.erase("command");
    e["error"] = json{{"message", message}};
    if (position) e["error"]["position"] = *position;
    out << e.dump(2) << "\n";
    return 2;
}

inline unsigned required_order(int n) {
    if (n < 1) throw DomainError("--N must be at least 1");
    return static_cast<unsigned>(n);
}

inline Equation equation_from(const std::string& name, bool allow_nagumo) {
    if (name == "knw") return Equation::Knw;
    if (name == "haruki") return Equation::Haruki;
    if (name == "frechet") return Equation::Frechet;
    if (name == "nagumo" && allow_nagumo) return Equation::Nagumo;
    throw DomainError("unknown equation '" + name + "'");
}

} // namespace cdetail

// Parses argv-style arguments (without the program name), writes one JSON
// document to out, an optional human summary to err, and returns the exit
// code: 0 positive verdict or successful computation, 1 clean negative
// verdict, 2 usage/parse/domain error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cdetail::base;
    using cdetail::fail;

    CLI::App app{"exact workbench for root-of-unity averaging equations"};
    app.require_subcommand(1);
    bool pretty = false;

    std::string check_equation, check_expr;
    int check_N = 0, check_d = 0;
    CLI::App* check = app.add_subcommand("check", "membership of a polynomial in a solution space");
    check->add_option("--equation", check_equation, "knw | haruki | frechet")->required();
    check->add_option("--N", check_N, "equation order")->required();
    check->add_option("--d", check_d, "real dimension (frechet only)");
    check->add_option("--expr", check_expr, "polynomial expression")->required();
    check->add_flag("--pretty", pretty, "human summary on stderr");

    std::string expand_operator, expand_expr, expand_steps;
    int expand_N = 0;
    CLI::App* expand = app.add_subcommand("expand", "apply an operator and print the result");
    expand->add_option("--operator", expand_operator,
                       "knw-average | knw-defect | haruki-defect | forward-diff | mixed-diff | "
                       "djokovic-rhs")
        ->required();
    expand->add_option("--N", expand_N, "order / symbolic step count")->required();
    expand->add_option("--steps", expand_steps, "semicolon-separated rational vectors");
    expand->add_option("--expr", expand_expr, "polynomial expression")->required();
    expand->add_flag("--pretty", pretty, "human summary on stderr");

    std::string verify_equation;
    int verify_N = 0, verify_d = 0, verify_cap = -1;
    CLI::App* verify = app.add_subcommand("verify", "sweep monomials against the predicted space");
    verify->add_option("--equation", verify_equation, "knw | haruki | frechet")->required();
    verify->add_option("--N", verify_N, "equation order")->required();
    verify->add_option("--d", verify_d, "real dimension (frechet only)");
    verify->add_option("--max-degree", verify_cap, "sweep cap")->required();
    verify->add_flag("--pretty", pretty, "human summary on stderr");

    std::string djokovic_expr, djokovic_steps;
    CLI::App* djokovic = app.add_subcommand("djokovic", "compare a mixed difference with its expansion");
    djokovic->add_option("--expr", djokovic_expr, "polynomial expression")->required();
    djokovic->add_option("--steps", djokovic_steps, "semicolon-separated rational vectors")
        ->required();
    djokovic->add_flag("--pretty", pretty, "human summary on stderr");

    std::string corners_mode, corners_points, corners_cap;
    CLI::App* corners = app.add_subcommand("corners", "downward-closed exponent set utilities");
    corners->add_option("mode", corners_mode, "close | minimal")
        ->required()
        ->check(CLI::IsMember({"close", "minimal"}));
    corners->add_option("--points", corners_points, "semicolon-separated tuples; INF allowed")
        ->required();
    corners->add_option("--cap", corners_cap, "per-axis bounds for closing infinite corners");
    corners->add_flag("--pretty", pretty, "human summary on stderr");

    std::string scan_equation, scan_expr, scan_function, scan_grid;
    int scan_N = 0;
    double scan_tol = 1e-9;
    CLI::App* scan = app.add_subcommand("scan", "numeric residual scan over a sample grid");
    scan->add_option("--equation", scan_equation, "knw | haruki | nagumo | frechet")->required();
    scan->add_option("--N", scan_N, "equation order")->required();
    scan->add_option("--expr", scan_expr, "polynomial expression");
    scan->add_option("--function", scan_function, "named non-polynomial function (exp, sin, cos)");
    scan->add_option("--grid", scan_grid, "min,max,count per axis (default -2,2,9)");
    scan->add_option("--tol", scan_tol, "absolute residual tolerance (default 1e-9)");
    scan->add_flag("--pretty", pretty, "human summary on stderr");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail(out, std::string("usage: ") + e.what());
    }

    try {
        if (check->parsed()) {
            unsigned N = cdetail::required_order(check_N);
            json j = base("check");
            j["equation"] = check_equation;
            j["N"] = N;
            j["expr"] = check_expr;
            bool member = false;
            std::string defect_text;
            if (check_equation == "knw" || check_equation == "haruki") {
                if (check_d != 0) throw DomainError("--d applies to frechet only");
                ParsedComplex p = parse_complex(check_expr);
                EquationParams params(N, 1, p.order);
                CycloPoly f = lift_coefficients(p.poly, params.L);
                CycloPoly defect =
                    check_equation == "knw" ? knw_defect(f, params) : haruki_defect(f, params);
                member = defect.is_zero();
                if (!member) defect_text = format_complex(defect);
            } else if (check_equation == "frechet") {
                std::optional<unsigned> dopt;
                if (check_d != 0) {
                    if (check_d < 1) throw DomainError("--d must be at least 1");
                    dopt = static_cast<unsigned>(check_d);
                }
                ParsedReal p = parse_real(check_expr, dopt);
                j["d"] = p.dimension;
                RationalPoly defect = forward_difference(p.poly, N, Step::symbolic(), p.dimension);
                member = defect.is_zero();
                if (!member) defect_text = format_real(defect);
            } else {
                throw DomainError("unknown equation '" + check_equation + "' for check");
            }
            j["member"] = member;
            if (!member) j["defect"] = defect_text;
            out << j.dump(2) << "\n";
            if (pretty)
                err << check_equation << " N=" << N << ": "
                    << (member ? "member" : "non-member (defect: " + defect_text + ")") << "\n";
            return member ? 0 : 1;
        }

        if (expand->parsed()) {
            unsigned N = cdetail::required_order(expand_N);
            bool have_steps = expand->count("--steps") > 0;
            json j = base("expand");
            j["operator"] = expand_operator;
            j["N"] = N;
            j["expr"] = expand_expr;
            if (have_steps) j["steps"] = expand_steps;
            std::string result;
            if (expand_operator == "knw-average" || expand_operator == "knw-defect" ||
                expand_operator == "haruki-defect") {
                if (have_steps) throw DomainError("--steps applies to difference operators only");
                ParsedComplex p = parse_complex(expand_expr);
                EquationParams params(N, 1, p.order);
                CycloPoly f = lift_coefficients(p.poly, params.L);
                CycloPoly r = expand_operator == "knw-average" ? knw_average(f, params)
                              : expand_operator == "knw-defect" ? knw_defect(f, params)
                                                                : haruki_defect(f, params);
                result = format_complex(r);
            } else if (expand_operator == "forward-diff") {
                if (have_steps) {
                    std::vector<std::vector<Rational>> vecs = cdetail::step_vectors(expand_steps);
                    if (vecs.size() != 1)
                        throw DomainError("forward-diff takes exactly one step vector");
                    unsigned d = static_cast<unsigned>(vecs[0].size());
                    ParsedReal p = parse_real(expand_expr, d);
                    j["d"] = d;
                    result = format_real(forward_difference(p.poly, N, Step::concrete(vecs[0]), d));
                } else {
                    ParsedReal p = parse_real(expand_expr);
                    j["d"] = p.dimension;
                    result = format_real(
                        forward_difference(p.poly, N, Step::symbolic(), p.dimension));
                }
            } else if (expand_operator == "mixed-diff") {
                std::vector<Step> steps;
                unsigned d;
                ParsedReal p = parse_real(expand_expr);
                if (have_steps) {
                    std::vector<std::vector<Rational>> vecs = cdetail::step_vectors(expand_steps);
                    d = static_cast<unsigned>(vecs[0].size());
                    p = parse_real(expand_expr, d);
                    for (auto& v : vecs) steps.push_back(Step::concrete(std::move(v)));
                } else {
                    d = p.dimension;
                    for (unsigned s = 0; s < N; ++s) steps.push_back(Step::symbolic());
                }
                j["d"] = d;
                result = format_real(mixed_difference(p.poly, steps, d));
            } else if (expand_operator == "djokovic-rhs") {
                if (!have_steps) throw DomainError("djokovic-rhs requires --steps");
                std::vector<std::vector<Rational>> vecs = cdetail::step_vectors(expand_steps);
                unsigned d = static_cast<unsigned>(vecs[0].size());
                ParsedReal p = parse_real(expand_expr, d);
                j["d"] = d;
                result = format_real(djokovic_rhs(p.poly, vecs, d));
            } else {
                throw DomainError("unknown operator '" + expand_operator + "'");
            }
            j["result"] = result;
            out << j.dump(2) << "\n";
            if (pretty) err << expand_operator << ": " << result << "\n";
            return 0;
        }

        if (verify->parsed()) {
            unsigned N = cdetail::required_order(verify_N);
            Equation eq = cdetail::equation_from(verify_equation, false);
            unsigned d = 1;
            if (eq == Equation::Frechet) {
                if (verify_d != 0 && verify_d < 1) throw DomainError("--d must be at least 1");
                d = verify_d == 0 ? 1 : static_cast<unsigned>(verify_d);
            } else if (verify_d != 0) {
                throw DomainError("--d applies to frechet only");
            }
            if (verify_cap < 0) throw DomainError("--max-degree must be nonnegative");
            CharacterizationReport rep =
                characterize(eq, N, d, static_cast<unsigned>(verify_cap));
            json j = base("verify");
            j["equation"] = verify_equation;
            j["N"] = N;
            if (eq == Equation::Frechet) j["d"] = d;
            j["max_degree"] = verify_cap;
            j["agreement"] = rep.agreement;
            json verdicts = json::array();
            std::size_t mismatches = 0;
            for (const MonomialVerdict& v : rep.verdicts) {
                verdicts.push_back(json{{"exponents", v.exponents},
                                        {"member", v.member},
                                        {"predicted", v.predicted}});
                if (v.member != v.predicted) ++mismatches;
            }
            j["verdicts"] = verdicts;
            out << j.dump(2) << "\n";
            if (pretty) {
                if (rep.agreement)
                    err << verify_equation << " N=" << N << ": agreement over "
                        << rep.verdicts.size() << " monomials\n";
                else
                    err << verify_equation << " N=" << N << ": " << mismatches << " of "
                        << rep.verdicts.size() << " monomials disagree\n";
            }
            return rep.agreement ? 0 : 1;
        }

        if (djokovic->parsed()) {
            std::vector<std::vector<Rational>> vecs = cdetail::step_vectors(djokovic_steps);
            unsigned d = static_cast<unsigned>(vecs[0].size());
            ParsedReal p = parse_real(djokovic_expr, d);
            std::vector<Step> steps;
            for (const auto& v : vecs) steps.push_back(Step::concrete(v));
            RationalPoly lhs = mixed_difference(p.poly, steps, d);
            RationalPoly rhs = djokovic_rhs(p.poly, vecs, d);
            bool holds = lhs == rhs;
            json j = base("djokovic");
            j["expr"] = djokovic_expr;
            j["steps"] = djokovic_steps;
            j["d"] = d;
            j["lhs"] = format_real(lhs);
            j["rhs"] = format_real(rhs);
            j["identity_holds"] = holds;
            out << j.dump(2) << "\n";
            if (pretty)
                err << (holds ? "identity holds: " + format_real(lhs)
                              : "identity FAILS: lhs=" + format_real(lhs) +
                                    " rhs=" + format_real(rhs))
                    << "\n";
            return holds ? 0 : 1;
        }

        if (corners->parsed()) {
            json j = base("corners");
            j["mode"] = corners_mode;
            j["points"] = corners_points;
            if (corners_mode == "close") {
                auto [dim, cs] = cdetail::corner_points(corners_points, true);
                CornerSet set(dim, cs);
                std::vector<unsigned> caps(dim, 0);
                if (corners->count("--cap") > 0) {
                    std::vector<std::string> parts = cdetail::split(corners_cap, ',');
                    if (parts.size() != dim)
                        throw DomainError("--cap must list one bound per axis");
                    for (unsigned i = 0; i < dim; ++i)
                        caps[i] = cdetail::unsigned_literal(parts[i], "cap");
                    j["cap"] = caps;
                } else {
                    for (const Corner& c : set.corners())
                        for (unsigned i = 0; i < dim; ++i) {
                            if (c[i].is_infinite())
                                throw DomainError(
                                    "--cap is required when corners contain INF");
                            caps[i] = std::max(caps[i], c[i].value());
                        }
                }
                json cj = json::array();
                for (const Corner& c : set.corners()) cj.push_back(cdetail::corner_json(c));
                j["corners"] = cj;
                std::set<std::vector<unsigned>> closed = downward_closure(set, caps);
                json tuples = json::array();
                for (const std::vector<unsigned>& t : closed) tuples.push_back(t);
                j["tuples"] = tuples;
                out << j.dump(2) << "\n";
                if (pretty) err << "close: " << closed.size() << " tuples\n";
            } else {
                auto [dim, cs] = cdetail::corner_points(corners_points, false);
                std::set<std::vector<unsigned>> s;
                for (const Corner& c : cs) {
                    std::vector<unsigned> t;
                    for (const ExtNat& e : c) t.push_back(e.value());
                    s.insert(t);
                }
                CornerSet minimal = minimal_corners(s, dim);
                json cj = json::array();
                for (const Corner& c : minimal.corners()) cj.push_back(cdetail::corner_json(c));
                j["corners"] = cj;
                out << j.dump(2) << "\n";
                if (pretty) err << "minimal: " << minimal.corners().size() << " corners\n";
            }
            return 0;
        }

        if (scan->parsed()) {
            unsigned N = cdetail::required_order(scan_N);
            Equation eq = cdetail::equation_from(scan_equation, true);
            bool have_expr = scan->count("--expr") > 0;
            bool have_fn = scan->count("--function") > 0;
            if (have_expr == have_fn)
                throw DomainError("scan needs exactly one of --expr and --function");
            GridSpec grid;
            if (scan->count("--grid") > 0) grid = cdetail::grid_literal(scan_grid);
            if (!(scan_tol > 0)) throw DomainError("--tol must be positive");
            json j = base("scan");
            j["equation"] = scan_equation;
            j["N"] = N;
            if (have_expr) j["expr"] = scan_expr;
            if (have_fn) j["function"] = scan_function;
            j["grid"] = json{{"min", grid.min}, {"max", grid.max}, {"count", grid.count}};
            j["tol"] = scan_tol;
            ResidualReport rep;
            unsigned d = 1;
            if (eq == Equation::Frechet) {
                if (have_fn) throw DomainError("--function applies to complex equations only");
                ParsedReal p = parse_real(scan_expr);
                d = p.dimension;
                j["d"] = d;
                rep = residual_scan(p.poly, N, d, grid, scan_tol);
            } else {
                ComplexFn fn = have_fn ? named_complex_function(scan_function)
                                       : complex_function(parse_complex(scan_expr).poly);
                rep = residual_scan(fn, eq, N, grid, scan_tol);
            }
            if (!rep.poisoned.empty() && rep.poisoned.size() == rep.samples_evaluated)
                throw DomainError("every sample evaluated non-finite");
            bool solves = rep.max_abs_residual <= scan_tol;
            std::vector<std::string> axes = scan_axes(eq, d);
            json witness = json::object();
            for (std::size_t a = 0; a < axes.size(); ++a) witness[axes[a]] = rep.witness[a];
            j["max_abs_residual"] = rep.max_abs_residual;
            j["solves"] = solves;
            j["witness"] = witness;
            j["samples_evaluated"] = rep.samples_evaluated;
            json poisoned = json::array();
            for (const std::vector<double>& pt : rep.poisoned) poisoned.push_back(pt);
            j["poisoned"] = poisoned;
            out << j.dump(2) << "\n";
            if (pretty) {
                err << "max |residual| = " << rep.max_abs_residual << " over "
                    << rep.samples_evaluated << " samples";
                if (!rep.poisoned.empty()) err << " (" << rep.poisoned.size() << " poisoned)";
                err << "; " << (solves ? "solves within" : "exceeds") << " tol " << scan_tol
                    << "\n";
            }
            return solves ? 0 : 1;
        }

        return fail(out, "usage: no subcommand given");
    } catch (const ParseError& e) {
        return fail(out, e.what(), e.position);
    } catch (const DomainError& e) {
        return fail(out, e.what());
    } catch (const std::exception& e) {
        return fail(out, std::string("internal error: ") + e.what());
    }
}

} // namespace cli
} // namespace feqlab
