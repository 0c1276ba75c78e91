#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "courant/algebroid.hpp"
#include "courant/json_io.hpp"
#include "courant/poly.hpp"
#include "courant/scalar_expr.hpp"
#include "courant/tensorial.hpp"

namespace courant::cli {
namespace {

const std::array<std::string, 3> kUVNames{"u", "v", "w"};

std::string variant_name(Variant v) {
    return v == Variant::skew ? "skew" : "symmetric";
}

std::string symmetry_name(Symmetry s) {
    switch (s) {
        case Symmetry::skew: return "skew";
        case Symmetry::symmetric: return "symmetric";
        default: return "none";
    }
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileFormatError("cannot open '" + path + "'");
    return nlohmann::json::parse(in);
}

// A section argument is either inline JSON (starts with '{') or a file path.
nlohmann::json load_json_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return nlohmann::json::parse(spec);
    return load_json_file(spec);
}

void emit(const nlohmann::json& doc, std::ostream& out) {
    out << doc.dump(2) << "\n";
}

int cmd_check(const std::string& expr, bool symmetric, bool json, std::ostream& out,
              std::ostream& err) {
    const Variant v = symmetric ? Variant::symmetric : Variant::skew;
    const Poly3 p = parse_poly3(expr);
    const CriterionReport coef = coefficient_criterion(p, v);
    const VarietyReport var = variety_criterion(p, v);
    const CriterionReport divis = divisibility_criterion(p, v);

    const bool quotients_match =
        (coef.quotient.has_value() == divis.quotient.has_value()) &&
        (!coef.quotient || *coef.quotient == *divis.quotient);
    const bool agree = coef.tensorial == var.tensorial && var.tensorial == divis.tensorial &&
                       coef.violations == divis.violations && quotients_match;
    if (!agree) {
        err << "internal error: tensoriality criteria disagree on '" << expr << "'\n";
        return 3;
    }

    if (json) {
        nlohmann::json doc;
        doc["agree"] = true;
        doc["coefficient"] = criterion_report_to_json(coef);
        doc["divisibility"] = criterion_report_to_json(divis);
        doc["input"] = expr;
        doc["tensorial"] = coef.tensorial;
        doc["variant"] = variant_name(v);
        doc["variety"] = {{"A", to_string(var.A, kUVNames)},
                          {"B", to_string(var.B, kUVNames)},
                          {"C", to_string(var.C, kUVNames)},
                          {"tensorial", var.tensorial}};
        emit(doc, out);
    } else {
        if (coef.tensorial) {
            out << "tensorial: yes (quotient " << to_string(*coef.quotient) << ")\n";
        } else {
            const Violation& first = coef.violations.front();
            out << "tensorial: no; violated family " << first.family << " at (i=" << first.i
                << ",t=" << first.t << ")\n";
        }
        out << "criteria agree: yes\n";
    }
    return coef.tensorial ? 0 : 1;
}

int cmd_dim(int degree, bool symmetric, bool basis, bool json, std::ostream& out) {
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    const Variant v = symmetric ? Variant::symmetric : Variant::skew;
    const GradedComponent comp = graded_dimension(degree, v);

    if (json) {
        nlohmann::json doc;
        doc["degree"] = degree;
        doc["dim"] = comp.dim;
        doc["variant"] = variant_name(v);
        if (basis) {
            nlohmann::json arr = nlohmann::json::array();
            for (const Poly3& b : comp.basis) arr.push_back(to_string(b));
            doc["basis"] = arr;
        }
        emit(doc, out);
    } else {
        out << "degree " << degree << " (" << variant_name(v) << "): dim " << comp.dim << "\n";
        if (basis) {
            for (const Poly3& b : comp.basis) out << "  " << to_string(b) << "\n";
        }
    }
    return 0;
}

int cmd_shift(const std::string& expr, bool json, std::ostream& out) {
    const UniPoly m = parse_unipoly(expr);
    const Poly3 shifted = minimality_polynomial(m);
    if (json) {
        nlohmann::json doc;
        doc["convention"] = "plain multinomial expansion of m(x+y+z); no alternating sign";
        doc["input"] = expr;
        doc["shifted"] = to_string(shifted);
        emit(doc, out);
    } else {
        out << to_string(shifted) << "\n";
    }
    return 0;
}

int cmd_reduce(const std::string& expr, const std::string& min, bool json, std::ostream& out) {
    const Poly3 p = parse_poly3(expr);
    const UniPoly m = parse_unipoly(min);
    const Poly3 r = reduce_mod_minimal(p, m);
    if (json) {
        nlohmann::json doc;
        doc["input"] = expr;
        doc["modulus"] = min;
        doc["reduced"] = to_string(r);
        emit(doc, out);
    } else {
        out << to_string(r) << "\n";
    }
    return 0;
}

int cmd_polytens(const std::string& expr, const std::string& min, bool literal, bool json,
                 std::ostream& out) {
    const Poly3 p = parse_poly3(expr);
    const UniPoly m = parse_unipoly(min);
    const PolyTensMode mode = literal ? PolyTensMode::literal : PolyTensMode::modular;
    const PolyTensReport report = polynomially_tensorial(p, m, mode);

    if (json) {
        nlohmann::json doc;
        doc["input"] = expr;
        doc["mode"] = literal ? "literal" : "modular";
        doc["modulus"] = min;
        doc["ok"] = report.ok;
        doc["witness"] =
            report.witness ? nlohmann::json(to_string(*report.witness, kUVNames)) : nlohmann::json();
        emit(doc, out);
    } else {
        if (report.ok) {
            out << "polynomially tensorial: yes\n";
        } else {
            out << "polynomially tensorial: no; witness " << to_string(*report.witness, kUVNames)
                << "\n";
        }
    }
    return report.ok ? 0 : 1;
}

int cmd_algebroid_check(const std::string& file, int depth, bool json, std::ostream& out) {
    const AlgebroidData data = algebroid_from_json(load_json_file(file));
    const std::string mode =
        data.mode == AlgebroidMode::proto_courant ? "proto_courant" : "almost_leibniz";
    try {
        (void)Algebroid::build(data, depth);
    } catch (const AxiomError& e) {
        const AxiomReport& report = e.report;
        if (json) {
            nlohmann::json doc;
            doc["mode"] = mode;
            doc["valid"] = false;
            nlohmann::json arr = nlohmann::json::array();
            for (const AxiomViolation& v : report.violations) {
                arr.push_back({{"equation", v.equation},
                               {"i", v.i},
                               {"j", v.j},
                               {"k", v.k},
                               {"residual", to_string(v.residual, false)},
                               {"scaled", v.scaled}});
            }
            doc["violations"] = arr;
            emit(doc, out);
        } else {
            const AxiomViolation& first = report.violations.front();
            out << "algebroid: invalid; compatibility axiom fails (" << report.violations.size()
                << " residuals)\n";
            out << "first residual: equation " << first.equation << " at (" << first.i << ","
                << first.j << "," << first.k << ")" << (first.scaled ? " on scaled sections" : "")
                << ": " << to_string(first.residual) << "\n";
        }
        return 1;
    }
    if (json) {
        nlohmann::json doc;
        doc["mode"] = mode;
        doc["valid"] = true;
        doc["violations"] = nlohmann::json::array();
        emit(doc, out);
    } else {
        if (data.mode == AlgebroidMode::proto_courant) {
            out << "algebroid: valid (proto_courant)\n";
        } else {
            out << "algebroid: valid (almost_leibniz; compatibility axiom not required)\n";
        }
    }
    return 0;
}

int cmd_torsion(const std::string& file, const std::string& jfile, const std::string& xspec,
                const std::string& yspec, bool shifted, int depth, bool json, std::ostream& out) {
    const Algebroid alg = Algebroid::build(algebroid_from_json(load_json_file(file)), depth);
    const RatMatrix jmat = endomorphism_from_json(load_json_spec(jfile));
    const Endomorphism endo = alg.classify_endomorphism(jmat);
    const Section x = section_from_json(load_json_spec(xspec), alg);
    const Section y = section_from_json(load_json_spec(yspec), alg);
    const Section t = shifted ? alg.shifted_torsion(jmat, x, y) : alg.nijenhuis_torsion(jmat, x, y);

    if (json) {
        nlohmann::json doc;
        doc["pretty"] = alg.section_to_string(t);
        doc["shifted"] = shifted;
        doc["symmetry"] = symmetry_name(endo.symmetry);
        doc["torsion"] = section_to_json(t);
        doc["zero"] = is_zero(t);
        emit(doc, out);
    } else {
        out << (shifted ? "shifted torsion = " : "torsion = ") << alg.section_to_string(t) << "\n";
    }
    return 0;
}

int cmd_defect(const std::string& file, const std::string& jfile, const std::string& poly,
               const std::string& xspec, const std::string& yspec, const std::string& zspec,
               int slot, int depth, bool json, std::ostream& out) {
    const Algebroid alg = Algebroid::build(algebroid_from_json(load_json_file(file)), depth);
    const RatMatrix jmat = endomorphism_from_json(load_json_spec(jfile));
    const Poly3 p = parse_poly3(poly);
    const Section x = section_from_json(load_json_spec(xspec), alg);
    const Section y = section_from_json(load_json_spec(yspec), alg);
    const Section z = section_from_json(load_json_spec(zspec), alg);
    const ScalarExpr d = alg.tensoriality_defect(p, jmat, x, y, z, slot);

    if (json) {
        nlohmann::json doc;
        doc["defect"] = to_string(d, false);
        doc["pretty"] = to_string(d, true);
        doc["slot"] = slot;
        doc["zero"] = d.is_zero();
        emit(doc, out);
    } else {
        out << "defect = " << to_string(d, true) << "\n";
    }
    return d.is_zero() ? 0 : 1;
}

int cmd_demo(const std::string& what, bool json, std::ostream& out) {
    if (what != "heisenberg") {
        throw std::invalid_argument("unknown demo '" + what + "' (available: heisenberg)");
    }
    const HeisenbergExample ex = heisenberg_example();
    const Algebroid& alg = ex.algebroid;
    const ScalarExpr f = ScalarExpr::symbol("f");

    // Defect of the torsion under scaling of the first argument.
    const Section lhs = alg.nijenhuis_torsion(ex.J.matrix, scale(f, ex.x), ex.y) -
                        scale(f, alg.nijenhuis_torsion(ex.J.matrix, ex.x, ex.y));

    // Expected value: 2 * D3(f) * a1 (frame index 4 is the first covector).
    Section expected = alg.zero_section();
    expected.coeffs[3] = Rational(2) * apply_derivation(f, 3, alg.derivation_algebra());
    bool matches = (lhs == expected);

    // Cross-check: pairing against every frame must match the slot-1
    // tensoriality defect of (x+z)*(y+z).
    const Poly3 pairing_poly = parse_poly3("(x+z)*(y+z)");
    for (int k = 1; k <= static_cast<int>(alg.rank()); ++k) {
        const ScalarExpr via_defect =
            alg.tensoriality_defect(pairing_poly, ex.J.matrix, ex.x, ex.y, alg.frame(k), 1);
        if (!(via_defect == alg.inner(expected, alg.frame(k)))) matches = false;
    }

    if (json) {
        nlohmann::json doc;
        doc["defect"] = section_to_json(lhs);
        doc["matches"] = matches;
        doc["pretty"] = alg.section_to_string(lhs);
        emit(doc, out);
    } else {
        out << "defect = " << alg.section_to_string(lhs) << "\n";
        out << "matches expected defect: " << (matches ? "yes" : "no") << "\n";
    }
    return matches ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact tensoriality and Courant torsion calculator"};
    app.name("courant");
    app.require_subcommand(1);

    bool json = false;
    bool symmetric = false;
    int depth = 2;

    // check EXPR [--symmetric] [--json]
    std::string check_expr;
    CLI::App* check = app.add_subcommand("check", "decide tensoriality of a trivariate polynomial");
    check->add_option("expr", check_expr, "polynomial in x, y, z")->required();
    check->add_flag("--symmetric", symmetric, "use the symmetric variant");
    check->add_flag("--json", json, "emit a JSON document on stdout");

    // dim D [--symmetric] [--basis] [--json]
    int dim_degree = 0;
    bool dim_basis = false;
    CLI::App* dim = app.add_subcommand("dim", "dimension of the tensorial component in one degree");
    dim->add_option("degree", dim_degree, "homogeneous degree")->required();
    dim->add_flag("--symmetric", symmetric, "use the symmetric variant");
    dim->add_flag("--basis", dim_basis, "also print a reduced basis");
    dim->add_flag("--json", json, "emit a JSON document on stdout");

    // shift UNIPOLY [--json]
    std::string shift_expr;
    CLI::App* shift = app.add_subcommand("shift", "trivariate shift of a univariate polynomial");
    shift->add_option("poly", shift_expr, "polynomial in t")->required();
    shift->add_flag("--json", json, "emit a JSON document on stdout");

    // reduce EXPR --min UNIPOLY [--json]
    std::string reduce_expr;
    std::string reduce_min;
    CLI::App* reduce = app.add_subcommand("reduce", "reduce each variable modulo a minimal polynomial");
    reduce->add_option("expr", reduce_expr, "polynomial in x, y, z")->required();
    reduce->add_option("--min", reduce_min, "minimal polynomial in t")->required();
    reduce->add_flag("--json", json, "emit a JSON document on stdout");

    // polytens EXPR --min UNIPOLY [--literal] [--json]
    std::string pt_expr;
    std::string pt_min;
    bool pt_literal = false;
    CLI::App* polytens =
        app.add_subcommand("polytens", "polynomial tensoriality relative to a minimal polynomial");
    polytens->add_option("expr", pt_expr, "polynomial in x, y, z")->required();
    polytens->add_option("--min", pt_min, "minimal polynomial in t")->required();
    polytens->add_flag("--literal", pt_literal, "use the literal variant of the test");
    polytens->add_flag("--json", json, "emit a JSON document on stdout");

    // algebroid check FILE [--json] [--depth N]
    std::string alg_file;
    CLI::App* algebroid = app.add_subcommand("algebroid", "operations on algebroid description files");
    algebroid->require_subcommand(1);
    CLI::App* alg_check = algebroid->add_subcommand("check", "validate the compatibility axiom");
    alg_check->add_option("file", alg_file, "algebroid JSON file")->required();
    alg_check->add_option("--depth", depth, "derivation depth bound")->check(CLI::PositiveNumber);
    alg_check->add_flag("--json", json, "emit a JSON document on stdout");

    // torsion FILE --j FILE --x SECT --y SECT [--shifted] [--json] [--depth N]
    std::string tor_file, tor_j, tor_x, tor_y;
    bool tor_shifted = false;
    CLI::App* torsion = app.add_subcommand("torsion", "torsion of an endomorphism on two sections");
    torsion->add_option("file", tor_file, "algebroid JSON file")->required();
    torsion->add_option("--j", tor_j, "endomorphism JSON (file or inline)")->required();
    torsion->add_option("--x", tor_x, "first section (file or inline JSON)")->required();
    torsion->add_option("--y", tor_y, "second section (file or inline JSON)")->required();
    torsion->add_flag("--shifted", tor_shifted, "compute the shifted torsion");
    torsion->add_option("--depth", depth, "derivation depth bound")->check(CLI::PositiveNumber);
    torsion->add_flag("--json", json, "emit a JSON document on stdout");

    // defect FILE --j FILE --poly EXPR --x --y --z --slot N [--json] [--depth N]
    std::string def_file, def_j, def_poly, def_x, def_y, def_z;
    int def_slot = 1;
    CLI::App* defect = app.add_subcommand("defect", "tensoriality defect of a polynomial action");
    defect->add_option("file", def_file, "algebroid JSON file")->required();
    defect->add_option("--j", def_j, "endomorphism JSON (file or inline)")->required();
    defect->add_option("--poly", def_poly, "polynomial in x, y, z")->required();
    defect->add_option("--x", def_x, "first section (file or inline JSON)")->required();
    defect->add_option("--y", def_y, "second section (file or inline JSON)")->required();
    defect->add_option("--z", def_z, "third section (file or inline JSON)")->required();
    defect->add_option("--slot", def_slot, "argument slot to scale (1-3)")
        ->required()
        ->check(CLI::Range(1, 3));
    defect->add_option("--depth", depth, "derivation depth bound")->check(CLI::PositiveNumber);
    defect->add_flag("--json", json, "emit a JSON document on stdout");

    // demo heisenberg [--json]
    std::string demo_what;
    CLI::App* demo = app.add_subcommand("demo", "built-in worked example");
    demo->add_option("name", demo_what, "demo name (heisenberg)")->required();
    demo->add_flag("--json", json, "emit a JSON document on stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("courant");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(check_expr, symmetric, json, out, err);
        if (dim->parsed()) return cmd_dim(dim_degree, symmetric, dim_basis, json, out);
        if (shift->parsed()) return cmd_shift(shift_expr, json, out);
        if (reduce->parsed()) return cmd_reduce(reduce_expr, reduce_min, json, out);
        if (polytens->parsed()) return cmd_polytens(pt_expr, pt_min, pt_literal, json, out);
        if (algebroid->parsed()) return cmd_algebroid_check(alg_file, depth, json, out);
        if (torsion->parsed())
            return cmd_torsion(tor_file, tor_j, tor_x, tor_y, tor_shifted, depth, json, out);
        if (defect->parsed())
            return cmd_defect(def_file, def_j, def_poly, def_x, def_y, def_z, def_slot, depth, json,
                              out);
        if (demo->parsed()) return cmd_demo(demo_what, json, out);
        err << "error: no subcommand selected\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace courant::cli
