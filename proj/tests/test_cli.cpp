#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    RunResult r;
    r.code = courant::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

const std::string kXPlain = R"({"coeffs":["0","0","1","0","0","1"]})";
const std::string kXScaled = R"({"coeffs":["0","0","f","0","0","f"]})";
const std::string kZFrame1 = R"({"coeffs":["1","0","0","0","0","0"]})";

}  // namespace

TEST_CASE("check reports verdict, quotient, and criterion agreement") {
    RunResult r = run({"check", "(x+y)*(y+z)*(z+x)"});
    CHECK(r.code == 0);
    CHECK(r.out == "tensorial: yes (quotient 1)\ncriteria agree: yes\n");
    CHECK(r.err.empty());

    r = run({"check", "3*(x+y)*(y+z)*(z+x)*(x^2+5)"});
    CHECK(r.code == 0);
    CHECK(r.out == "tensorial: yes (quotient 3*x^2 + 15)\ncriteria agree: yes\n");

    r = run({"check", "(x+z)*(y+z)"});
    CHECK(r.code == 1);
    CHECK(r.out == "tensorial: no; violated family 2 at (i=0,t=2)\ncriteria agree: yes\n");

    r = run({"check", "--symmetric", "(x-y)*(y-z)*(x-z)"});
    CHECK(r.code == 0);
    CHECK(r.out == "tensorial: yes (quotient 1)\ncriteria agree: yes\n");
}

TEST_CASE("check --json is machine readable and byte stable") {
    RunResult a = run({"check", "--json", "(x+y)*(y+z)*(z+x)"});
    RunResult b = run({"check", "--json", "(x+y)*(y+z)*(z+x)"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    nlohmann::json doc = nlohmann::json::parse(a.out);
    CHECK(doc["agree"] == true);
    CHECK(doc["tensorial"] == true);
    CHECK(doc["variant"] == "skew");
    CHECK(doc["coefficient"]["quotient"] == "1");
    CHECK(doc["variety"]["A"] == "0");
    CHECK(doc["variety"]["B"] == "0");
    CHECK(doc["variety"]["C"] == "0");

    doc = nlohmann::json::parse(run({"check", "--json", "x*y*z"}).out);
    CHECK(doc["tensorial"] == false);
    CHECK_FALSE(doc["coefficient"]["violations"].empty());
}

TEST_CASE("malformed input and usage errors exit with code 2") {
    RunResult r = run({"check", "x + q"});
    CHECK(r.code == 2);
    CHECK(r.err.find("byte") != std::string::npos);

    CHECK(run({"check"}).code == 2);                 // missing positional
    CHECK(run({"frobnicate", "x"}).code == 2);       // unknown subcommand
    CHECK(run({"reduce", "x"}).code == 2);           // missing required --min
    CHECK(run({"shift", "x+y"}).code == 2);          // not univariate in t
    CHECK(run({"reduce", "x", "--min", "5"}).code == 2);  // constant modulus
    CHECK(run({"demo", "nope"}).code == 2);
    CHECK(run({"demo", "nope"}).err.find("unknown demo") != std::string::npos);

    r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("check") != std::string::npos);
}

TEST_CASE("dim prints dimensions and reduced bases") {
    RunResult r = run({"dim", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "degree 4 (skew): dim 3\n");

    r = run({"dim", "4", "--basis"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 24) == "degree 4 (skew): dim 3\n ");
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);

    r = run({"dim", "3", "--basis"});
    CHECK(r.out ==
          "degree 3 (skew): dim 1\n"
          "  x^2*y + x^2*z + x*y^2 + 2*x*y*z + x*z^2 + y^2*z + y*z^2\n");

    r = run({"dim", "3", "--symmetric", "--basis"});
    CHECK(r.out ==
          "degree 3 (symmetric): dim 1\n"
          "  x^2*y - x^2*z - x*y^2 + x*z^2 + y^2*z - y*z^2\n");

    r = run({"dim", "2"});
    CHECK(r.out == "degree 2 (skew): dim 0\n");

    nlohmann::json doc = nlohmann::json::parse(run({"dim", "5", "--json"}).out);
    CHECK(doc["dim"] == 6);
    CHECK(doc["variant"] == "skew");
}

TEST_CASE("shift, reduce, and polytens work together") {
    RunResult r = run({"shift", "t^2+1"});
    CHECK(r.code == 0);
    CHECK(r.out == "x^2 + 2*x*y + 2*x*z + y^2 + 2*y*z + z^2 + 1\n");

    // The shift reduces to twice the quadratic pairing polynomial.
    std::string shifted = r.out.substr(0, r.out.size() - 1);
    RunResult red1 = run({"reduce", shifted, "--min", "t^2+1"});
    RunResult red2 = run({"reduce", "2*(x+z)*(y+z)", "--min", "t^2+1"});
    CHECK(red1.code == 0);
    CHECK(red1.out == "2*x*y + 2*x*z + 2*y*z - 2\n");
    CHECK(red1.out == red2.out);

    // ... and is therefore polynomially tensorial for that modulus.
    r = run({"polytens", shifted, "--min", "t^2+1"});
    CHECK(r.code == 0);
    CHECK(r.out == "polynomially tensorial: yes\n");

    r = run({"polytens", "x", "--min", "t^2+1"});
    CHECK(r.code == 1);
    CHECK(r.out == "polynomially tensorial: no; witness v\n");

    nlohmann::json doc =
        nlohmann::json::parse(run({"polytens", "x", "--min", "t^2+1", "--json"}).out);
    CHECK(doc["ok"] == false);
    CHECK(doc["witness"] == "v");
    CHECK(doc["mode"] == "modular");

    r = run({"polytens", shifted, "--min", "t^2+1", "--literal"});
    CHECK(r.code == 1);  // the shift is not literally tensorial, only modularly
}

TEST_CASE("algebroid check validates description files") {
    RunResult r = run({"algebroid", "check", data("heisenberg.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "algebroid: valid (proto_courant)\n");

    r = run({"algebroid", "check", data("heisenberg_broken.json")});
    CHECK(r.code == 1);
    CHECK(r.out ==
          "algebroid: invalid; compatibility axiom fails (8 residuals)\n"
          "first residual: equation 1 at (1,2,6): -1/2\n");

    nlohmann::json doc = nlohmann::json::parse(
        run({"algebroid", "check", data("heisenberg_broken.json"), "--json"}).out);
    CHECK(doc["valid"] == false);
    CHECK(doc["violations"].size() == 8);
    CHECK(doc["violations"][0]["equation"] == 1);

    CHECK(run({"algebroid", "check", data("missing.json")}).code == 2);
}

TEST_CASE("torsion command evaluates plain and shifted torsion") {
    const std::string alg = data("heisenberg.json");
    const std::string jmat = data("heisenberg_j.json");

    RunResult r = run({"torsion", alg, "--j", jmat, "--x", data("section_x.json"), "--y",
                       data("section_y.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "torsion = 0\n");

    // Scaling the first section exposes the non-tensorial remainder.
    r = run({"torsion", alg, "--j", jmat, "--x", kXScaled, "--y", data("section_y.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "torsion = 2*D3(f)*e4\n");

    // The shifted torsion absorbs it.
    r = run({"torsion", alg, "--j", jmat, "--x", kXScaled, "--y", data("section_y.json"),
             "--shifted"});
    CHECK(r.code == 0);
    CHECK(r.out == "shifted torsion = 0\n");

    nlohmann::json doc = nlohmann::json::parse(
        run({"torsion", alg, "--j", jmat, "--x", kXScaled, "--y", data("section_y.json"),
             "--json"})
            .out);
    CHECK(doc["zero"] == false);
    CHECK(doc["symmetry"] == "skew");
    CHECK(doc["pretty"] == "2*D3(f)*e4");
    CHECK(doc["torsion"]["coeffs"][3] == "2*D3 f");
}

TEST_CASE("defect command exposes slot sensitivity") {
    const std::string alg = data("heisenberg.json");
    const std::string jmat = data("heisenberg_j.json");
    const std::vector<std::string> base = {"defect",  alg,    "--j", jmat,     "--poly",
                                           "(x+z)*(y+z)", "--x",  kXPlain, "--y",
                                           data("section_y.json")};

    auto with = [&](const std::string& z, const std::string& slot) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--z", z, "--slot", slot});
        return run(args);
    };

    RunResult r = with(kZFrame1, "1");
    CHECK(r.code == 1);
    CHECK(r.out == "defect = D3(f)\n");

    r = with(kZFrame1, "2");
    CHECK(r.code == 0);
    CHECK(r.out == "defect = 0\n");

    CHECK(with(kZFrame1, "4").code == 2);  // slot out of range

    nlohmann::json doc;
    {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--z", kZFrame1, "--slot", "1", "--json"});
        doc = nlohmann::json::parse(run(args).out);
    }
    CHECK(doc["zero"] == false);
    CHECK(doc["slot"] == 1);
    CHECK(doc["pretty"] == "D3(f)");
    CHECK(doc["defect"] == "D3 f");
}

TEST_CASE("demo prints the worked nilpotent example") {
    RunResult r = run({"demo", "heisenberg"});
    CHECK(r.code == 0);
    CHECK(r.out == "defect = 2*D3(f)*a1\nmatches expected defect: yes\n");

    RunResult a = run({"demo", "heisenberg", "--json"});
    RunResult b = run({"demo", "heisenberg", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    nlohmann::json doc = nlohmann::json::parse(a.out);
    CHECK(doc["matches"] == true);
    CHECK(doc["pretty"] == "2*D3(f)*a1");
    CHECK(doc["defect"]["coeffs"][3] == "2*D3 f");
}
