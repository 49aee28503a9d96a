#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cubecert/dsl.hpp"
#include "testutil.hpp"

#include <random>

using namespace cubecert;
using namespace cubecert::testing;
namespace d = cubecert::dsl;

namespace {

const char* kPrelude = R"(
def A(x) = (a*x - a + 1)/a
def B(x) = b*x - x + 1
def k(x) = B(x)/(a*b*x*A(x))
def l(y) = 1 - k(c)/k(y)
def mu = -(a*b - b + 1)/a
)";

} // namespace

TEST_CASE("definitions and cycles parse and elaborate") {
    std::string text = std::string(kPrelude) + R"(
cycle Zx = [y, 1-x, 1 - y/x, 1 - k(c)/y] from "step 1"
)";
    d::SourceFile sf = d::parse(text);
    REQUIRE(sf.defs.size() == 5);
    CHECK(sf.defs[0].name == "A");
    CHECK(sf.defs[0].formal == Sym::x);
    REQUIRE(sf.cycles.size() == 1);
    CHECK(sf.cycles[0].coords.size() == 4);
    CHECK(sf.cycles[0].provenance == "step 1");

    d::Catalog cat = d::elaborate(sf);
    const Cycle& zx = cat.cycles.at("Zx");
    CHECK(zx.dim == 2);
    CHECK(zx.arity() == 4);
    // Same cycle built directly from the kernel.
    Cycle direct = Cycle::make(
        "Zx", {CoordFunc::factor(Rsym(Sym::y)),
               CoordFunc::factor(RatFunc::constant(1) - Rsym(Sym::x)),
               CoordFunc::factor(RatFunc::constant(1) - Rsym(Sym::y) / Rsym(Sym::x)),
               CoordFunc::factor(RatFunc::constant(1) - fkc() / Rsym(Sym::y))});
    CHECK(zx.key() == direct.key());
}

TEST_CASE("l(y) carries the y - c atom") {
    d::SourceFile sf = d::parse(std::string(kPrelude) + "cycle L = [l(y)]\n");
    d::Catalog cat = d::elaborate(sf);
    const Cycle& L = cat.cycles.at("L");
    bool found = false;
    for (const auto& f : L.coords[0].factors())
        if (f.atom.poly() == py() - pc()) found = true;
    CHECK(found);
}

TEST_CASE("constant coordinates elaborate without x,y dependence") {
    d::SourceFile sf =
        d::parse(std::string(kPrelude) + "cycle K = [(b-1)/mu, 1 - k(c)/y]\n");
    d::Catalog cat = d::elaborate(sf);
    const Cycle& K = cat.cycles.at("K");
    CHECK_FALSE(K.coords[0].depends_on(Sym::x));
    CHECK_FALSE(K.coords[0].depends_on(Sym::y));
    CHECK(K.dim == 1);
}

TEST_CASE("empty input gives an empty catalog") {
    d::SourceFile sf = d::parse("# nothing here\n");
    d::Catalog cat = d::elaborate(sf);
    CHECK(cat.cycles.empty());
    CHECK(sf.defs.empty());
}

TEST_CASE("degenerate and malformed inputs are diagnosed with positions") {
    CHECK_THROWS_AS(d::parse("def E = "), d::SyntaxError);
    CHECK_THROWS_AS(d::parse("cycle [x]"), d::SyntaxError);
    CHECK_THROWS_AS(d::parse("wat"), d::SyntaxError);

    // Zero denominator literal is a semantic error at elaboration.
    d::SourceFile sf = d::parse("def E = 1/0\n");
    CHECK_THROWS_AS(d::elaborate(sf), d::SemanticError);

    // Duplicate and unknown names.
    CHECK_THROWS_AS(d::elaborate(d::parse("def f = a\ndef f = b\n")), d::SemanticError);
    CHECK_THROWS_AS(d::elaborate(d::parse("cycle Z = [nope]\n")), d::SemanticError);
    CHECK_THROWS_AS(d::elaborate(d::parse("check cycle Missing\n")), d::SemanticError);

    // Non-bilinear coordinates are rejected with the offending factor.
    CHECK_THROWS_AS(d::elaborate(d::parse("cycle Q = [x^2 + y, x]\n")), d::SemanticError);

    try {
        d::parse("def E = (1 + ");
        CHECK(false);
    } catch (const d::SyntaxError& e) {
        CHECK(e.pos.line == 1);
        CHECK(std::string(e.what()).find("1:") != std::string::npos);
    }
}

TEST_CASE("checks parse into the catalog structures") {
    std::string text = std::string(kPrelude) + R"(
cycle Zx = [y, 1-x, 1 - y/x, 1 - k(c)/y]
cycle ZP = [x, 1-x, 1 - k(c)/x]
hypotheses nondegeneracy
note "rows printed with mixed labels are encoded for the owning cycle"

check cycle Zx
  face 1 0 = deg t3
  face 2 0 = ZP
  face 3 inf = deg t2, deg @inf t4
  face 4 0 = [k(c), 1-x, 1 - k(c)/x]

check identity one_minus_k: 1 - k(x) == (x-1)*(1+a*b*x)/(a*b*x*A(x))
check decomposable ZP = C1(F,1) ^ C1(F,2)
check not_decomposable Zx
check relation l31i on Zx split (1 - y/x) * 1 -> [Zx, ZP]
)";
    d::SourceFile sf = d::parse(text);
    REQUIRE(sf.cycle_checks.size() == 1);
    CHECK(sf.cycle_checks[0].rows.size() == 4);
    CHECK(sf.cycle_checks[0].rows[2].verdicts[1].at_infinity);
    REQUIRE(sf.identity_checks.size() == 1);
    CHECK(sf.identity_checks[0].label == "one_minus_k");
    REQUIRE(sf.decomp_checks.size() == 2);
    CHECK(sf.decomp_checks[0].tags ==
          std::vector<std::pair<int, int>>{{1, 1}, {1, 2}});
    REQUIRE(sf.relation_checks.size() == 1);
    CHECK(sf.notes.size() == 1);
    CHECK(d::elaborate(sf).cycles.size() == 2);
}

TEST_CASE("pretty-printing reaches a fixed point") {
    std::string text = std::string(kPrelude) + R"(
cycle Zx = [y, 1-x, 1 - y/x, 1 - k(c)/y] from "step 1"
hypotheses nondegeneracy
check cycle Zx
  face 1 0 = deg t3
  face 2 inf none
check identity lab: k(-1/(a*b)) == 1
check decomposable Zx = C1(F,1) ^ C2(F,4)
check relation split_l: l31i on Zx split (1 - y/x) * (x/y) -> [[y, 1-x, x/y, 1 - k(c)/y]]
note "fixed point probe"
)";
    std::string once = d::parse(text).pretty();
    std::string twice = d::parse(once).pretty();
    CHECK(once == twice);
}

TEST_CASE("arbitrary bytes never crash the parser") {
    std::mt19937_64 rng(424242);
    const std::string alphabet =
        "abcxy()[]{}=+-*/^#,:\"' \n\tdefchklreation0123456789_";
    for (int round = 0; round < 400; ++round) {
        std::string s;
        int len = static_cast<int>(rng() % 80);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        try {
            d::SourceFile sf = d::parse(s);
            (void)sf;
        } catch (const Error&) {
            // diagnosed, fine
        }
    }
    CHECK(true);
}
