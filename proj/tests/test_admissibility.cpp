#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cubecert/checker.hpp"
#include "testutil.hpp"

using namespace cubecert;
using namespace cubecert::testing;

namespace {

Cycle make_cycle(const std::string& name, const std::vector<RatFunc>& coords) {
    std::vector<CoordFunc> cs;
    for (const auto& f : coords) cs.push_back(CoordFunc::factor(f));
    return Cycle::make(name, std::move(cs));
}

RatFunc one() { return RatFunc::constant(1); }

const HypothesisSet& H() {
    static HypothesisSet h = nondegeneracy_hypotheses();
    return h;
}

} // namespace

TEST_CASE("ledger contents from the displayed terms") {
    const HypothesisSet& h = H();
    // -abc contributes a, b, c and abc+1.
    CHECK(h.contains(pa()));
    CHECK(h.contains(pb()));
    CHECK(h.contains(pc()));
    CHECK(h.contains(pa() * pb() * pc() + C(1)));
    // (ca-a+1)/(ca) contributes ca-a+1 and a-1.
    CHECK(h.contains(pc() * pa() - pa() + C(1)));
    CHECK(h.contains(pa() - C(1)));
    // c contributes c and c-1; rotations bring b-1 and the other blocks.
    CHECK(h.contains(pc() - C(1)));
    CHECK(h.contains(pb() - C(1)));
    CHECK(h.contains(pa() * pb() - pb() + C(1)));
    CHECK(h.contains(pb() * pc() - pc() + C(1)));
    // Entries are primitive and nonzero, never the zero polynomial.
    for (const auto& e : h.entries()) {
        CHECK_FALSE(e.poly.is_zero());
        CHECK(e.poly == e.poly.primitive_part());
        CHECK_FALSE(e.provenance.empty());
    }
    // (2,3,5) satisfies the whole ledger.
    Assignment at{{Sym::a, make_rat(2)}, {Sym::b, make_rat(3)}, {Sym::c, make_rat(5)}};
    CHECK(h.satisfied_by(at));
}

TEST_CASE("certify_nonzero factors ledger products symbolically") {
    Poly E = (pc() - C(1)) * (C(1) + pa() * pb() * pc());
    Discharge d = certify_nonzero(E, H(), 64, 7);
    REQUIRE(d.kind == Discharge::Kind::SymbolicFactorization);
    // Division audit: the factors re-multiply exactly to E.
    Poly back = Poly::constant(d.unit);
    for (auto [idx, e] : d.factors) back = back * H().entries()[idx].poly.pow(e);
    CHECK(back == E);

    // The aby2+1 numerator (1-c)(ab-b+1).
    Poly E2 = (C(1) - pc()) * (pa() * pb() - pb() + C(1));
    Discharge d2 = certify_nonzero(E2, H(), 64, 7);
    REQUIRE(d2.kind == Discharge::Kind::SymbolicFactorization);
    Poly back2 = Poly::constant(d2.unit);
    for (auto [idx, e] : d2.factors) back2 = back2 * H().entries()[idx].poly.pow(e);
    CHECK(back2 == E2);

    // Powers and mixed monomials.
    Poly E3 = pa() * pa() * pb() * (pc() - C(1)) * (pc() - C(1));
    Discharge d3 = certify_nonzero(E3, H(), 64, 7);
    REQUIRE(d3.kind == Discharge::Kind::SymbolicFactorization);
}

TEST_CASE("certify_nonzero falls back to sampling for generic nonzeros") {
    Poly E = pa() - C(2);
    Discharge d = certify_nonzero(E, H(), 64, 12345);
    CHECK(d.kind == Discharge::Kind::ProbabilisticOnly);
    CHECK(d.trials == 64);
    CHECK_FALSE(d.ok(/*strict=*/true));
    CHECK(d.ok(/*strict=*/false));

    // a-b is not a ledger product either; hitting a vanishing sample is a
    // rare event, so the verdict is sampling-based at best.
    Discharge bad = certify_nonzero(pa() - pb(), H(), 128, 99);
    CHECK(bad.kind != Discharge::Kind::SymbolicFactorization);

    Discharge zero = certify_nonzero(Poly(), H(), 8, 1);
    CHECK(zero.kind == Discharge::Kind::Failed);
}

TEST_CASE("Z_x certifies admissible") {
    Cycle zx = make_cycle("Z_x", {Rsym(Sym::y), one() - Rsym(Sym::x),
                                  one() - Rsym(Sym::y) / Rsym(Sym::x),
                                  one() - fkc() / Rsym(Sym::y)});
    CertStore store;
    CheckOptions opt;
    opt.strict = true;
    auto cert = check_admissible(zx, H(), opt, store);
    CHECK(cert->admissible);
    CHECK(cert->fully_symbolic);
    // 8 faces.
    CHECK(cert->faces.size() == 8);
}

TEST_CASE("V certifies with the y2 obligations discharged symbolically") {
    Cycle v = make_cycle("V", {fA(Sym::y), fA(Sym::y),
                               one() - RatFunc::make(C(1), Poly::sym(Sym::y)), fl(Sym::y)});
    CertStore store;
    CheckOptions opt;
    opt.strict = true;
    auto cert = check_admissible(v, H(), opt, store);
    CHECK(cert->admissible);
    CHECK(cert->fully_symbolic);
    // The d4^0 face has the two l(y)=0 branches as point cycles.
    bool found = false;
    for (const auto& fr : cert->faces) {
        if (fr.index != 4 || fr.eps != FaceEps::Zero) continue;
        REQUIRE(fr.branches.size() == 2);
        for (const auto& br : fr.branches) {
            CHECK(br.status.kind == FaceStatus::Kind::PointCycle);
            for (const auto& o : br.obligations)
                CHECK(o.discharge.kind == Discharge::Kind::SymbolicFactorization);
        }
        found = true;
    }
    CHECK(found);
}

TEST_CASE("the constructed counterexample fails with a violation") {
    Cycle bad = make_cycle("bad", {Rsym(Sym::x), RatFunc::constant(2) - Rsym(Sym::x),
                                   Rsym(Sym::x)});
    CertStore store;
    auto cert = check_admissible(bad, H(), CheckOptions{}, store);
    CHECK_FALSE(cert->admissible);
    CHECK(cert->first_failure.find("d1^0") != std::string::npos);

    Cycle bad2 = make_cycle("bad2", {Rsym(Sym::x), one() - Rsym(Sym::x), Rsym(Sym::x)});
    auto cert2 = check_admissible(bad2, H(), CheckOptions{}, store);
    CHECK_FALSE(cert2->admissible);
    CHECK(cert2->first_failure.find("d1^inf") != std::string::npos);
}

TEST_CASE("memoization does not change results") {
    Cycle za = make_cycle("Z_A", {fA(Sym::x), fA(Sym::y), one() - fk(Sym::x),
                                  one() - fk(Sym::y) / fk(Sym::x), fl(Sym::y)});
    CheckOptions with_memo;
    with_memo.strict = true;
    CheckOptions no_memo = with_memo;
    no_memo.memoize = false;
    CertStore s1, s2;
    auto c1 = check_admissible(za, H(), with_memo, s1);
    auto c2 = check_admissible(za, H(), no_memo, s2);
    CHECK(c1->admissible == c2->admissible);
    CHECK(c1->fully_symbolic == c2->fully_symbolic);
    REQUIRE(c1->faces.size() == c2->faces.size());
    for (std::size_t i = 0; i < c1->faces.size(); ++i) {
        REQUIRE(c1->faces[i].branches.size() == c2->faces[i].branches.size());
        for (std::size_t j = 0; j < c1->faces[i].branches.size(); ++j) {
            const auto& b1 = c1->faces[i].branches[j];
            const auto& b2 = c2->faces[i].branches[j];
            CHECK(b1.status.kind == b2.status.kind);
            CHECK(b1.branch.str() == b2.branch.str());
            REQUIRE(b1.obligations.size() == b2.obligations.size());
            for (std::size_t k = 0; k < b1.obligations.size(); ++k)
                CHECK(b1.obligations[k].discharge.kind == b2.obligations[k].discharge.kind);
        }
    }
    CHECK(c1->admissible);
}

TEST_CASE("certified faces agree with the numeric oracle") {
    Cycle za = make_cycle("Z_A", {fA(Sym::x), fA(Sym::y), one() - fk(Sym::x),
                                  one() - fk(Sym::y) / fk(Sym::x), fl(Sym::y)});
    CertStore store;
    CheckOptions opt;
    opt.strict = true;
    auto cert = check_admissible(za, H(), opt, store);
    REQUIRE(cert->admissible);
    Rng rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 100; ++trial) {
        Assignment at = rng.nondegenerate_params();
        if (!H().satisfied_by(at)) continue;
        ++checked;
        for (const auto& fr : cert->faces) {
            for (const auto& br : fr.branches) {
                if (br.status.kind != FaceStatus::Kind::PointCycle) continue;
                for (const auto& v : br.status.point_values) {
                    EvalResult e = v.eval(at);
                    REQUIRE(e.is_value());
                    CHECK(sgn(e.value) != 0);
                }
            }
        }
    }
    CHECK(checked == 100);
}
