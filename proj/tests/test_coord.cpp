#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cubecert/cycle.hpp"
#include "testutil.hpp"

using namespace cubecert;
using namespace cubecert::testing;

namespace {

CoordFunc CF(const RatFunc& f) { return CoordFunc::factor(f); }

Cycle make_cycle(const std::string& name, const std::vector<RatFunc>& coords) {
    std::vector<CoordFunc> cs;
    for (const auto& f : coords) cs.push_back(CF(f));
    return Cycle::make(name, std::move(cs));
}

Cycle Zx() {
    return make_cycle("Z_x", {Rsym(Sym::y), RatFunc::constant(1) - Rsym(Sym::x),
                              RatFunc::constant(1) - Rsym(Sym::y) / Rsym(Sym::x),
                              RatFunc::constant(1) - fkc() / Rsym(Sym::y)});
}

Cycle ZA() {
    RatFunc one = RatFunc::constant(1);
    return make_cycle("Z_A", {fA(Sym::x), fA(Sym::y), one - fk(Sym::x),
                              one - fk(Sym::y) / fk(Sym::x), fl(Sym::y)});
}

} // namespace

TEST_CASE("factoring recovers the corpus atoms") {
    RatFunc f = RatFunc::constant(1) - fk(Sym::y) / fk(Sym::x);
    CoordFunc cf = CF(f);
    CHECK(cf.expand() == f);

    // Numerator atoms: y - x and yB(x) + A(x) (cleared by a).
    Poly ymx = py() - px();
    Poly big = pa() * (pb() - C(1)) * px() * py() + pa() * px() + pa() * py() + C(1) - pa();
    int found = 0;
    for (const auto& fac : cf.factors()) {
        if (fac.atom.poly() == ymx) { CHECK(fac.exponent == 1); ++found; }
        if (fac.atom.poly() == big.primitive_part()) { CHECK(fac.exponent == 1); ++found; }
    }
    CHECK(found == 2);
}

TEST_CASE("monomial powers factor as repeated atoms") {
    CoordFunc cf = CF(R(px() * px()));
    REQUIRE(cf.factors().size() == 1);
    CHECK(cf.factors()[0].atom.poly() == px());
    CHECK(cf.factors()[0].exponent == 2);
}

TEST_CASE("the symmetric atom identity xB(y)+A(y) == yB(x)+A(x)") {
    RatFunc u = Rsym(Sym::x) * fB(Sym::y) + fA(Sym::y);
    RatFunc v = Rsym(Sym::y) * fB(Sym::x) + fA(Sym::x);
    CoordFunc cu = CF(u);
    CoordFunc cv = CF(v);
    REQUIRE(cu.factors().size() == 1);
    REQUIRE(cv.factors().size() == 1);
    CHECK(cu.factors()[0].atom == cv.factors()[0].atom);
    CHECK(cu.scalar() == cv.scalar());
}

TEST_CASE("rank-one bilinear polynomials split") {
    // A(y)B(x) is bilinear as a polynomial but splits into two atoms.
    RatFunc f = fA(Sym::y) * fB(Sym::x);
    CoordFunc cf = CF(f);
    CHECK(cf.factors().size() == 2);
    CHECK(cf.expand() == f);
}

TEST_CASE("a genuinely quadratic irreducible factor is rejected") {
    CHECK_THROWS_AS(CF(R(px() * px() + py())), NonBilinearIrreducible);
    CHECK_THROWS_AS(CF(R(py() * py() + pa())), NonBilinearIrreducible);
}

TEST_CASE("factor round-trip on random atom products") {
    Rng rng(17);
    auto rand_atom = [&](bool use_x, bool use_y) {
        while (true) {
            Poly p;
            if (use_x && use_y)
                p = C(rng.pick(-3, 3)) * px() * py() + C(rng.pick(-3, 3)) * px() +
                    C(rng.pick(-3, 3)) * py() + rng.poly(1, 1, 3);
            else if (use_x)
                p = C(rng.pick(-3, 3)) * px() + rng.poly(2, 1, 3);
            else
                p = C(rng.pick(-3, 3)) * py() + rng.poly(2, 1, 3);
            if (!p.is_zero() && (p.depends_on(Sym::x) || p.depends_on(Sym::y))) return p;
        }
    };
    for (int i = 0; i < 60; ++i) {
        Poly num = rand_atom(true, true) * rand_atom(rng.pick(0, 1) == 1, true);
        Poly den = rand_atom(true, false);
        RatFunc f = RatFunc::make(num, den);
        if (f.is_zero()) continue;
        CoordFunc cf = CF(f);
        CHECK(cf.expand() == f);
    }
}

TEST_CASE("solve_branches on l(y)") {
    CoordFunc l = CF(fl(Sym::y));
    auto zero = solve_branches(l, LocusTarget::Zero, 1);
    REQUIRE(zero.size() == 2);
    bool got_c = false, got_y2 = false;
    for (const auto& br : zero) {
        REQUIRE(br.kind == Branch::Kind::YConst);
        if (br.value == Rsym(Sym::c)) got_c = true;
        if (br.value == fy2()) got_y2 = true;
    }
    CHECK(got_c);
    CHECK(got_y2);

    // Poles of l: B(y) = 0 and y = inf.
    auto pole = solve_branches(l, LocusTarget::Pole, 1);
    REQUIRE(pole.size() == 2);
    bool got_b = false, got_inf = false;
    for (const auto& br : pole) {
        if (br.kind == Branch::Kind::YConst &&
            br.value == RatFunc::make(C(1), C(1) - pb()))
            got_b = true;
        if (br.kind == Branch::Kind::YInfinity) got_inf = true;
    }
    CHECK(got_b);
    CHECK(got_inf);
}

TEST_CASE("solve_branches on two-variable coordinates") {
    CoordFunc g = CF((Rsym(Sym::y) - Rsym(Sym::x)) / fA(Sym::y));
    auto zero = solve_branches(g, LocusTarget::Zero, 2);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].kind == Branch::Kind::YofX);
    CHECK(zero[0].is_identity_graph());

    auto pole = solve_branches(g, LocusTarget::Pole, 2);
    // A(y) = 0 and x = inf.
    REQUIRE(pole.size() == 2);

    CoordFunc just_x = CF(Rsym(Sym::x));
    auto px_pole = solve_branches(just_x, LocusTarget::Pole, 2);
    REQUIRE(px_pole.size() == 1);
    CHECK(px_pole[0].kind == Branch::Kind::XInfinity);
}

TEST_CASE("substitute drops the solved coordinate and keeps exact values") {
    Cycle zx = Zx();
    // Coordinate 2 is 1 - x; its zero branch is x = 1.
    auto brs = solve_branches(zx.coords[1], LocusTarget::Zero, 2);
    REQUIRE(brs.size() == 1);
    Cycle face = substitute(zx, 2, brs[0]);
    Cycle expected = make_cycle("", {Rsym(Sym::x), RatFunc::constant(1) - Rsym(Sym::x),
                                     RatFunc::constant(1) - fkc() / Rsym(Sym::x)});
    CHECK(face.key() == expected.key());
    CHECK(face.dim == 1);
}

TEST_CASE("face of Z_A at the first l-branch matches the printed tuple") {
    Cycle za = ZA();
    auto brs = solve_branches(za.coords[4], LocusTarget::Zero, 2);
    REQUIRE(brs.size() == 2);
    // One branch y=c, one branch y=y2.
    for (const auto& br : brs) {
        Cycle face = substitute(za, 5, br);
        REQUIRE(br.kind == Branch::Kind::YConst);
        RatFunc v = br.value;
        Cycle expected = make_cycle(
            "", {fA(Sym::x), RatFunc::constant(v.is_constant() ? 0 : 0) + fA(Sym::y).substituted(Sym::y, v),
                 RatFunc::constant(1) - fk(Sym::x), fl(Sym::x)});
        CHECK(face.key() == expected.key());
    }
}

TEST_CASE("substituting y=x into 1-y/x flags the identically-zero coordinate") {
    RatFunc one = RatFunc::constant(1);
    Cycle cy = make_cycle("", {Rsym(Sym::y), one - Rsym(Sym::y) / Rsym(Sym::x)});
    Branch diag = Branch::y_of_x(C(1), Poly(), Poly(), C(1));
    auto rt = restrict_to_branch(cy, 1, diag);
    REQUIRE(rt.coords.size() == 1);
    CHECK(rt.coords[0].kind == CoordOnBranch::Kind::IdentZero);
}

TEST_CASE("substitute commutes with evaluation on the branch") {
    Cycle za = ZA();
    Rng rng(41);
    Assignment base{{Sym::a, make_rat(2)}, {Sym::b, make_rat(3)}, {Sym::c, make_rat(5)}};
    for (int coord = 1; coord <= za.arity(); ++coord) {
        for (LocusTarget t : {LocusTarget::Zero, LocusTarget::Pole}) {
            for (const auto& br : solve_branches(za.coords[coord - 1], t, 2)) {
                if (br.at_infinity()) continue;
                RestrictedTuple rt = restrict_to_branch(za, coord, br);
                int checked = 0;
                for (int trial = 0; trial < 40 && checked < 5; ++trial) {
                    Assignment at = base;
                    at[Sym::x] = rng.rat(-9, 9, 7);
                    at[Sym::y] = rng.rat(-9, 9, 7);
                    if (br.kind == Branch::Kind::YConst) {
                        EvalResult e = br.value.eval(base);
                        REQUIRE(e.is_value());
                        at[Sym::y] = e.value;
                    } else if (br.kind == Branch::Kind::XConst) {
                        EvalResult e = br.value.eval(base);
                        REQUIRE(e.is_value());
                        at[Sym::x] = e.value;
                    } else if (br.kind == Branch::Kind::YofX) {
                        EvalResult e = br.graph_map().eval(at);
                        if (!e.is_value()) continue;
                        at[Sym::y] = e.value;
                    } else {
                        continue;
                    }
                    bool ok = true;
                    for (std::size_t k = 0; k < rt.coords.size(); ++k) {
                        const auto& cob = rt.coords[k];
                        const CoordFunc& orig = za.coords[rt.parent_index[k] - 1];
                        EvalResult eo = orig.expand().eval(at);
                        if (cob.kind == CoordOnBranch::Kind::Value) {
                            Assignment sub_at = at;  // substituted tuple is in x (or consts)
                            EvalResult es = cob.value.expand().eval(sub_at);
                            if (!eo.is_value() || !es.is_value()) { ok = false; break; }
                            CHECK(eo.value == es.value);
                        } else if (cob.kind == CoordOnBranch::Kind::IdentZero) {
                            REQUIRE(eo.is_value());
                            CHECK(eo.value == 0);
                        }
                    }
                    if (ok) ++checked;
                }
                CHECK(checked > 0);
            }
        }
    }
}

TEST_CASE("branch completeness against a numeric grid") {
    // Every numeric zero/pole of the coordinate lies on an emitted branch,
    // and conversely, for specializations that keep the shape generic.
    std::vector<RatFunc> coords = {
        RatFunc::constant(1) - fk(Sym::y) / fk(Sym::x),
        (Rsym(Sym::y) - Rsym(Sym::x)) / fA(Sym::y),
        fl(Sym::y),
    };
    Rng rng(4242);
    for (const auto& f : coords) {
        CoordFunc cf = CF(f);
        auto zeros = solve_branches(cf, LocusTarget::Zero, 2);
        auto poles = solve_branches(cf, LocusTarget::Pole, 2);
        int done = 0;
        for (int trial = 0; trial < 400 && done < 200; ++trial) {
            Assignment at = rng.nondegenerate_params();
            at[Sym::x] = rng.rat(-9, 9, 5);
            at[Sym::y] = rng.rat(-9, 9, 5);
            EvalResult e = f.eval(at);
            auto on_some_branch = [&](const std::vector<Branch>& brs) {
                for (const auto& br : brs) {
                    switch (br.kind) {
                        case Branch::Kind::XConst: {
                            EvalResult v = br.value.eval(at);
                            if (v.is_value() && v.value == at[Sym::x]) return true;
                            break;
                        }
                        case Branch::Kind::YConst: {
                            EvalResult v = br.value.eval(at);
                            if (v.is_value() && v.value == at[Sym::y]) return true;
                            break;
                        }
                        case Branch::Kind::YofX: {
                            EvalResult v = br.graph_map().eval(at);
                            if (v.is_value() && v.value == at[Sym::y]) return true;
                            break;
                        }
                        default: break;
                    }
                }
                return false;
            };
            if (e.is_value() && sgn(e.value) == 0) {
                CHECK(on_some_branch(zeros));
                ++done;
            } else if (e.is_infinity()) {
                CHECK(on_some_branch(poles));
                ++done;
            } else if (e.is_value()) {
                CHECK_FALSE(on_some_branch(zeros));
                CHECK_FALSE(on_some_branch(poles));
                ++done;
            }
        }
        CHECK(done > 50);
    }
}

TEST_CASE("one-variable cycles are normalized to y") {
    Cycle w = make_cycle("W", {fA(Sym::x),
                               (Rsym(Sym::x) - RatFunc::constant(1)) / Rsym(Sym::x),
                               fB(Sym::x) / (-fmu())});
    CHECK(w.dim == 1);
    for (const auto& g : w.coords) CHECK_FALSE(g.depends_on(Sym::x));
    Cycle w2 = make_cycle("W2", {fA(Sym::y),
                                 (Rsym(Sym::y) - RatFunc::constant(1)) / Rsym(Sym::y),
                                 fB(Sym::y) / (-fmu())});
    CHECK(w.key() == w2.key());
}
