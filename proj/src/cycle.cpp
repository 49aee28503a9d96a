#include "cubecert/cycle.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cubecert {

namespace {

// Joint canonical scaling of the four graph coefficients.
void normalize_graph(Poly& p, Poly& q, Poly& r, Poly& s) {
    Poly g;
    for (const Poly* t : {&p, &q, &r, &s}) {
        if (t->is_zero()) continue;
        g = g.is_zero() ? t->primitive_part() : poly_gcd(g, *t);
        if (g.is_constant()) break;
    }
    if (!g.is_constant() && !g.is_zero()) {
        p = p.is_zero() ? p : *divide_exact(p, g);
        q = q.is_zero() ? q : *divide_exact(q, g);
        r = r.is_zero() ? r : *divide_exact(r, g);
        s = s.is_zero() ? s : *divide_exact(s, g);
    }
    Int num_gcd = 0, den_lcm = 1;
    for (const Poly* t : {&p, &q, &r, &s}) {
        for (const auto& [e, c] : t->terms()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), numer(c).get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), denom(c).get_mpz_t());
        }
    }
    Rat ct = make_rat(num_gcd, den_lcm);
    const Poly& pivot = !s.is_zero() ? s : r;
    if (sgn(pivot.leading_coeff()) < 0) ct = -ct;
    Rat inv = 1 / ct;
    p = p * inv;
    q = q * inv;
    r = r * inv;
    s = s * inv;
}

} // namespace

Branch Branch::x_const(RatFunc v, int mult) {
    Branch b;
    b.kind = Kind::XConst;
    b.value = std::move(v);
    b.multiplicity = mult;
    return b;
}

Branch Branch::y_const(RatFunc v, int mult) {
    Branch b;
    b.kind = Kind::YConst;
    b.value = std::move(v);
    b.multiplicity = mult;
    return b;
}

Branch Branch::x_infinity(int mult) {
    Branch b;
    b.kind = Kind::XInfinity;
    b.multiplicity = mult;
    return b;
}

Branch Branch::y_infinity(int mult) {
    Branch b;
    b.kind = Kind::YInfinity;
    b.multiplicity = mult;
    return b;
}

Branch Branch::y_of_x(Poly p, Poly q, Poly r, Poly s, int mult) {
    assert(!(r.is_zero() && s.is_zero()));
    // Non-constant map: (p,q) not proportional to (r,s).
    assert(!(p * s - q * r).is_zero());
    normalize_graph(p, q, r, s);
    Branch b;
    b.kind = Kind::YofX;
    b.p = std::move(p);
    b.q = std::move(q);
    b.r = std::move(r);
    b.s = std::move(s);
    b.multiplicity = mult;
    return b;
}

bool Branch::is_identity_graph() const {
    if (kind != Kind::YofX && kind != Kind::XofY) return false;
    return p == Poly::constant(1) && q.is_zero() && r.is_zero() && s == Poly::constant(1);
}

RatFunc Branch::graph_map() const {
    assert(is_graph());
    Poly X = Poly::sym(Sym::x);
    return RatFunc::make(p * X + q, r * X + s);
}

bool Branch::same_locus(const Branch& rhs) const {
    if (kind != rhs.kind) return false;
    switch (kind) {
        case Kind::XConst:
        case Kind::YConst:
            return value == rhs.value;
        case Kind::XInfinity:
        case Kind::YInfinity:
            return true;
        case Kind::YofX:
        case Kind::XofY:
            return p == rhs.p && q == rhs.q && r == rhs.r && s == rhs.s;
    }
    return false;
}

std::string Branch::str() const {
    switch (kind) {
        case Kind::XConst: return "x = " + value.str();
        case Kind::YConst: return "y = " + value.str();
        case Kind::XInfinity: return "x = inf";
        case Kind::YInfinity: return "y = inf";
        case Kind::YofX: {
            RatFunc m = RatFunc::make(p * Poly::sym(Sym::x) + q, r * Poly::sym(Sym::x) + s);
            return "y = " + m.str();
        }
        case Kind::XofY: {
            RatFunc m = RatFunc::make(p * Poly::sym(Sym::y) + q, r * Poly::sym(Sym::y) + s);
            return "x = " + m.str();
        }
    }
    return "?";
}

std::string Branch::sort_key() const {
    std::ostringstream os;
    os << static_cast<int>(kind) << "|" << str();
    return os.str();
}

Cycle Cycle::make(std::string name, std::vector<CoordFunc> coords, std::string provenance) {
    bool has_x = false, has_y = false;
    for (const auto& g : coords) {
        has_x = has_x || g.depends_on(Sym::x);
        has_y = has_y || g.depends_on(Sym::y);
    }
    Cycle cy;
    cy.name = std::move(name);
    cy.provenance = std::move(provenance);
    if (has_x && !has_y) {
        // One-variable cycles are normalized to the variable y.
        for (auto& g : coords) g = g.swap_xy();
        has_x = false;
        has_y = true;
    }
    cy.dim = (has_x && has_y) ? 2 : (has_y ? 1 : 0);
    cy.coords = std::move(coords);
    return cy;
}

bool Cycle::operator==(const Cycle& rhs) const {
    if (coords.size() != rhs.coords.size()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!(coords[i] == rhs.coords[i])) return false;
    return true;
}

std::string Cycle::key() const {
    std::ostringstream os;
    os << arity();
    for (const auto& g : coords) os << "|" << g.str();
    return os.str();
}

std::string Cycle::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ", ";
        os << coords[i].str();
    }
    os << "]";
    return os.str();
}

std::vector<Branch> solve_branches(const CoordFunc& g, LocusTarget target, int dim) {
    std::vector<Branch> out;
    for (const auto& f : g.factors()) {
        const bool wanted = target == LocusTarget::Zero ? f.exponent > 0 : f.exponent < 0;
        if (!wanted) continue;
        const int mult = std::abs(f.exponent);
        const Atom& at = f.atom;
        const bool in_x = at.depends_on(Sym::x);
        const bool in_y = at.depends_on(Sym::y);
        if (in_y && in_x) {
            // y (p11 x + p01) = -(p10 x + p00)
            out.push_back(Branch::y_of_x(-at.p10(), -at.p00(), at.p11(), at.p01(), mult));
        } else if (in_y) {
            out.push_back(Branch::y_const(RatFunc::make(-at.p00(), at.p01()), mult));
        } else {
            assert(in_x);
            out.push_back(Branch::x_const(RatFunc::make(-at.p00(), at.p10()), mult));
        }
    }
    const int dx = g.degree(Sym::x);
    const int dy = g.degree(Sym::y);
    auto infinity_mult = [&](int deg) {
        return target == LocusTarget::Zero ? (deg < 0 ? -deg : 0) : (deg > 0 ? deg : 0);
    };
    if (dim == 2) {
        if (int m = infinity_mult(dx)) out.push_back(Branch::x_infinity(m));
        if (int m = infinity_mult(dy)) out.push_back(Branch::y_infinity(m));
    } else {
        assert(!g.depends_on(Sym::x));
        if (int m = infinity_mult(dy)) out.push_back(Branch::y_infinity(m));
    }
    std::sort(out.begin(), out.end(),
              [](const Branch& l, const Branch& r) { return l.sort_key() < r.sort_key(); });
    return out;
}

namespace {

struct PartialCoord {
    RatFunc scalar;
    std::vector<CoordFunc::Factor> factors;
    int zero_balance_pos = 0;
    int zero_balance_neg = 0;

    void take(const PolyFactorization& pf, int exponent) {
        scalar = scalar * RatFunc::from_poly(pf.content).pow(exponent);
        for (const auto& f : pf.atoms) {
            for (auto& have : factors) {
                if (have.atom == f.atom) {
                    have.exponent += f.exponent * exponent;
                    goto next;
                }
            }
            factors.push_back({f.atom, f.exponent * exponent});
        next:;
        }
    }

    void vanished(int exponent) {
        if (exponent > 0) zero_balance_pos += exponent;
        else zero_balance_neg -= exponent;
    }

    CoordOnBranch finish() const {
        if (zero_balance_pos > 0 && zero_balance_neg > 0)
            return {CoordOnBranch::Kind::Indeterminate, CoordFunc()};
        if (zero_balance_pos > 0) return {CoordOnBranch::Kind::IdentZero, CoordFunc()};
        if (zero_balance_neg > 0) return {CoordOnBranch::Kind::IdentInf, CoordFunc()};
        return {CoordOnBranch::Kind::Value, CoordBuilder::build(scalar, factors)};
    }
};

// Substitute x = n/d (constants in a,b,c) into one atom; nullopt when the
// atom vanishes identically on the line.
std::optional<PolyFactorization> atom_at_const(const Atom& at, Sym var, const Poly& n,
                                               const Poly& d) {
    Poly lin, cst;
    if (var == Sym::x) {
        lin = at.p11() * n + at.p01() * d;  // coefficient of y
        cst = at.p10() * n + at.p00() * d;
    } else {
        lin = at.p11() * n + at.p10() * d;  // coefficient of x
        cst = at.p01() * n + at.p00() * d;
    }
    Sym other = var == Sym::x ? Sym::y : Sym::x;
    Poly poly = lin * Poly::sym(other) + cst;
    if (poly.is_zero()) return std::nullopt;
    return factor_bilinear_poly(poly);
}

} // namespace

CoordOnBranch restrict_coord(const CoordFunc& g, const Branch& br) {
    PartialCoord acc;
    acc.scalar = g.scalar();

    switch (br.kind) {
        case Branch::Kind::XConst:
        case Branch::Kind::YConst: {
            const Sym var = br.kind == Branch::Kind::XConst ? Sym::x : Sym::y;
            const Poly& n = br.value.num();
            const Poly& d = br.value.den();
            for (const auto& f : g.factors()) {
                if (!f.atom.depends_on(var)) {
                    acc.take(PolyFactorization{Poly::constant(1), {{f.atom, 1}}}, f.exponent);
                    continue;
                }
                auto pf = atom_at_const(f.atom, var, n, d);
                if (!pf) {
                    acc.vanished(f.exponent);
                    continue;
                }
                acc.take(*pf, f.exponent);
                acc.scalar = acc.scalar * RatFunc::make(Poly::constant(1), d).pow(f.exponent);
            }
            break;
        }
        case Branch::Kind::XInfinity:
        case Branch::Kind::YInfinity: {
            const Sym var = br.kind == Branch::Kind::XInfinity ? Sym::x : Sym::y;
            const int deg = g.degree(var);
            if (deg > 0) return {CoordOnBranch::Kind::IdentInf, CoordFunc()};
            if (deg < 0) return {CoordOnBranch::Kind::IdentZero, CoordFunc()};
            for (const auto& f : g.factors()) {
                if (f.atom.degree(var) == 0) {
                    acc.take(PolyFactorization{Poly::constant(1), {{f.atom, 1}}}, f.exponent);
                    continue;
                }
                Poly lead = f.atom.poly().leading_coeff_in(var);
                acc.take(factor_bilinear_poly(lead), f.exponent);
            }
            break;
        }
        case Branch::Kind::YofX:
        case Branch::Kind::XofY: {
            const Sym var = br.kind == Branch::Kind::YofX ? Sym::y : Sym::x;
            const Sym other = var == Sym::y ? Sym::x : Sym::y;
            const Poly t = Poly::sym(other);
            const Poly num = br.p * t + br.q;
            const Poly den = br.r * t + br.s;
            for (const auto& f : g.factors()) {
                if (!f.atom.depends_on(var)) {
                    acc.take(PolyFactorization{Poly::constant(1), {{f.atom, 1}}}, f.exponent);
                    continue;
                }
                // atom(other, num/den) cleared by den.
                Poly lifted = f.atom.poly().coeff_of(var, 1) * num +
                              f.atom.poly().coeff_of(var, 0) * den;
                if (lifted.is_zero()) {
                    acc.vanished(f.exponent);
                    continue;
                }
                try {
                    acc.take(factor_bilinear_poly(lifted), f.exponent);
                } catch (const NonBilinearIrreducible& e) {
                    throw UnsolvableBranch(e.offending);
                }
                acc.take(factor_bilinear_poly(den), -f.exponent);
            }
            break;
        }
    }
    return acc.finish();
}

bool RestrictedTuple::proper() const {
    for (const auto& c : coords)
        if (c.kind != CoordOnBranch::Kind::Value) return false;
    return true;
}

Cycle RestrictedTuple::to_cycle(const std::string& name) const {
    std::vector<CoordFunc> cs;
    cs.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].kind == CoordOnBranch::Kind::Indeterminate)
            throw BasePoint("coordinate " + std::to_string(parent_index[i]));
        if (coords[i].kind != CoordOnBranch::Kind::Value)
            throw Error("improper face tuple has no cycle form");
        cs.push_back(coords[i].value);
    }
    return Cycle::make(name, std::move(cs));
}

RestrictedTuple restrict_to_branch(const Cycle& cy, int solved_index, const Branch& br) {
    RestrictedTuple out;
    out.dim = cy.dim - 1;
    for (int i = 1; i <= cy.arity(); ++i) {
        if (i == solved_index) continue;
        out.coords.push_back(restrict_coord(cy.coords[i - 1], br));
        out.parent_index.push_back(i);
    }
    return out;
}

Cycle substitute(const Cycle& cy, int solved_index, const Branch& br) {
    if (cy.dim < 1) throw Error("cannot take faces of a point cycle");
    RestrictedTuple rt = restrict_to_branch(cy, solved_index, br);
    for (std::size_t i = 0; i < rt.coords.size(); ++i)
        if (rt.coords[i].kind == CoordOnBranch::Kind::Indeterminate)
            throw BasePoint("coordinate " + std::to_string(rt.parent_index[i]));
    return rt.to_cycle();
}

} // namespace cubecert
