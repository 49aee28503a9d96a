#include "cubecert/coord.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cubecert {

namespace {

// Strip the (a,b,c)-content of p: gcd of the coefficients of the x,y
// monomials. Returns the content; p is replaced by its primitive part.
Poly strip_abc_content(Poly& p) {
    Poly ct;
    const int dx_max = p.degree(Sym::x);
    const int dy_max = p.degree(Sym::y);
    for (int dx = 0; dx <= dx_max && !(ct.is_constant() && !ct.is_zero()); ++dx) {
        for (int dy = 0; dy <= dy_max; ++dy) {
            Poly c = p.coeff_of(Sym::x, dx).coeff_of(Sym::y, dy);
            if (c.is_zero()) continue;
            ct = ct.is_zero() ? c.primitive_part() : poly_gcd(ct, c);
            if (ct.is_constant()) break;
        }
    }
    Poly q = ct.is_constant() ? p : *divide_exact(p, ct);
    Rat rc = q.content();
    p = q.primitive_part();
    return ct.is_constant() ? Poly::constant(rc) : ct * rc;
}

void append(std::vector<CoordFunc::Factor>& dst, const Atom& atom, int e) {
    for (auto& f : dst) {
        if (f.atom == atom) {
            f.exponent += e;
            return;
        }
    }
    dst.push_back({atom, e});
}

void append_all(std::vector<CoordFunc::Factor>& dst, const std::vector<CoordFunc::Factor>& src,
                int scale = 1) {
    for (const auto& f : src) append(dst, f.atom, f.exponent * scale);
}

// Make one atom out of a bilinear primitive polynomial, splitting the
// degenerate rank-one case (linear-in-x times linear-in-y) first.
void emit_bilinear(const Poly& p, int mult, PolyFactorization& out);

// Factor a polynomial that is univariate in v over Q[a,b,c].
void factor_univar(Poly p, Sym v, int mult, PolyFactorization& out) {
    const int d = p.degree(v);
    if (d == 0) {
        out.content = out.content * p.pow(mult);
        return;
    }
    if (d == 1) {
        Poly ct = strip_abc_content(p);
        out.content = out.content * ct.pow(mult);
        append(out.atoms, Atom(p), mult);
        return;
    }
    if (d == 2) {
        const Poly P = p.coeff_of(v, 2);
        const Poly Q = p.coeff_of(v, 1);
        const Poly R = p.coeff_of(v, 0);
        Poly disc = Q * Q - Poly::constant(4) * P * R;
        auto S = poly_sqrt(disc);
        if (!S) throw NonBilinearIrreducible(p);
        // p = (2Pv + Q - S)(2Pv + Q + S) / 4P
        Poly two_pv = Poly::constant(2) * P * Poly::sym(v);
        Poly f1 = two_pv + Q - *S;
        Poly f2 = two_pv + Q + *S;
        PolyFactorization sub;
        sub.content = Poly::constant(1);
        factor_univar(f1, v, 1, sub);
        factor_univar(f2, v, 1, sub);
        Poly extra = *divide_exact(sub.content, Poly::constant(4) * P);
        out.content = out.content * extra.pow(mult);
        append_all(out.atoms, sub.atoms, mult);
        return;
    }
    throw NonBilinearIrreducible(p);
}

// Factor a genuinely two-variable polynomial, primitive over (a,b,c),
// not divisible by x or y.
void factor_bivar(Poly p, int mult, PolyFactorization& out) {
    int m = p.degree(Sym::x);
    int n = p.degree(Sym::y);
    if (m == 0) return factor_univar(std::move(p), Sym::y, mult, out);
    if (n == 0) return factor_univar(std::move(p), Sym::x, mult, out);

    // Peel factors free of one variable: gcd of coefficients in that variable.
    for (Sym v : {Sym::x, Sym::y}) {
        Poly ct;
        for (int k = 0; k <= p.degree(v); ++k) {
            Poly c = p.coeff_of(v, k);
            if (c.is_zero()) continue;
            ct = ct.is_zero() ? c.primitive_part() : poly_gcd(ct, c);
            if (ct.is_constant()) break;
        }
        if (!ct.is_constant()) {
            PolyFactorization sub;
            sub.content = Poly::constant(1);
            factor_bivar(ct, 1, sub);
            out.content = out.content * sub.content.pow(mult);
            append_all(out.atoms, sub.atoms, mult);
            p = *divide_exact(p, ct);
        }
    }
    m = p.degree(Sym::x);
    n = p.degree(Sym::y);
    if (m == 0 || n == 0) return factor_bivar(std::move(p), mult, out);

    if (m == 1 && n == 1) {
        emit_bilinear(p, mult, out);
        return;
    }
    // A product of bilinear atoms with x-degree 1 and y-degree >= 2 would
    // need a y-only factor, which the peel above already removed.
    Sym v;
    if (m == 2) v = Sym::x;
    else if (n == 2) v = Sym::y;
    else throw NonBilinearIrreducible(p);

    // Quadratic in v over Q[a,b,c][other]: split by the discriminant.
    const Poly P = p.coeff_of(v, 2);
    const Poly Q = p.coeff_of(v, 1);
    const Poly R = p.coeff_of(v, 0);
    Poly disc = Q * Q - Poly::constant(4) * P * R;
    auto S = poly_sqrt(disc);
    if (!S) throw NonBilinearIrreducible(p);
    Poly two_pv = Poly::constant(2) * P * Poly::sym(v);
    Poly f1 = two_pv + Q - *S;
    Poly f2 = two_pv + Q + *S;
    // p * 4P == f1 * f2; pull p's atoms out of the halves by exact division.
    PolyFactorization sub;
    sub.content = Poly::constant(1);
    factor_bivar(f1, 1, sub);
    factor_bivar(f2, 1, sub);
    Poly rest = p;
    std::vector<CoordFunc::Factor> got;
    for (const auto& f : sub.atoms) {
        int e = 0;
        while (e < f.exponent) {
            auto q = divide_exact(rest, f.atom.poly());
            if (!q) break;
            rest = *q;
            ++e;
        }
        if (e > 0) append(got, f.atom, e);
    }
    if (!rest.is_constant()) throw NonBilinearIrreducible(p);
    out.content = out.content * rest.pow(mult);
    append_all(out.atoms, got, mult);
}

void emit_bilinear(const Poly& p_in, int mult, PolyFactorization& out) {
    Poly p = p_in;
    Poly ct = strip_abc_content(p);
    if (ct != Poly::constant(1)) out.content = out.content * ct.pow(mult);
    Atom atom(p);
    Poly al = atom.p11();
    Poly be = atom.p10();
    Poly ga = atom.p01();
    Poly de = atom.p00();
    if (!al.is_zero()) {
        Poly det = al * de - be * ga;
        if (det.is_zero()) {
            // Rank one: al*p = (al*y + be)(al*x + ga).
            PolyFactorization sub;
            sub.content = Poly::constant(1);
            factor_univar(al * Poly::sym(Sym::y) + be, Sym::y, 1, sub);
            factor_univar(al * Poly::sym(Sym::x) + ga, Sym::x, 1, sub);
            Poly extra = *divide_exact(sub.content, al);
            out.content = out.content * extra.pow(mult);
            append_all(out.atoms, sub.atoms, mult);
            return;
        }
    }
    append(out.atoms, atom, mult);
}

} // namespace

PolyFactorization factor_bilinear_poly(const Poly& p) {
    assert(!p.is_zero());
    PolyFactorization out;
    out.content = Poly::constant(1);
    Poly work = p;
    out.content = out.content * strip_abc_content(work);
    // Monomial atoms x and y.
    for (Sym v : {Sym::x, Sym::y}) {
        int k = 0;
        while (true) {
            auto q = divide_exact(work, Poly::sym(v));
            if (!q) break;
            work = *q;
            ++k;
        }
        if (k > 0) append(out.atoms, Atom(Poly::sym(v)), k);
    }
    if (!work.is_constant()) factor_bivar(std::move(work), 1, out);
    else out.content = out.content * work;
    // Drop merged-away factors.
    std::erase_if(out.atoms, [](const CoordFunc::Factor& f) { return f.exponent == 0; });
    return out;
}

CoordFunc CoordFunc::from_scalar(RatFunc s) {
    if (s.is_zero()) throw Error("coordinate function must be nonzero");
    CoordFunc out;
    out.scalar_ = std::move(s);
    return out;
}

CoordFunc CoordBuilder::build(RatFunc scalar, std::vector<CoordFunc::Factor> factors) {
    CoordFunc out = CoordFunc::from_scalar(std::move(scalar));
    out.factors_ = std::move(factors);
    std::erase_if(out.factors_, [](const CoordFunc::Factor& f) { return f.exponent == 0; });
    out.sort_factors();
    return out;
}

CoordFunc CoordFunc::factor(const RatFunc& f) {
    if (f.is_zero()) throw Error("coordinate function must be nonzero");
    PolyFactorization fn = factor_bilinear_poly(f.num());
    PolyFactorization fd = factor_bilinear_poly(f.den());
    CoordFunc out;
    out.scalar_ = RatFunc::make(fn.content, fd.content);
    out.factors_ = fn.atoms;
    append_all(out.factors_, fd.atoms, -1);
    std::erase_if(out.factors_, [](const Factor& f2) { return f2.exponent == 0; });
    out.sort_factors();
    return out;
}

RatFunc CoordFunc::expand() const {
    RatFunc acc = scalar_;
    for (const auto& f : factors_)
        acc = acc * RatFunc::from_poly(f.atom.poly()).pow(f.exponent);
    return acc;
}

bool CoordFunc::depends_on(Sym s) const {
    if (scalar_.depends_on(s)) return true;
    for (const auto& f : factors_)
        if (f.atom.depends_on(s)) return true;
    return false;
}

int CoordFunc::degree(Sym s) const {
    int d = 0;
    for (const auto& f : factors_) d += f.exponent * f.atom.degree(s);
    return d;
}

void CoordFunc::push_factor(const Atom& atom, int exponent) {
    append(factors_, atom, exponent);
}

void CoordFunc::sort_factors() {
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& l, const Factor& r) { return l.atom.compare(r.atom) < 0; });
}

CoordFunc CoordFunc::operator*(const CoordFunc& rhs) const {
    CoordFunc out;
    out.scalar_ = scalar_ * rhs.scalar_;
    out.factors_ = factors_;
    append_all(out.factors_, rhs.factors_);
    std::erase_if(out.factors_, [](const Factor& f) { return f.exponent == 0; });
    out.sort_factors();
    return out;
}

CoordFunc CoordFunc::pow(int e) const {
    CoordFunc out;
    if (e == 0) return out;
    out.scalar_ = scalar_.pow(e);
    out.factors_ = factors_;
    for (auto& f : out.factors_) f.exponent *= e;
    return out;
}

CoordFunc CoordFunc::negated() const {
    CoordFunc out = *this;
    out.scalar_ = -out.scalar_;
    return out;
}

CoordFunc CoordFunc::swap_xy() const {
    CoordFunc out;
    out.scalar_ = scalar_;
    for (const auto& f : factors_) {
        PolyFactorization pf = factor_bilinear_poly(f.atom.poly().swap_xy());
        out.scalar_ = out.scalar_ * RatFunc::from_poly(pf.content).pow(f.exponent);
        append_all(out.factors_, pf.atoms, f.exponent);
    }
    std::erase_if(out.factors_, [](const Factor& f) { return f.exponent == 0; });
    out.sort_factors();
    return out;
}

bool CoordFunc::operator==(const CoordFunc& rhs) const { return compare(rhs) == 0; }

int CoordFunc::compare(const CoordFunc& rhs) const {
    if (factors_.size() != rhs.factors_.size())
        return factors_.size() < rhs.factors_.size() ? -1 : 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        int c = factors_[i].atom.compare(rhs.factors_[i].atom);
        if (c != 0) return c;
        if (factors_[i].exponent != rhs.factors_[i].exponent)
            return factors_[i].exponent < rhs.factors_[i].exponent ? -1 : 1;
    }
    return scalar_.compare(rhs.scalar_);
}

std::string CoordFunc::str() const {
    std::ostringstream os;
    bool lead = true;
    if (!scalar_.is_one() || factors_.empty()) {
        os << scalar_.str();
        lead = false;
    }
    for (const auto& f : factors_) {
        if (!lead) os << " * ";
        lead = false;
        os << "(" << f.atom.str() << ")";
        if (f.exponent != 1) os << "^" << f.exponent;
    }
    return os.str();
}

} // namespace cubecert
