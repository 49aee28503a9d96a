#include "cubecert/poly.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

namespace cubecert {

std::optional<Sym> sym_from_char(char ch) {
    switch (ch) {
        case 'a': return Sym::a;
        case 'b': return Sym::b;
        case 'c': return Sym::c;
        case 'x': return Sym::x;
        case 'y': return Sym::y;
        default: return std::nullopt;
    }
}

bool TermOrder::less(const Exp& lhs, const Exp& rhs) const {
    int dl = 0, dr = 0;
    for (int i = 0; i < kNumSyms; ++i) { dl += lhs[i]; dr += rhs[i]; }
    if (dl != dr) return dl < dr;
    for (int i = kNumSyms - 1; i >= 0; --i)
        if (lhs[i] != rhs[i]) return lhs[i] < rhs[i];
    return false;
}

Poly Poly::constant(const Rat& c) {
    Poly p;
    if (sgn(c) != 0) p.terms_.emplace(Exp{0, 0, 0, 0, 0}, c);
    return p;
}

Poly Poly::sym(Sym s) {
    Poly p;
    Exp e{0, 0, 0, 0, 0};
    e[static_cast<int>(s)] = 1;
    p.terms_.emplace(e, make_rat(1));
    return p;
}

Poly Poly::monomial(const Rat& coeff, const Exp& exp) {
    Poly p;
    if (sgn(coeff) != 0) p.terms_.emplace(exp, coeff);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    return terms_.begin()->first == Exp{0, 0, 0, 0, 0};
}

Rat Poly::constant_term() const {
    auto it = terms_.find(Exp{0, 0, 0, 0, 0});
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat Poly::as_constant() const {
    assert(is_constant());
    return constant_term();
}

int Poly::degree(Sym s) const {
    int d = 0;
    const int i = static_cast<int>(s);
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int t = 0;
        for (int v : e) t += v;
        d = std::max(d, t);
    }
    return d;
}

const Rat& Poly::leading_coeff() const {
    assert(!terms_.empty());
    return terms_.begin()->second;
}

const Exp& Poly::leading_exp() const {
    assert(!terms_.empty());
    return terms_.begin()->first;
}

Poly Poly::coeff_of(Sym s, int k) const {
    const int i = static_cast<int>(s);
    Poly out;
    for (const auto& [e, c] : terms_) {
        if (e[i] != k) continue;
        Exp r = e;
        r[i] = 0;
        out.add_term(r, c);
    }
    return out;
}

Poly Poly::leading_coeff_in(Sym s) const {
    return coeff_of(s, degree(s));
}

void Poly::add_term(const Exp& e, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

Poly Poly::operator+(const Poly& rhs) const {
    Poly out = *this;
    out += rhs;
    return out;
}

Poly Poly::operator-(const Poly& rhs) const {
    Poly out = *this;
    out -= rhs;
    return out;
}

Poly Poly::operator*(const Poly& rhs) const {
    Poly out;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : rhs.terms_) {
            Exp e;
            for (int i = 0; i < kNumSyms; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    }
    return out;
}

Poly Poly::operator*(const Rat& rhs) const {
    Poly out;
    if (sgn(rhs) == 0) return out;
    out = *this;
    for (auto& [e, c] : out.terms_) c *= rhs;
    return out;
}

Poly Poly::pow(int e) const {
    assert(e >= 0);
    Poly out = Poly::constant(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

int Poly::compare(const Poly& rhs) const {
    auto it = terms_.begin();
    auto jt = rhs.terms_.begin();
    TermOrder ord;
    for (; it != terms_.end() && jt != rhs.terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return ord.less(jt->first, it->first) ? 1 : -1;
        int c = cmp(it->second, jt->second);
        if (c != 0) return c;
    }
    if (it != terms_.end()) return 1;
    if (jt != rhs.terms_.end()) return -1;
    return 0;
}

Rat Poly::content() const {
    if (terms_.empty()) return Rat(0);
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), numer(c).get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), denom(c).get_mpz_t());
    }
    Rat ct = make_rat(num_gcd, den_lcm);
    if (sgn(leading_coeff()) < 0) ct = -ct;
    return ct;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    Rat ct = content();
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c /= ct;
    return out;
}

Poly Poly::substituted(Sym s, const Poly& value) const {
    const int i = static_cast<int>(s);
    // Cache powers of the replacement.
    std::vector<Poly> powers{Poly::constant(1)};
    Poly out;
    for (const auto& [e, c] : terms_) {
        while (static_cast<int>(powers.size()) <= e[i])
            powers.push_back(powers.back() * value);
        Exp r = e;
        r[i] = 0;
        out += Poly::monomial(c, r) * powers[e[i]];
    }
    return out;
}

Poly Poly::swap_xy() const {
    Poly out;
    for (const auto& [e, c] : terms_) {
        Exp r = e;
        std::swap(r[static_cast<int>(Sym::x)], r[static_cast<int>(Sym::y)]);
        out.add_term(r, c);
    }
    return out;
}

Rat Poly::eval(const Assignment& at) const {
    std::array<const Rat*, kNumSyms> vals{};
    for (Sym s : kAllSyms) {
        auto it = at.find(s);
        if (it != at.end()) vals[static_cast<int>(s)] = &it->second;
    }
    Rat sum(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < kNumSyms; ++i) {
            if (e[i] == 0) continue;
            if (!vals[i]) throw MissingSymbol(static_cast<Sym>(i));
            Rat p = *vals[i];
            for (int k = 1; k < e[i]; ++k) p *= *vals[i];
            t *= p;
        }
        sum += t;
    }
    return sum;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat ac = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        bool has_var = e != Exp{0, 0, 0, 0, 0};
        if (!has_var || ac != 1) {
            os << ac.get_str();
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (int i = 0; i < kNumSyms; ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << sym_name(static_cast<Sym>(i));
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    Poly rem = a;
    Poly quot;
    const Exp& lb = b.leading_exp();
    const Rat& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        const Exp& lr = rem.leading_exp();
        Exp q;
        for (int i = 0; i < kNumSyms; ++i) {
            q[i] = lr[i] - lb[i];
            if (q[i] < 0) return std::nullopt;
        }
        Poly t = Poly::monomial(rem.leading_coeff() / cb, q);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

namespace {

// One variable of a multivariate pseudo-remainder: lc(g)^k * f reduced by g.
Poly pseudo_rem(Poly f, const Poly& g, Sym v) {
    const int dg = g.degree(v);
    const Poly lcg = g.leading_coeff_in(v);
    while (!f.is_zero() && f.degree(v) >= dg) {
        const int df = f.degree(v);
        Poly lcf = f.leading_coeff_in(v);
        Exp shift{0, 0, 0, 0, 0};
        shift[static_cast<int>(v)] = df - dg;
        f = f * lcg - g * (lcf * Poly::monomial(make_rat(1), shift));
    }
    return f;
}

// Content of p with respect to v: gcd of the coefficient polynomials.
Poly content_in(const Poly& p, Sym v) {
    Poly ct;
    for (int k = 0; k <= p.degree(v); ++k) {
        Poly c = p.coeff_of(v, k);
        if (c.is_zero()) continue;
        ct = ct.is_zero() ? c.primitive_part() : poly_gcd(ct, c);
        if (ct.is_constant()) return Poly::constant(1);
    }
    return ct;
}

std::optional<Sym> main_var(const Poly& p, const Poly& q) {
    for (int i = kNumSyms - 1; i >= 0; --i) {
        Sym s = static_cast<Sym>(i);
        if (p.depends_on(s) || q.depends_on(s)) return s;
    }
    return std::nullopt;
}

// Coefficients of p as a univariate polynomial in v with the other symbols
// specialized; index = exponent of v.
std::vector<Rat> specialize_univar(const Poly& p, Sym v, const Assignment& at) {
    std::vector<Rat> out(static_cast<std::size_t>(p.degree(v)) + 1, Rat(0));
    for (int k = 0; k <= p.degree(v); ++k) {
        Poly c = p.coeff_of(v, k);
        if (!c.is_zero()) out[static_cast<std::size_t>(k)] = c.eval(at);
    }
    while (out.size() > 1 && sgn(out.back()) == 0) out.pop_back();
    return out;
}

int univar_gcd_degree(std::vector<Rat> f, std::vector<Rat> g) {
    auto deg = [](const std::vector<Rat>& p) {
        return static_cast<int>(p.size()) - 1;
    };
    auto is_zero = [](const std::vector<Rat>& p) {
        return p.size() == 1 && sgn(p[0]) == 0;
    };
    while (!is_zero(g)) {
        // f mod g
        while (deg(f) >= deg(g) && !is_zero(f)) {
            Rat q = f.back() / g.back();
            int shift = deg(f) - deg(g);
            for (int i = 0; i <= deg(g); ++i)
                f[static_cast<std::size_t>(i + shift)] -= q * g[static_cast<std::size_t>(i)];
            while (f.size() > 1 && sgn(f.back()) == 0) f.pop_back();
        }
        std::swap(f, g);
    }
    return deg(f);
}

// Probe whether gcd(a,b) can involve v at all: at a random specialization of
// the remaining symbols that keeps both leading coefficients alive, the
// degree of the univariate gcd bounds deg_v(gcd) from above.
bool gcd_free_of(const Poly& a, const Poly& b, Sym v) {
    const Poly la = a.leading_coeff_in(v);
    const Poly lb = b.leading_coeff_in(v);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Assignment at;
        for (Sym s : kAllSyms)
            if (s != v)
                at[s] = make_rat(static_cast<long>(rng() % 2001) - 1000,
                                 static_cast<long>(rng() % 7) + 1);
        at[v] = Rat(0);  // unused but keeps eval total
        if (sgn(la.eval(at)) == 0 || sgn(lb.eval(at)) == 0) continue;
        return univar_gcd_degree(specialize_univar(a, v, at), specialize_univar(b, v, at)) == 0;
    }
    return false;
}

} // namespace

namespace {

// Largest monomial dividing every term.
Exp monomial_part(const Poly& p) {
    Exp m{};
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (first) { m = e; first = false; continue; }
        for (int i = 0; i < kNumSyms; ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
}

Poly divide_by_monomial(const Poly& p, const Exp& m) {
    Poly out;
    for (const auto& [e, c] : p.terms()) {
        Exp r;
        for (int i = 0; i < kNumSyms; ++i) r[i] = e[i] - m[i];
        out += Poly::monomial(c, r);
    }
    return out;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();

    // Shared monomial part first; it is both cheap and common.
    Exp ma = monomial_part(a);
    Exp mb = monomial_part(b);
    Exp shared{};
    bool any = false, strip_a = false, strip_b = false;
    for (int i = 0; i < kNumSyms; ++i) {
        shared[i] = std::min(ma[i], mb[i]);
        any = any || shared[i] > 0;
        strip_a = strip_a || ma[i] > 0;
        strip_b = strip_b || mb[i] > 0;
    }
    if (strip_a || strip_b) {
        Poly ra = strip_a ? divide_by_monomial(a, ma) : a;
        Poly rb = strip_b ? divide_by_monomial(b, mb) : b;
        Poly g = poly_gcd(ra, rb);
        if (any) g = g * Poly::monomial(make_rat(1), shared);
        return g.primitive_part();
    }

    auto v = main_var(a, b);
    if (!v) return Poly::constant(1);
    if (!a.depends_on(*v)) return poly_gcd(a, content_in(b, *v));
    if (!b.depends_on(*v)) return poly_gcd(b, content_in(a, *v));

    if (gcd_free_of(a, b, *v)) {
        // The gcd cannot involve the main variable, so it divides both
        // contents.
        return poly_gcd(content_in(a, *v), content_in(b, *v));
    }

    Poly ca = content_in(a, *v);
    Poly cb = content_in(b, *v);
    Poly cg = poly_gcd(ca, cb);
    Poly f = *divide_exact(a.primitive_part(), ca);
    Poly g = *divide_exact(b.primitive_part(), cb);
    if (f.degree(*v) < g.degree(*v)) std::swap(f, g);
    while (true) {
        Poly r = pseudo_rem(f, g, *v);
        if (r.is_zero()) break;
        if (!r.depends_on(*v)) return cg;  // coprime in v
        f = g;
        g = *divide_exact(r.primitive_part(), content_in(r, *v));
    }
    Poly pp = *divide_exact(g.primitive_part(), content_in(g, *v));
    return (cg * pp).primitive_part();
}

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly();
    const Exp& le = p.leading_exp();
    Exp half;
    for (int i = 0; i < kNumSyms; ++i) {
        if (le[i] % 2 != 0) return std::nullopt;
        half[i] = le[i] / 2;
    }
    Rat lc_root;
    if (!rat_sqrt(p.leading_coeff(), lc_root)) return std::nullopt;

    Poly root = Poly::monomial(lc_root, half);
    const Poly twice_lead = Poly::monomial(lc_root * 2, half);
    TermOrder ord;
    Exp prev = p.leading_exp();
    bool have_prev = false;
    // Schoolbook square root: peel the next term of the root off the
    // leading term of the residual. Fails (strict descent violated or
    // non-divisible leading term) exactly when p is not a perfect square.
    while (true) {
        Poly resid = p - root * root;
        if (resid.is_zero()) return root;
        const Exp& lr = resid.leading_exp();
        if (have_prev && !ord.less(lr, prev)) return std::nullopt;
        prev = lr;
        have_prev = true;
        Exp q;
        for (int i = 0; i < kNumSyms; ++i) {
            q[i] = lr[i] - half[i];
            if (q[i] < 0) return std::nullopt;
        }
        root += Poly::monomial(resid.leading_coeff() / (lc_root * 2), q);
    }
}

} // namespace cubecert
