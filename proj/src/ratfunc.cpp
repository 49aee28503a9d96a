#include "cubecert/ratfunc.hpp"

#include <cassert>
#include <sstream>

namespace cubecert {

RatFunc::RatFunc(Poly num, Poly den) {
    if (den.is_zero()) throw ZeroDenominator();
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly::constant(1);
        return;
    }
    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
        num = *divide_exact(num, g);
        den = *divide_exact(den, g);
    }
    Rat ct = den.content();
    den_ = den.primitive_part();
    num_ = num * (1 / ct);
}

RatFunc RatFunc::make(Poly num, Poly den) { return RatFunc(std::move(num), std::move(den)); }

RatFunc rat_normalize(const Poly& num, const Poly& den) { return RatFunc::make(num, den); }

bool RatFunc::is_one() const {
    return den_.is_constant() && num_.is_constant() && !num_.is_zero() &&
           num_.as_constant() == den_.as_constant();
}

RatFunc RatFunc::operator+(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc RatFunc::operator-(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RatFunc RatFunc::operator*(const RatFunc& rhs) const {
    return RatFunc(num_ * rhs.num_, den_ * rhs.den_);
}

RatFunc RatFunc::operator/(const RatFunc& rhs) const {
    if (rhs.is_zero()) throw ZeroDenominator();
    return RatFunc(num_ * rhs.den_, den_ * rhs.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw ZeroDenominator();
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    return RatFunc(num_.pow(e), den_.pow(e));
}

int RatFunc::compare(const RatFunc& rhs) const {
    int c = num_.compare(rhs.num_);
    if (c != 0) return c;
    return den_.compare(rhs.den_);
}

EvalResult RatFunc::eval(const Assignment& at, bool allow_infinity) const {
    Rat n = num_.eval(at);
    Rat d = den_.eval(at);
    if (sgn(d) != 0) return EvalResult::of(n / d);
    if (sgn(n) == 0) return EvalResult::indeterminate();
    if (!allow_infinity) throw Error("pole encountered with allow_infinity off");
    return EvalResult::infinity();
}

InfLimit RatFunc::at_infinity(Sym var) const {
    int dn = num_.degree(var);
    int dd = den_.degree(var);
    if (dn > dd) return {InfLimit::Kind::Infinity, RatFunc()};
    if (dn < dd) return {InfLimit::Kind::Zero, RatFunc()};
    return {InfLimit::Kind::Finite,
            RatFunc(num_.leading_coeff_in(var), den_.leading_coeff_in(var))};
}

RatFunc RatFunc::substituted(Sym s, const RatFunc& value) const {
    // p(.., s, ..) -> sum c_i v^i w^(d-i) / w^d with value = v/w.
    auto lift = [&](const Poly& p) {
        const int d = p.degree(s);
        Poly out;
        std::vector<Poly> vp{Poly::constant(1)}, wp{Poly::constant(1)};
        for (int i = 1; i <= d; ++i) {
            vp.push_back(vp.back() * value.num());
            wp.push_back(wp.back() * value.den());
        }
        for (int i = 0; i <= d; ++i) {
            Poly c = p.coeff_of(s, i);
            if (c.is_zero()) continue;
            out += c * vp[i] * wp[d - i];
        }
        return std::pair<Poly, int>{out, d};
    };
    auto [ln, dn] = lift(num_);
    auto [ld, dd] = lift(den_);
    // Balance the cleared denominators w^dn vs w^dd.
    if (dn < dd) ln = ln * value.den().pow(dd - dn);
    if (dd < dn) ld = ld * value.den().pow(dn - dd);
    return RatFunc(ln, ld);
}

std::string RatFunc::str() const {
    if (is_polynomial()) {
        if (den_.as_constant() == 1) return num_.str();
    }
    std::ostringstream os;
    bool paren_num = num_.term_count() > 1;
    if (paren_num) os << "(" << num_.str() << ")";
    else os << num_.str();
    os << "/";
    if (den_.term_count() > 1) os << "(" << den_.str() << ")";
    else os << den_.str();
    return os.str();
}

} // namespace cubecert
