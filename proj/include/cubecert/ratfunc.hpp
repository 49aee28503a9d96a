#pragma once

#include "cubecert/poly.hpp"

namespace cubecert {

// Result of an exact evaluation on the projective line: a finite rational,
// the point at infinity, or a genuine 0/0.
struct EvalResult {
    enum class Kind { Value, Infinity, Indeterminate };
    Kind kind = Kind::Value;
    Rat value;

    bool is_value() const { return kind == Kind::Value; }
    bool is_infinity() const { return kind == Kind::Infinity; }
    bool is_indeterminate() const { return kind == Kind::Indeterminate; }
    static EvalResult of(const Rat& v) { return {Kind::Value, v}; }
    static EvalResult infinity() { return {Kind::Infinity, Rat(0)}; }
    static EvalResult indeterminate() { return {Kind::Indeterminate, Rat(0)}; }
};

struct InfLimit;

// Normalized rational function in Q(a,b,c,x,y).
//
// Canonical form: gcd(num,den) is a unit, the denominator has integer
// coprime coefficients and positive leading coefficient under the fixed
// term order. Equal functions compare equal structurally.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::constant(1)) {}
    static RatFunc make(Poly num, Poly den);
    static RatFunc from_poly(Poly p) { return RatFunc(std::move(p), Poly::constant(1), true); }
    static RatFunc constant(const Rat& c) { return from_poly(Poly::constant(c)); }
    static RatFunc constant(long c) { return constant(make_rat(c)); }
    static RatFunc sym(Sym s) { return from_poly(Poly::sym(s)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat as_constant() const { return num_.as_constant() / den_.as_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool depends_on(Sym s) const { return num_.depends_on(s) || den_.depends_on(s); }
    int degree(Sym s) const { return num_.degree(s) - den_.degree(s); }

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    RatFunc operator+(const RatFunc& rhs) const;
    RatFunc operator-(const RatFunc& rhs) const;
    RatFunc operator*(const RatFunc& rhs) const;
    RatFunc operator/(const RatFunc& rhs) const;
    RatFunc inverse() const;
    RatFunc pow(int e) const;

    bool operator==(const RatFunc& rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }
    bool operator!=(const RatFunc& rhs) const { return !(*this == rhs); }
    int compare(const RatFunc& rhs) const;

    // Exact evaluation. Throws MissingSymbol when the assignment does not
    // cover a symbol this function uses; 0/0 is a value, not an error.
    EvalResult eval(const Assignment& at, bool allow_infinity = true) const;

    // Limit along var -> infinity, as a function of the remaining symbols.
    InfLimit at_infinity(Sym var) const;

    // Composition: substitute a rational function for one symbol.
    RatFunc substituted(Sym s, const RatFunc& value) const;
    RatFunc swap_xy() const { return RatFunc(num_.swap_xy(), den_.swap_xy()); }

    std::string str() const;

private:
    RatFunc(Poly num, Poly den, bool /*already_canonical*/) : num_(std::move(num)), den_(std::move(den)) {}
    RatFunc(Poly num, Poly den);
    Poly num_;
    Poly den_;
};

// Limit of a rational function along one variable going to infinity.
struct InfLimit {
    enum class Kind { Finite, Infinity, Zero };
    Kind kind;
    RatFunc value;  // only meaningful for Finite
};

RatFunc rat_normalize(const Poly& num, const Poly& den);

} // namespace cubecert
