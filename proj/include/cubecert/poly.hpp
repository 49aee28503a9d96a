#pragma once

#include "cubecert/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace cubecert {

// The fixed symbol set. Everything in this kernel lives in Q[a,b,c,x,y];
// a,b,c are the parameters of the hypothesis ledger, x,y the cycle variables.
enum class Sym : int { a = 0, b = 1, c = 2, x = 3, y = 4 };

constexpr int kNumSyms = 5;
constexpr std::array<Sym, kNumSyms> kAllSyms{Sym::a, Sym::b, Sym::c, Sym::x, Sym::y};

inline char sym_name(Sym s) { return "abcxy"[static_cast<int>(s)]; }
std::optional<Sym> sym_from_char(char ch);

// Exponent vector over (a,b,c,x,y).
using Exp = std::array<int, kNumSyms>;

// Graded lexicographic term order, a<b<c<x<y. Larger total degree first,
// ties broken on the exponent of y, then x, then c, b, a.
struct TermOrder {
    bool less(const Exp& lhs, const Exp& rhs) const;
    // std::map comparator: orders terms descending so begin() is leading.
    bool operator()(const Exp& lhs, const Exp& rhs) const { return less(rhs, lhs); }
};

struct MissingSymbol : Error {
    explicit MissingSymbol(Sym s)
        : Error(std::string("evaluation is missing symbol ") + sym_name(s)) {}
};

using Assignment = std::map<Sym, Rat>;

// Exact multivariate polynomial over Q in the fixed symbol set.
// Invariants: no zero coefficients stored; the zero polynomial is an empty map.
class Poly {
public:
    using TermMap = std::map<Exp, Rat, TermOrder>;

    Poly() = default;
    static Poly constant(const Rat& c);
    static Poly constant(long c) { return constant(make_rat(c)); }
    static Poly sym(Sym s);
    // x^e as a convenience for building monomials.
    static Poly monomial(const Rat& coeff, const Exp& exp);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant term (zero when absent).
    Rat constant_term() const;
    // Defined only for constants.
    Rat as_constant() const;

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    int degree(Sym s) const;
    int total_degree() const;
    bool depends_on(Sym s) const { return degree(s) > 0; }

    const Rat& leading_coeff() const;
    const Exp& leading_exp() const;

    // Coefficient of s^k viewed as a polynomial in s over the remaining symbols.
    Poly coeff_of(Sym s, int k) const;
    // Leading coefficient in s (a polynomial in the remaining symbols).
    Poly leading_coeff_in(Sym s) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    Poly& operator*=(const Poly& rhs) { *this = *this * rhs; return *this; }
    Poly operator*(const Rat& rhs) const;
    Poly pow(int e) const;

    bool operator==(const Poly& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }
    // Total order compatible with the term order; used for canonical sorting.
    int compare(const Poly& rhs) const;

    // Rational content: the positive rational c with p/c integer, coprime,
    // then signed so the leading coefficient of p/c is positive.
    Rat content() const;
    // p / content(): integer coefficients, gcd 1, positive leading coefficient.
    Poly primitive_part() const;

    // Substitute a polynomial for one symbol.
    Poly substituted(Sym s, const Poly& value) const;
    Poly swap_xy() const;

    Rat eval(const Assignment& at) const;

    std::string str() const;

private:
    void add_term(const Exp& e, const Rat& c);
    TermMap terms_;
    friend Poly poly_mul(const Poly&, const Poly&);
};

inline Poly operator*(const Rat& lhs, const Poly& rhs) { return rhs * lhs; }

// Exact division; nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// GCD by recursive content / primitive-part with a pseudo-remainder
// sequence in the innermost variable. Result is primitive with positive
// leading coefficient; gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact polynomial square root under the fixed term order; nullopt when the
// argument is not a perfect square.
std::optional<Poly> poly_sqrt(const Poly& p);

} // namespace cubecert
