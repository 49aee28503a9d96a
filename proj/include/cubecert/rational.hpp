#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubecert {

// Exact arbitrary-precision rationals. mpq_class already keeps the canonical
// form we require (gcd(num,den)=1, den>0, zero as 0/1) as long as values are
// built through the helpers below.
using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroDenominator : Error {
    ZeroDenominator() : Error("zero denominator") {}
};

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw ZeroDenominator();
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw ZeroDenominator();
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline const Int& numer(const Rat& q) { return q.get_num(); }
inline const Int& denom(const Rat& q) { return q.get_den(); }

inline bool is_integer(const Rat& q) { return denom(q) == 1; }

// Exact square root; returns false when q is not a square of a rational.
inline bool rat_sqrt(const Rat& q, Rat& out) {
    if (sgn(q) < 0) return false;
    if (sgn(q) == 0) { out = 0; return true; }
    const Int& n = numer(q);
    const Int& d = denom(q);
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = make_rat(rn, rd);
    return true;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

} // namespace cubecert
