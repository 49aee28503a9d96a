#pragma once

#include "cubecert/ratfunc.hpp"

#include <vector>

namespace cubecert {

struct NonBilinearIrreducible : Error {
    explicit NonBilinearIrreducible(const Poly& factor)
        : Error("factor of degree >= 2 in x or y is not a product of bilinear atoms: " + factor.str()),
          offending(factor) {}
    Poly offending;
};

// An irreducible coordinate factor p11*xy + p10*x + p01*y + p00 with
// coefficients in Q[a,b,c]. Canonical: integer-primitive, positive leading
// coefficient, at least one of x,y present, degree <= 1 in each.
class Atom {
public:
    // p must be bilinear, primitive, with positive leading coefficient.
    explicit Atom(Poly p) : poly_(std::move(p)) {}

    const Poly& poly() const { return poly_; }
    Poly p11() const { return coeff(1, 1); }
    Poly p10() const { return coeff(1, 0); }
    Poly p01() const { return coeff(0, 1); }
    Poly p00() const { return coeff(0, 0); }

    bool depends_on(Sym s) const { return poly_.depends_on(s); }
    int degree(Sym s) const { return poly_.degree(s); }

    bool operator==(const Atom& rhs) const { return poly_ == rhs.poly_; }
    int compare(const Atom& rhs) const { return poly_.compare(rhs.poly_); }
    std::string str() const { return poly_.str(); }

private:
    Poly coeff(int dx, int dy) const {
        return poly_.coeff_of(Sym::x, dx).coeff_of(Sym::y, dy);
    }
    Poly poly_;
};

// A coordinate function in factored form: scalar * prod atoms^e with the
// scalar a nonzero rational function of (a,b,c) only. Expanding the product
// reproduces the source function exactly.
class CoordFunc {
public:
    struct Factor {
        Atom atom;
        int exponent;
    };

    CoordFunc() : scalar_(RatFunc::constant(1)) {}
    static CoordFunc one() { return CoordFunc(); }
    static CoordFunc from_scalar(RatFunc s);

    // factor_coordinate: recover the bilinear-atom factorization of f.
    // Throws NonBilinearIrreducible when an irreducible factor has degree
    // >= 2 in x or y, and ZeroDenominator-like errors never arise (f != 0).
    static CoordFunc factor(const RatFunc& f);

    const RatFunc& scalar() const { return scalar_; }
    const std::vector<Factor>& factors() const { return factors_; }

    RatFunc expand() const;
    bool is_one() const { return factors_.empty() && scalar_.is_one(); }
    bool is_constant() const { return factors_.empty(); }
    bool depends_on(Sym s) const;
    // Degree as a rational function: positive means pole at s -> infinity.
    int degree(Sym s) const;

    CoordFunc operator*(const CoordFunc& rhs) const;
    CoordFunc pow(int e) const;
    CoordFunc inverse() const { return pow(-1); }
    CoordFunc negated() const;
    CoordFunc swap_xy() const;

    bool operator==(const CoordFunc& rhs) const;
    int compare(const CoordFunc& rhs) const;
    std::string str() const;

private:
    void push_factor(const Atom& atom, int exponent);
    void sort_factors();
    RatFunc scalar_;
    std::vector<Factor> factors_;  // sorted by atom order, exponents nonzero
    friend struct CoordBuilder;
};

// Factor a polynomial in Q[a,b,c,x,y] into bilinear atoms and an (a,b,c)
// content. p == content * prod atoms^e.
struct PolyFactorization {
    Poly content;
    std::vector<CoordFunc::Factor> atoms;
};
PolyFactorization factor_bilinear_poly(const Poly& p);

// Assemble a CoordFunc from parts already in canonical atom form.
struct CoordBuilder {
    static CoordFunc build(RatFunc scalar, std::vector<CoordFunc::Factor> factors);
};

} // namespace cubecert
