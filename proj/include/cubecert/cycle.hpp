#pragma once

#include "cubecert/coord.hpp"

#include <optional>

namespace cubecert {

struct UnsolvableBranch : Error {
    explicit UnsolvableBranch(const Poly& factor)
        : Error("univariate factor does not split into solvable branches: " + factor.str()),
          offending(factor) {}
    Poly offending;
};

struct BasePoint : Error {
    explicit BasePoint(const std::string& where)
        : Error("base point (0/0) while substituting a branch: " + where) {}
};

// One solved component of a coordinate's zero or pole locus on P1 x P1.
struct Branch {
    enum class Kind { XConst, YConst, XInfinity, YInfinity, YofX, XofY };

    Kind kind = Kind::YConst;
    RatFunc value;        // XConst / YConst
    Poly p, q, r, s;      // YofX: y = (p x + q)/(r x + s); XofY symmetric
    int multiplicity = 1;

    static Branch x_const(RatFunc v, int mult = 1);
    static Branch y_const(RatFunc v, int mult = 1);
    static Branch x_infinity(int mult = 1);
    static Branch y_infinity(int mult = 1);
    static Branch y_of_x(Poly p, Poly q, Poly r, Poly s, int mult = 1);

    bool at_infinity() const { return kind == Kind::XInfinity || kind == Kind::YInfinity; }
    bool is_graph() const { return kind == Kind::YofX || kind == Kind::XofY; }
    // Graph branch equal to the diagonal y = x.
    bool is_identity_graph() const;
    // The fractional-linear map as a rational function of x (YofX only).
    RatFunc graph_map() const;

    bool same_locus(const Branch& rhs) const;
    std::string str() const;
    std::string sort_key() const;
};

// A parametrized cycle: a tuple of factored coordinate functions.
// dim 2 cycles use x and y, dim 1 cycles are normalized to the variable y,
// dim 0 cycles are tuples of (a,b,c)-constants.
struct Cycle {
    std::string name;
    std::vector<CoordFunc> coords;
    int dim = 0;
    std::string provenance;

    static Cycle make(std::string name, std::vector<CoordFunc> coords,
                      std::string provenance = "");

    int arity() const { return static_cast<int>(coords.size()); }
    bool operator==(const Cycle& rhs) const;
    // Identity of the underlying tuple (name/provenance ignored).
    std::string key() const;
    std::string str() const;
};

enum class LocusTarget { Zero, Pole };

// Complete list of branches of g = 0 (or g = infinity) for a coordinate of
// a cycle of the given dimension, at-infinity components included.
std::vector<Branch> solve_branches(const CoordFunc& g, LocusTarget target, int dim);

// Result of restricting one coordinate to a branch.
struct CoordOnBranch {
    enum class Kind { Value, IdentZero, IdentInf, Indeterminate };
    Kind kind = Kind::Value;
    CoordFunc value;  // Kind::Value only
};

// The full tuple restricted to a branch, before any face classification.
// The solved coordinate (1-based solved_index) is removed; surviving
// coordinates keep their position in `parent_index`.
struct RestrictedTuple {
    std::vector<CoordOnBranch> coords;
    std::vector<int> parent_index;
    int dim = 0;

    bool proper() const;
    // Throws BasePoint on indeterminate coordinates; requires proper().
    Cycle to_cycle(const std::string& name = "") const;
};

RestrictedTuple restrict_to_branch(const Cycle& cy, int solved_index, const Branch& br);

// Spec-level substitute: restrict and build the lower-dimensional cycle.
// Throws BasePoint if a coordinate becomes 0/0 on the branch.
Cycle substitute(const Cycle& cy, int solved_index, const Branch& br);

// Restriction of a single coordinate function.
CoordOnBranch restrict_coord(const CoordFunc& g, const Branch& br);

} // namespace cubecert
