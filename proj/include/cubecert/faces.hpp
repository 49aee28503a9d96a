#pragma once

#include "cubecert/cycle.hpp"

namespace cubecert {

// Verdict for one branch of one face. Degeneracy (some surviving coordinate
// identically 1) wins over everything else: such a component is empty in
// the cube, so violations on it are moot.
struct FaceStatus {
    enum class Kind { DegenerateIn, Subcycle, PointCycle, Violation };

    Kind kind = Kind::Violation;
    // DegenerateIn: surviving coordinates identically 1, in the parent
    // cycle's numbering; degenerate_in is the smallest.
    int degenerate_in = 0;
    std::vector<int> all_degenerate;
    // Subcycle (dim >= 1)
    Cycle subcycle;
    // PointCycle (dim 0): the coordinate values, parent numbering alongside.
    std::vector<RatFunc> point_values;
    std::vector<int> point_index;
    // Violation
    std::string reason;

    std::string brief() const;
};

struct FaceBranch {
    Branch branch;
    FaceStatus status;
};

enum class FaceEps { Zero, Infinity };

inline const char* eps_name(FaceEps e) { return e == FaceEps::Zero ? "0" : "inf"; }

// The face operator: all branches of coordinate i (1-based) hitting 0 or
// infinity, classified. Branch order is deterministic.
std::vector<FaceBranch> face(const Cycle& cy, int i, FaceEps eps);

// Constants / x-side / y-side product structure, the negligibility evidence.
struct DecompositionSignature {
    struct Group {
        std::vector<int> coords;  // 1-based indices
        int vars = 0;             // 0 constants, 1 one-variable, 2 mixed
        int codim() const { return static_cast<int>(coords.size()) - vars; }
    };
    std::vector<Group> groups;  // canonical order: ascending (codim, size, first index)

    std::string str() const;  // e.g. "C1(F,1) ^ C2(F,4)"
    bool operator==(const DecompositionSignature& rhs) const { return str() == rhs.str(); }
};

// The coarsest split into constant coordinates and variable-disjoint groups;
// nullopt when the cycle does not decompose (a single group).
std::optional<DecompositionSignature> decomposability(const Cycle& cy);

// Parse a "C1(F,1) ^ C2(F,4)" style signature (group sizes and codims only).
DecompositionSignature signature_from_tags(const std::vector<std::pair<int, int>>& codim_size);

} // namespace cubecert
