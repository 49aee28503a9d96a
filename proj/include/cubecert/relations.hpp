#pragma once

#include "cubecert/cycle.hpp"

namespace cubecert {

// The rewrite rules: slot-4 product splits, slot splits under the
// f1 = f2 invariance hypotheses, and the paired two-cycle splits whose
// middle functions have the diagonal as their only non-constant branch.
enum class RelationRule { L31i, L31iiA, L31iiB, L31iiC1, L31iiC2, L32i, L32ii };

const char* rule_name(RelationRule r);

struct SideCondition {
    std::string description;
    bool verified = false;
    std::string witness;  // detail when verification failed
};

struct RelationStep {
    RelationRule rule = RelationRule::L31i;
    std::vector<Cycle> inputs;
    int slot = 0;
    RatFunc g, h;
    std::vector<Cycle> outputs;  // empty unless all side conditions verified
    std::vector<SideCondition> side_conditions;
    int lhs_coefficient = 1;  // 2 for the first f1=f2=gh equation

    enum class Failure { None, FactorizationMismatch, HypothesisViolated };
    Failure failure = Failure::None;

    bool ok() const { return failure == Failure::None; }
};

// Slot-4 split f4 = g*h (g, h rational functions of x and y).
RelationStep apply_l31i(const Cycle& Z, const RatFunc& g, const RatFunc& h);

// Slot splits under the f1 = f2 hypothesis. For slot 3 or 5, g and h are
// one-variable functions of that slot's variable; variants map: slot 3 ->
// A, slot 5 -> B, slot 12 -> C1/C2 (both first coordinates split as g*h,
// g and h given as functions of x).
enum class L31iiVariant { A, B, C1, C2 };
RelationStep apply_l31ii(const Cycle& Z, int slot, const RatFunc& g, const RatFunc& h,
                         L31iiVariant variant);

// Paired split: Z1 = [f1(x), f2(y), f3(x), p4, f5(y)],
// Z2 = [f2(x), f1(y), f3(x), q4, f5(y)], with the only non-constant branch
// of p4 = 0, infinity (and of q4) being y = x. slot in {2, 3, 5} names the
// function being split as g*h.
RelationStep apply_l32(const Cycle& Z1, const Cycle& Z2, int slot, const RatFunc& g,
                       const RatFunc& h);

struct IdentityResult {
    bool verified = false;
    RatFunc difference;
    Assignment counterexample;  // nonempty when not verified
};

IdentityResult verify_identity(const RatFunc& lhs, const RatFunc& rhs);

// Matching of cycles up to the bookkeeping the source derivation uses
// freely: per-coordinate negation and/or inversion, and coordinate
// transposition with its sign. Returns a human-readable description of the
// transformation, or nullopt when the cycles do not match.
std::optional<std::string> match_up_to_units(const Cycle& got, const Cycle& expected);

} // namespace cubecert
