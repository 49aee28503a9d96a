#pragma once

#include "cubecert/poly.hpp"

#include <cstdint>

namespace cubecert {

// The ledger of (a,b,c)-polynomials asserted nonzero by the relation's
// non-degeneracy condition. Entries are primitive with positive leading
// coefficient; monomial factors are stored split into a, b, c.
class HypothesisSet {
public:
    struct Entry {
        Poly poly;
        std::vector<std::string> provenance;
    };

    // Adds p (nonzero, non-constant after normalization) with provenance,
    // splitting off monomial factors. Constants are dropped.
    void add(const Poly& p, const std::string& provenance);

    const std::vector<Entry>& entries() const { return entries_; }
    bool contains(const Poly& p) const;
    std::size_t size() const { return entries_.size(); }

    // All entries nonzero at the sample.
    bool satisfied_by(const Assignment& at) const;

    const std::vector<std::string>& notes() const { return notes_; }
    void note(std::string n) { notes_.push_back(std::move(n)); }

private:
    void insert_normalized(const Poly& p, const std::string& provenance);
    std::vector<Entry> entries_;  // kept sorted descending by search preference
    std::vector<std::string> notes_;
};

// Hypotheses generated from the eight displayed terms of the 22-term
// relation under the three cyclic rotations of (a,b,c): for each term
// numerator != 0, denominator != 0, numerator - denominator != 0.
HypothesisSet nondegeneracy_hypotheses();

// Outcome of a non-vanishing obligation.
struct Discharge {
    enum class Kind { SymbolicFactorization, ProbabilisticOnly, Failed };
    Kind kind = Kind::Failed;
    // SymbolicFactorization: E == unit * prod entries[i]^e.
    std::vector<std::pair<std::size_t, int>> factors;
    Rat unit;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string fail_reason;

    bool ok(bool strict) const {
        if (kind == Kind::Failed) return false;
        return !strict || kind == Kind::SymbolicFactorization;
    }
};

// Try to write E as unit times a product of ledger entries (repeated exact
// division, largest degree first, with backtracking); fall back to `trials`
// random specializations that satisfy the ledger.
Discharge certify_nonzero(const Poly& E, const HypothesisSet& H, int trials,
                          std::uint64_t seed);

// Deterministic per-obligation seed derivation.
std::uint64_t obligation_seed(std::uint64_t base, const Poly& E);

} // namespace cubecert
