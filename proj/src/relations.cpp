#include "cubecert/relations.hpp"

#include "cubecert/faces.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace cubecert {

const char* rule_name(RelationRule r) {
    switch (r) {
        case RelationRule::L31i: return "l31i";
        case RelationRule::L31iiA: return "l31ii_a";
        case RelationRule::L31iiB: return "l31ii_b";
        case RelationRule::L31iiC1: return "l31ii_c1";
        case RelationRule::L31iiC2: return "l31ii_c2";
        case RelationRule::L32i: return "l32i";
        case RelationRule::L32ii: return "l32ii";
    }
    return "?";
}

namespace {

RatFunc slot_fn(const Cycle& Z, int slot) { return Z.coords[slot - 1].expand(); }

Cycle with_slot(const Cycle& Z, int slot, const RatFunc& f) {
    std::vector<CoordFunc> cs = Z.coords;
    cs[slot - 1] = CoordFunc::factor(f);
    return Cycle::make("", std::move(cs));
}

Cycle with_slots12(const Cycle& Z, const RatFunc& u_of_x, const RatFunc& v_of_x) {
    std::vector<CoordFunc> cs = Z.coords;
    cs[0] = CoordFunc::factor(u_of_x);
    cs[1] = CoordFunc::factor(v_of_x.swap_xy());
    return Cycle::make("", std::move(cs));
}

// Non-constant solutions y = r(x) of slot = 0 and slot = infinity.
std::vector<Branch> graph_branches(const CoordFunc& g) {
    std::vector<Branch> out;
    for (LocusTarget t : {LocusTarget::Zero, LocusTarget::Pole}) {
        for (const auto& br : solve_branches(g, t, 2)) {
            if (!br.is_graph()) continue;
            bool seen = false;
            for (const auto& have : out) seen = seen || have.same_locus(br);
            if (!seen) out.push_back(br);
        }
    }
    return out;
}

void push_cond(RelationStep& step, std::string what, bool ok, std::string witness = "") {
    step.side_conditions.push_back({std::move(what), ok, std::move(witness)});
}

bool check_factorization(RelationStep& step, const RatFunc& whole, const std::string& name) {
    bool exact = step.g * step.h == whole;
    push_cond(step, name + " = g*h exactly", exact,
              exact ? "" : "product differs from the slot function");
    bool nonunit = !step.g.is_one() && !step.h.is_one();
    push_cond(step, "neither factor is identically 1", nonunit,
              nonunit ? "" : "a unit factor would leave a coordinate identically 1");
    if (!exact || !nonunit) {
        step.failure = RelationStep::Failure::FactorizationMismatch;
        return false;
    }
    return true;
}

// f2(r(x)) == f2(x) for a one-variable function given as f2(y).
bool invariant_under(const RatFunc& f2_of_y, const Branch& r) {
    RatFunc composed = f2_of_y.substituted(Sym::y, r.graph_map());
    return composed == f2_of_y.swap_xy();
}

} // namespace

RelationStep apply_l31i(const Cycle& Z, const RatFunc& g, const RatFunc& h) {
    RelationStep step;
    step.rule = RelationRule::L31i;
    step.inputs = {Z};
    step.slot = 4;
    step.g = g;
    step.h = h;
    if (Z.arity() != 5) {
        push_cond(step, "input has arity 5", false, "arity " + std::to_string(Z.arity()));
        step.failure = RelationStep::Failure::FactorizationMismatch;
        return step;
    }
    if (!check_factorization(step, slot_fn(Z, 4), "slot 4")) return step;
    step.outputs = {with_slot(Z, 4, g), with_slot(Z, 4, h)};
    return step;
}

RelationStep apply_l31ii(const Cycle& Z, int slot, const RatFunc& g, const RatFunc& h,
                         L31iiVariant variant) {
    RelationStep step;
    step.rule = variant == L31iiVariant::A    ? RelationRule::L31iiA
                : variant == L31iiVariant::B  ? RelationRule::L31iiB
                : variant == L31iiVariant::C1 ? RelationRule::L31iiC1
                                              : RelationRule::L31iiC2;
    step.inputs = {Z};
    step.slot = slot;
    step.g = g;
    step.h = h;
    if (Z.arity() != 5) {
        push_cond(step, "input has arity 5", false, "arity " + std::to_string(Z.arity()));
        step.failure = RelationStep::Failure::FactorizationMismatch;
        return step;
    }

    const RatFunc f1 = slot_fn(Z, 1);             // function of x
    const RatFunc f2 = slot_fn(Z, 2);             // function of y
    const bool f1_eq_f2 = f1.swap_xy() == f2;
    push_cond(step, "f1 = f2", f1_eq_f2, f1_eq_f2 ? "" : "first two coordinates differ");
    if (!f1_eq_f2) {
        step.failure = RelationStep::Failure::HypothesisViolated;
        return step;
    }

    RatFunc whole;
    switch (variant) {
        case L31iiVariant::A: whole = slot_fn(Z, 3); break;
        case L31iiVariant::B: whole = slot_fn(Z, 5); break;
        default: whole = f1; break;  // slot "12", as a function of x
    }
    if (slot != (variant == L31iiVariant::A   ? 3
                 : variant == L31iiVariant::B ? 5
                                              : 12)) {
        push_cond(step, "slot matches the variant", false, "slot " + std::to_string(slot));
        step.failure = RelationStep::Failure::FactorizationMismatch;
        return step;
    }
    if (!check_factorization(step, whole, slot == 12 ? "f1" : "slot " + std::to_string(slot)))
        return step;

    // The f2-invariance hypothesis along every non-constant branch of
    // slot 4's zero and pole loci. A constant factor in an A/B split is a
    // scalar relation instead: the constant-slot output is decomposable and
    // the invariance hypothesis is not consumed.
    auto xy_free = [](const RatFunc& f) {
        return !f.depends_on(Sym::x) && !f.depends_on(Sym::y);
    };
    const bool scalar_split =
        (variant == L31iiVariant::A || variant == L31iiVariant::B) && (xy_free(g) || xy_free(h));
    const auto branches = graph_branches(Z.coords[3]);
    for (const auto& br : branches) {
        if (scalar_split) continue;
        bool inv = invariant_under(f2, br);
        push_cond(step, "f2(r(x)) = f2(x) on branch " + br.str(), inv,
                  inv ? "" : "f2 is not invariant under the branch");
        if (!inv) step.failure = RelationStep::Failure::HypothesisViolated;
        if (variant == L31iiVariant::C1 || variant == L31iiVariant::C2) {
            RatFunc g_of_y = g.swap_xy();
            RatFunc composed = g_of_y.substituted(Sym::y, br.graph_map());
            bool match = composed == g || composed == h;
            push_cond(step, "g(r(x)) = g(x) or h(x) on branch " + br.str(), match,
                      match ? "" : "g twists to neither g nor h");
            if (!match) step.failure = RelationStep::Failure::HypothesisViolated;
        }
    }
    if (step.failure != RelationStep::Failure::None) return step;

    switch (variant) {
        case L31iiVariant::A:
            step.outputs = {with_slot(Z, 3, g), with_slot(Z, 3, h)};
            break;
        case L31iiVariant::B:
            step.outputs = {with_slot(Z, 5, g), with_slot(Z, 5, h)};
            break;
        case L31iiVariant::C1:
            step.lhs_coefficient = 2;
            step.outputs = {with_slots12(Z, g, f1), with_slots12(Z, h, f1),
                            with_slots12(Z, f1, g), with_slots12(Z, f1, h)};
            break;
        case L31iiVariant::C2:
            step.outputs = {with_slots12(Z, g, g), with_slots12(Z, h, h),
                            with_slots12(Z, h, g), with_slots12(Z, g, h)};
            break;
    }
    if (scalar_split) {
        for (const auto& out : step.outputs) {
            if (!out.coords[slot - 1].is_constant()) continue;
            bool dec = decomposability(out).has_value();
            push_cond(step, "constant-factor output is decomposable", dec,
                      dec ? "" : out.str());
            if (!dec) {
                step.failure = RelationStep::Failure::HypothesisViolated;
                step.outputs.clear();
                return step;
            }
        }
    }
    return step;
}

RelationStep apply_l32(const Cycle& Z1, const Cycle& Z2, int slot, const RatFunc& g,
                       const RatFunc& h) {
    RelationStep step;
    step.rule = slot == 2 ? RelationRule::L32ii : RelationRule::L32i;
    step.inputs = {Z1, Z2};
    step.slot = slot;
    step.g = g;
    step.h = h;
    if (Z1.arity() != 5 || Z2.arity() != 5) {
        push_cond(step, "inputs have arity 5", false, "");
        step.failure = RelationStep::Failure::FactorizationMismatch;
        return step;
    }
    const RatFunc f1 = slot_fn(Z1, 1);
    const RatFunc f2 = slot_fn(Z1, 2);
    bool shape = slot_fn(Z2, 1) == f2.swap_xy() && slot_fn(Z2, 2) == f1.swap_xy() &&
                 Z1.coords[2] == Z2.coords[2] && Z1.coords[4] == Z2.coords[4];
    push_cond(step, "pair shape [f1,f2,f3,p4,f5] + [f2,f1,f3,q4,f5]", shape,
              shape ? "" : "the two cycles do not transpose into each other");
    if (!shape) {
        step.failure = RelationStep::Failure::FactorizationMismatch;
        return step;
    }
    for (const Cycle* Z : {&Z1, &Z2}) {
        const char* which = Z == &Z1 ? "p4" : "q4";
        auto branches = graph_branches(Z->coords[3]);
        bool only_diag = true;
        std::string witness;
        for (const auto& br : branches) {
            if (!br.is_identity_graph()) {
                only_diag = false;
                witness = br.str();
            }
        }
        push_cond(step, std::string("only non-constant branch of ") + which +
                            " = 0, infinity is y = x",
                  only_diag, witness);
        if (!only_diag) step.failure = RelationStep::Failure::HypothesisViolated;
    }
    if (step.failure != RelationStep::Failure::None) return step;

    RatFunc whole;
    switch (slot) {
        case 2: whole = f2.swap_xy(); break;  // as a function of x
        case 3: whole = slot_fn(Z1, 3); break;
        case 5: whole = slot_fn(Z1, 5); break;
        default:
            push_cond(step, "slot in {2,3,5}", false, std::to_string(slot));
            step.failure = RelationStep::Failure::FactorizationMismatch;
            return step;
    }
    if (!check_factorization(step, whole, "slot " + std::to_string(slot))) return step;

    if (slot == 2) {
        RatFunc gy = g.swap_xy(), hy = h.swap_xy();
        step.outputs = {with_slot(Z1, 2, gy), with_slot(Z2, 1, g), with_slot(Z1, 2, hy),
                        with_slot(Z2, 1, h)};
    } else {
        step.outputs = {with_slot(Z1, slot, g), with_slot(Z2, slot, g), with_slot(Z1, slot, h),
                        with_slot(Z2, slot, h)};
    }
    return step;
}

IdentityResult verify_identity(const RatFunc& lhs, const RatFunc& rhs) {
    IdentityResult out;
    out.difference = lhs - rhs;
    if (out.difference.is_zero()) {
        out.verified = true;
        return out;
    }
    std::mt19937_64 rng(20240901);
    for (int trial = 0; trial < 1000; ++trial) {
        Assignment at;
        for (Sym s : kAllSyms)
            at[s] = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
        EvalResult e = out.difference.eval(at);
        if (e.is_value() && sgn(e.value) != 0) {
            out.counterexample = at;
            return out;
        }
    }
    return out;
}

namespace {

std::optional<std::string> coord_transform(const CoordFunc& got, const CoordFunc& want) {
    if (got == want) return std::string("");
    if (got == want.negated()) return std::string("negated");
    CoordFunc inv = want.inverse();
    if (got == inv) return std::string("inverted");
    if (got == inv.negated()) return std::string("negated and inverted");
    return std::nullopt;
}

std::optional<std::string> match_tuples(const Cycle& got, const Cycle& expected) {
    const int n = got.arity();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    // Identity permutation first; fall back to full search for transposed
    // printings.
    do {
        std::vector<std::string> notes;
        bool all = true;
        for (int i = 0; i < n && all; ++i) {
            auto t = coord_transform(got.coords[static_cast<std::size_t>(perm[i])],
                                     expected.coords[static_cast<std::size_t>(i)]);
            if (!t) {
                all = false;
            } else if (!t->empty()) {
                notes.push_back("coordinate " + std::to_string(i + 1) + " " + *t);
            }
        }
        if (all) {
            bool id = true;
            for (int i = 0; i < n; ++i) id = id && perm[i] == i;
            std::string desc;
            if (!id) desc = "coordinates permuted";
            for (const auto& s : notes) {
                if (!desc.empty()) desc += "; ";
                desc += s;
            }
            return desc.empty() ? std::string("exact") : desc;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

} // namespace

std::optional<std::string> match_up_to_units(const Cycle& got, const Cycle& expected) {
    if (got.arity() != expected.arity() || got.dim != expected.dim) return std::nullopt;
    if (auto m = match_tuples(got, expected)) return m;
    if (got.dim == 2) {
        // The same surface with the parameter roles exchanged.
        std::vector<CoordFunc> cs;
        for (const auto& g : got.coords) cs.push_back(g.swap_xy());
        Cycle swapped = Cycle::make(got.name, std::move(cs));
        if (auto m = match_tuples(swapped, expected)) {
            return *m == "exact" ? std::string("variables relabeled")
                                 : "variables relabeled; " + *m;
        }
    }
    return std::nullopt;
}

} // namespace cubecert
