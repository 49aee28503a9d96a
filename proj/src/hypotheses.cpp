#include "cubecert/hypotheses.hpp"

#include <algorithm>
#include <random>

namespace cubecert {

namespace {

bool search_preference(const Poly& l, const Poly& r) {
    if (l.total_degree() != r.total_degree()) return l.total_degree() > r.total_degree();
    if (l.term_count() != r.term_count()) return l.term_count() > r.term_count();
    return l.compare(r) < 0;
}

} // namespace

void HypothesisSet::insert_normalized(const Poly& p, const std::string& provenance) {
    for (auto& e : entries_) {
        if (e.poly == p) {
            if (std::find(e.provenance.begin(), e.provenance.end(), provenance) ==
                e.provenance.end())
                e.provenance.push_back(provenance);
            return;
        }
    }
    entries_.push_back({p, {provenance}});
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& l, const Entry& r) { return search_preference(l.poly, r.poly); });
}

void HypothesisSet::add(const Poly& p_in, const std::string& provenance) {
    if (p_in.is_zero()) throw Error("hypothesis polynomial is zero: " + provenance);
    Poly p = p_in.primitive_part();
    // Split monomial factors into the individual symbols.
    for (Sym s : kAllSyms) {
        int k = 0;
        while (true) {
            auto q = divide_exact(p, Poly::sym(s));
            if (!q) break;
            p = *q;
            ++k;
        }
        if (k > 0) insert_normalized(Poly::sym(s), provenance);
    }
    if (!p.is_constant()) insert_normalized(p.primitive_part(), provenance);
}

bool HypothesisSet::contains(const Poly& p) const {
    Poly n = p.primitive_part();
    for (const auto& e : entries_)
        if (e.poly == n) return true;
    return false;
}

bool HypothesisSet::satisfied_by(const Assignment& at) const {
    for (const auto& e : entries_)
        if (sgn(e.poly.eval(at)) == 0) return false;
    return true;
}

HypothesisSet nondegeneracy_hypotheses() {
    HypothesisSet H;
    const Poly A = Poly::sym(Sym::a);
    const Poly B = Poly::sym(Sym::b);
    const Poly C = Poly::sym(Sym::c);
    const Poly one = Poly::constant(1);

    struct Term {
        const char* name;
        Poly num, den;
    };
    auto terms_for = [&](const Poly& a, const Poly& b, const Poly& c) {
        Poly u = c * a - a + one;  // the recurring ca-a+1 block
        Poly w = b * c - c + one;
        return std::vector<Term>{
            {"ca-a+1", u, one},
            {"(ca-a+1)/(ca)", u, c * a},
            {"(ca-a+1)/c", u, c},
            {"a(bc-c+1)/-(ca-a+1)", a * w, -u},
            {"(bc-c+1)/(b(ca-a+1))", w, b * u},
            {"c", c, one},
            {"(bc-c+1)/(bc(ca-a+1))", w, b * c * u},
        };
    };

    auto feed = [&](const Term& t, const std::string& rot) {
        std::string base = std::string("term ") + t.name + rot;
        H.add(t.num, base + ": value != 0");
        if (!t.den.is_constant()) H.add(t.den, base + ": value != infinity");
        Poly diff = t.num - t.den;
        if (!diff.is_zero() && !diff.is_constant()) H.add(diff, base + ": value != 1");
    };

    feed({"-abc", -(A * B * C), one}, "");
    const std::array<std::array<Poly, 3>, 3> rotations{{
        {A, B, C},
        {B, C, A},
        {C, A, B},
    }};
    const char* rot_names[3] = {"", " under a->b->c->a", " under a->c->b->a"};
    for (int r = 0; r < 3; ++r) {
        for (const Term& t : terms_for(rotations[r][0], rotations[r][1], rotations[r][2]))
            feed(t, rot_names[r]);
    }
    H.note("the trailing unspecified summand of each rotation carries no "
           "nonvanishing constraint and contributes nothing to the ledger");
    return H;
}

namespace {

bool factor_search(const Poly& E, const std::vector<HypothesisSet::Entry>& entries,
                   std::size_t from, std::vector<std::pair<std::size_t, int>>& out) {
    if (E.is_constant()) return true;
    for (std::size_t i = from; i < entries.size(); ++i) {
        const Poly& h = entries[i].poly;
        if (h.total_degree() > E.total_degree()) continue;
        auto q = divide_exact(E, h);
        if (!q) continue;
        out.emplace_back(i, 1);
        if (factor_search(*q, entries, i, out)) {
            // Merge equal adjacent indices into one exponent.
            if (out.size() >= 2 && out[out.size() - 2].first == out.back().first) {
                out[out.size() - 2].second += out.back().second;
                out.pop_back();
            }
            return true;
        }
        out.pop_back();
    }
    return false;
}

} // namespace

std::uint64_t obligation_seed(std::uint64_t base, const Poly& E) {
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (char ch : E.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

Discharge certify_nonzero(const Poly& E, const HypothesisSet& H, int trials,
                          std::uint64_t seed) {
    Discharge d;
    d.seed = seed;
    if (E.is_zero()) {
        d.kind = Discharge::Kind::Failed;
        d.fail_reason = "claim is the zero polynomial";
        return d;
    }
    Rat unit = E.content();
    Poly prim = E.primitive_part();
    if (prim.is_constant()) {
        d.kind = Discharge::Kind::SymbolicFactorization;
        d.unit = unit * prim.as_constant();
        return d;
    }
    std::vector<std::pair<std::size_t, int>> factors;
    if (factor_search(prim, H.entries(), 0, factors)) {
        d.kind = Discharge::Kind::SymbolicFactorization;
        d.factors = std::move(factors);
        d.unit = unit;
        return d;
    }

    // Probabilistic fallback: random ledger-respecting specializations.
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        long n = static_cast<long>(rng() % 101) - 50;
        long den = static_cast<long>(rng() % 50) + 1;
        return make_rat(n, den);
    };
    int accepted = 0;
    int guard = 0;
    while (accepted < trials) {
        if (++guard > trials * 1000) {
            d.kind = Discharge::Kind::Failed;
            d.fail_reason = "could not draw enough ledger-respecting samples";
            return d;
        }
        Assignment at{{Sym::a, draw()}, {Sym::b, draw()}, {Sym::c, draw()}};
        if (!H.satisfied_by(at)) continue;
        ++accepted;
        if (sgn(prim.eval(at)) == 0) {
            d.kind = Discharge::Kind::Failed;
            d.trials = accepted;
            d.fail_reason = "claim vanishes at a ledger-respecting sample";
            return d;
        }
    }
    d.kind = Discharge::Kind::ProbabilisticOnly;
    d.trials = trials;
    return d;
}

} // namespace cubecert
