#include "cubecert/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

namespace cubecert {

const char* entry_kind_name(EntryResult::Kind k) {
    switch (k) {
        case EntryResult::Kind::CycleCheck: return "cycle";
        case EntryResult::Kind::IdentityCheck: return "identity";
        case EntryResult::Kind::DecompCheck: return "decomposability";
        case EntryResult::Kind::RelationCheck: return "relation";
    }
    return "?";
}

namespace {

// Values of a point cycle compared up to negation and order.
bool match_point_values(const std::vector<RatFunc>& got, const Cycle& expected,
                        std::string& note) {
    if (got.size() != expected.coords.size()) return false;
    const std::size_t n = got.size();
    std::vector<bool> used(n, false);
    bool negated = false, permuted = false;
    for (std::size_t i = 0; i < n; ++i) {
        RatFunc want = expected.coords[i].expand();
        bool found = false;
        for (std::size_t j = 0; j < n && !found; ++j) {
            if (used[j]) continue;
            if (got[j] == want || got[j] == -want) {
                used[j] = true;
                found = true;
                if (got[j] == -want) negated = true;
                if (i != j) permuted = true;
            }
        }
        if (!found) return false;
    }
    if (negated && permuted) note = "values matched up to sign and order";
    else if (negated) note = "values matched up to sign";
    else if (permuted) note = "values matched up to order";
    return true;
}

std::string row_name(int index, FaceEps eps) {
    return "face " + std::to_string(index) + " " + eps_name(eps);
}

bool verdict_matches(const dsl::Catalog& cat, const dsl::ExpectedVerdict& v,
                     const BranchRecord& br, std::string& note) {
    if (v.at_infinity != br.branch.at_infinity()) return false;
    switch (v.kind) {
        case dsl::ExpectedVerdict::Kind::Degenerate: {
            if (br.status.kind != FaceStatus::Kind::DegenerateIn) return false;
            const auto& all = br.status.all_degenerate;
            return std::find(all.begin(), all.end(), v.hyperplane) != all.end();
        }
        case dsl::ExpectedVerdict::Kind::Subcycle: {
            if (br.status.kind != FaceStatus::Kind::Subcycle) return false;
            Cycle want = !v.named.empty() ? cat.cycles.at(v.named)
                                          : cat.eval_tuple(v.tuple, "", "", v.pos);
            auto m = match_up_to_units(br.status.subcycle, want);
            if (m) {
                if (*m != "exact") note = *m;
                return true;
            }
            // A graph branch can be parametrized from either side; printed
            // faces sometimes use the other chart. Pull the computed tuple
            // back through the inverse Moebius map and retry.
            if (br.branch.is_graph() && br.status.subcycle.dim == 1) {
                // x = (s t - q)/(p - r t) inverts y = (p x + q)/(r x + s).
                RatFunc t = RatFunc::sym(Sym::y);
                RatFunc inv = RatFunc::from_poly(br.branch.s) * t -
                              RatFunc::from_poly(br.branch.q);
                RatFunc den = RatFunc::from_poly(br.branch.p) -
                              RatFunc::from_poly(br.branch.r) * t;
                {
                    RatFunc map = inv / den;
                    std::vector<CoordFunc> cs;
                    bool ok = true;
                    for (const auto& g : br.status.subcycle.coords) {
                        RatFunc comp = g.expand().substituted(Sym::y, map);
                        if (comp.is_zero()) { ok = false; break; }
                        cs.push_back(CoordFunc::factor(comp));
                    }
                    if (ok) {
                        Cycle repar = Cycle::make("", std::move(cs));
                        auto m2 = match_up_to_units(repar, want);
                        if (m2) {
                            note = "matched in the other branch chart";
                            if (*m2 != "exact") note += "; " + *m2;
                            return true;
                        }
                    }
                }
            }
            return false;
        }
        case dsl::ExpectedVerdict::Kind::Point: {
            if (br.status.kind != FaceStatus::Kind::PointCycle) return false;
            Cycle want = cat.eval_tuple(v.tuple, "", "", v.pos);
            return match_point_values(br.status.point_values, want, note);
        }
    }
    return false;
}

// Perfect matching between expected verdicts and computed branches.
bool match_row(const dsl::Catalog& cat, const dsl::FaceRow& row, const FaceRecord& fr,
               std::vector<std::string>& details) {
    const auto& branches = fr.branches;
    if (row.expect_empty) {
        if (branches.empty()) return true;
        details.push_back(row_name(row.index, row.eps) + ": expected no branches, computed " +
                          std::to_string(branches.size()));
        return false;
    }
    if (row.verdicts.size() != branches.size()) {
        std::ostringstream os;
        os << row_name(row.index, row.eps) << ": expected " << row.verdicts.size()
           << " branch(es), computed " << branches.size() << ":";
        for (const auto& br : branches)
            os << " {" << br.branch.str() << " -> " << br.status.brief() << "}";
        details.push_back(os.str());
        return false;
    }
    const std::size_t n = branches.size();
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::vector<std::string> notes(n);
    // Tiny exhaustive bipartite match.
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            std::string note;
            if (!verdict_matches(cat, row.verdicts[i], branches[j], note)) continue;
            used[j] = true;
            notes[i] = note;
            if (place(i + 1)) {
                assign[i] = static_cast<int>(j);
                return true;
            }
            used[j] = false;
        }
        return false;
    };
    if (!place(0)) {
        std::ostringstream os;
        os << row_name(row.index, row.eps) << ": verdicts do not match; computed:";
        for (const auto& br : branches)
            os << " {" << br.branch.str() << " -> " << br.status.brief() << "}";
        details.push_back(os.str());
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!notes[i].empty())
            details.push_back(row_name(row.index, row.eps) + " verdict " +
                              std::to_string(i + 1) + ": " + notes[i]);
    }
    return true;
}

} // namespace

EntryResult run_cycle_check(const dsl::Catalog& cat, const dsl::CycleCheck& cc,
                            const HypothesisSet& H, const RunOptions& opt, CertStore& store) {
    EntryResult res;
    res.kind = EntryResult::Kind::CycleCheck;
    res.name = cc.cycle;
    const Cycle& cy = cat.cycles.at(cc.cycle);
    res.cert = check_admissible(cy, H, opt.check, store);
    res.pass = res.cert->admissible;
    if (!res.cert->admissible)
        res.details.push_back("not admissible; first failure: " + res.cert->first_failure);
    if (opt.check.strict && !res.cert->fully_symbolic) {
        res.pass = false;
        res.details.push_back("a non-vanishing obligation was only sampled, not factored");
    }
    for (const auto& row : cc.rows) {
        const FaceRecord* fr = nullptr;
        for (const auto& f : res.cert->faces)
            if (f.index == row.index && f.eps == row.eps) fr = &f;
        if (!fr) {
            res.details.push_back(row_name(row.index, row.eps) + ": no such coordinate");
            res.pass = false;
            continue;
        }
        if (!match_row(cat, row, *fr, res.details)) res.pass = false;
    }
    if (opt.specialize) {
        // Numeric oracle at the explicit specialization.
        Assignment at = *opt.specialize;
        for (const auto& fr : res.cert->faces) {
            for (const auto& br : fr.branches) {
                if (br.status.kind != FaceStatus::Kind::PointCycle) continue;
                for (const auto& v : br.status.point_values) {
                    EvalResult e = v.eval(at);
                    if (!e.is_value() || sgn(e.value) == 0) {
                        res.pass = false;
                        res.details.push_back(row_name(fr.index, fr.eps) +
                                              ": point value degenerates at the "
                                              "requested specialization");
                    }
                }
            }
        }
    }
    return res;
}

EntryResult run_identity_check(const dsl::Catalog& cat, const dsl::IdentityCheck& ic) {
    EntryResult res;
    res.kind = EntryResult::Kind::IdentityCheck;
    res.name = ic.label.empty() ? ic.lhs->str() + " == " + ic.rhs->str() : ic.label;
    try {
        RatFunc lhs = cat.eval(*ic.lhs);
        RatFunc rhs = cat.eval(*ic.rhs);
        IdentityResult r = verify_identity(lhs, rhs);
        res.pass = r.verified;
        if (!r.verified) {
            std::ostringstream os;
            os << "difference " << r.difference.str() << " is nonzero";
            if (!r.counterexample.empty()) {
                os << " at";
                for (const auto& [s, v] : r.counterexample)
                    os << " " << sym_name(s) << "=" << rat_str(v);
            }
            res.details.push_back(os.str());
        }
    } catch (const Error& e) {
        res.pass = false;
        res.details.push_back(e.what());
    }
    return res;
}

EntryResult run_decomp_check(const dsl::Catalog& cat, const dsl::DecompCheck& dc) {
    EntryResult res;
    res.kind = EntryResult::Kind::DecompCheck;
    res.name = dc.cycle;
    const Cycle& cy = cat.cycles.at(dc.cycle);
    auto sig = decomposability(cy);
    if (!dc.expect_decomposable) {
        res.pass = !sig.has_value();
        if (sig) res.details.push_back("unexpectedly decomposes as " + sig->str());
        return res;
    }
    if (!sig) {
        res.pass = false;
        res.details.push_back("does not decompose");
        return res;
    }
    DecompositionSignature want = signature_from_tags(dc.tags);
    res.pass = sig->str() == want.str();
    if (!res.pass)
        res.details.push_back("computed " + sig->str() + ", catalog says " + want.str());
    return res;
}

EntryResult run_relation_check(const dsl::Catalog& cat, const dsl::RelationCheck& rc) {
    EntryResult res;
    res.kind = EntryResult::Kind::RelationCheck;
    res.name = rc.label.empty() ? std::string(rule_name(rc.rule)) : rc.label;
    try {
        Cycle first = cat.resolve(rc.first);
        RatFunc g = cat.eval(*rc.g);
        RatFunc h = cat.eval(*rc.h);
        RelationStep step;
        switch (rc.rule) {
            case RelationRule::L31i:
                step = apply_l31i(first, g, h);
                break;
            case RelationRule::L31iiA:
                step = apply_l31ii(first, 3, g, h, L31iiVariant::A);
                break;
            case RelationRule::L31iiB:
                step = apply_l31ii(first, 5, g, h, L31iiVariant::B);
                break;
            case RelationRule::L31iiC1:
                step = apply_l31ii(first, 12, g, h, L31iiVariant::C1);
                break;
            case RelationRule::L31iiC2:
                step = apply_l31ii(first, 12, g, h, L31iiVariant::C2);
                break;
            case RelationRule::L32i: {
                if (!rc.second) throw dsl::SemanticError(rc.pos, "l32i needs a second input");
                if (rc.slot != 3 && rc.slot != 5)
                    throw dsl::SemanticError(rc.pos, "l32i needs slot 3 or slot 5");
                step = apply_l32(first, cat.resolve(*rc.second), rc.slot, g, h);
                break;
            }
            case RelationRule::L32ii: {
                if (!rc.second) throw dsl::SemanticError(rc.pos, "l32ii needs a second input");
                step = apply_l32(first, cat.resolve(*rc.second), 2, g, h);
                break;
            }
        }
        res.pass = step.ok();
        for (const auto& c : step.side_conditions) {
            if (c.verified) {
                res.details.push_back("verified: " + c.description);
            } else {
                res.details.push_back("FAILED: " + c.description +
                                      (c.witness.empty() ? "" : " (" + c.witness + ")"));
            }
        }
        if (!step.ok()) {
            res.details.push_back(step.failure == RelationStep::Failure::HypothesisViolated
                                      ? "hypothesis violated"
                                      : "factorization mismatch");
            return res;
        }
        if (step.outputs.size() != rc.targets.size()) {
            res.pass = false;
            res.details.push_back("rule emits " + std::to_string(step.outputs.size()) +
                                  " summands, catalog lists " +
                                  std::to_string(rc.targets.size()));
            return res;
        }
        for (std::size_t i = 0; i < step.outputs.size(); ++i) {
            Cycle want = cat.resolve(rc.targets[i]);
            auto m = match_up_to_units(step.outputs[i], want);
            std::string label = !rc.targets[i].named.empty() ? rc.targets[i].named
                                                             : "summand " + std::to_string(i + 1);
            if (!m) {
                res.pass = false;
                res.details.push_back("summand " + std::to_string(i + 1) +
                                      " does not match " + label + ": computed " +
                                      step.outputs[i].str());
            } else if (*m != "exact") {
                res.details.push_back(label + ": " + *m);
            }
        }
        if (step.lhs_coefficient != 1)
            res.details.push_back("left side carries coefficient " +
                                  std::to_string(step.lhs_coefficient));
    } catch (const Error& e) {
        res.pass = false;
        res.details.push_back(e.what());
    }
    return res;
}

CatalogReport run_catalog(const dsl::Catalog& cat, const HypothesisSet& H,
                          const RunOptions& opt, CertStore& store) {
    CatalogReport report;
    const dsl::SourceFile& sf = *cat.source;
    report.notes = sf.notes;

    struct Job {
        EntryResult::Kind kind;
        std::size_t index;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < sf.cycle_checks.size(); ++i)
        jobs.push_back({EntryResult::Kind::CycleCheck, i});
    for (std::size_t i = 0; i < sf.identity_checks.size(); ++i)
        jobs.push_back({EntryResult::Kind::IdentityCheck, i});
    for (std::size_t i = 0; i < sf.decomp_checks.size(); ++i)
        jobs.push_back({EntryResult::Kind::DecompCheck, i});
    for (std::size_t i = 0; i < sf.relation_checks.size(); ++i)
        jobs.push_back({EntryResult::Kind::RelationCheck, i});

    report.entries.resize(jobs.size());
    auto run_one = [&](std::size_t j) {
        const Job& job = jobs[j];
        switch (job.kind) {
            case EntryResult::Kind::CycleCheck:
                report.entries[j] =
                    run_cycle_check(cat, sf.cycle_checks[job.index], H, opt, store);
                break;
            case EntryResult::Kind::IdentityCheck:
                report.entries[j] = run_identity_check(cat, sf.identity_checks[job.index]);
                break;
            case EntryResult::Kind::DecompCheck:
                report.entries[j] = run_decomp_check(cat, sf.decomp_checks[job.index]);
                break;
            case EntryResult::Kind::RelationCheck:
                report.entries[j] = run_relation_check(cat, sf.relation_checks[job.index]);
                break;
        }
    };

    const int workers = std::max(1, opt.jobs);
    if (workers == 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) run_one(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t j = next.fetch_add(1);
                    if (j >= jobs.size()) return;
                    run_one(j);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (const auto& e : report.entries) (e.pass ? report.passed : report.failed)++;
    return report;
}

} // namespace cubecert
