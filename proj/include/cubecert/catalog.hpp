#pragma once

#include "cubecert/checker.hpp"
#include "cubecert/dsl.hpp"

namespace cubecert {

struct RunOptions {
    CheckOptions check;
    int jobs = 1;
    std::optional<Assignment> specialize;  // explicit (a,b,c) oracle point
};

struct EntryResult {
    enum class Kind { CycleCheck, IdentityCheck, DecompCheck, RelationCheck };
    Kind kind = Kind::CycleCheck;
    std::string name;
    bool pass = false;
    std::vector<std::string> details;
    std::shared_ptr<const CycleCert> cert;  // cycle checks only
};

const char* entry_kind_name(EntryResult::Kind k);

struct CatalogReport {
    std::vector<EntryResult> entries;
    std::vector<std::string> notes;
    int passed = 0;
    int failed = 0;
    bool all_passed() const { return failed == 0; }
};

CatalogReport run_catalog(const dsl::Catalog& cat, const HypothesisSet& H,
                          const RunOptions& opt, CertStore& store);

// Single-entry runners, shared by run_catalog and the filtered CLI modes.
EntryResult run_cycle_check(const dsl::Catalog& cat, const dsl::CycleCheck& cc,
                            const HypothesisSet& H, const RunOptions& opt, CertStore& store);
EntryResult run_identity_check(const dsl::Catalog& cat, const dsl::IdentityCheck& ic);
EntryResult run_decomp_check(const dsl::Catalog& cat, const dsl::DecompCheck& dc);
EntryResult run_relation_check(const dsl::Catalog& cat, const dsl::RelationCheck& rc);

} // namespace cubecert
