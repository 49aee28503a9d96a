#pragma once

#include "cubecert/faces.hpp"
#include "cubecert/hypotheses.hpp"

#include <memory>
#include <mutex>

namespace cubecert {

struct CheckOptions {
    int trials = 64;
    std::uint64_t seed = 1;
    bool strict = false;
    bool memoize = true;
};

struct ObligationRecord {
    Poly claim;           // asserted nonzero
    std::string context;  // which coordinate / side it came from
    Discharge discharge;
};

struct BranchRecord {
    Branch branch;
    FaceStatus status;
    std::string child_key;  // Subcycle: key into the certificate store
    bool child_admissible = false;
    std::vector<ObligationRecord> obligations;  // PointCycle
    bool admissible = false;
};

struct FaceRecord {
    int index = 0;
    FaceEps eps = FaceEps::Zero;
    std::vector<BranchRecord> branches;
    bool uses_infinity = false;
    bool admissible = false;
};

struct CycleCert {
    Cycle cycle;
    std::vector<FaceRecord> faces;
    bool admissible = false;
    bool uses_infinity_branch = false;
    bool fully_symbolic = true;  // no ProbabilisticOnly discharge anywhere
    std::string first_failure;
};

// Shared memo table for subcycle certificates; insert-if-absent, results
// are deterministic so races only duplicate work.
class CertStore {
public:
    std::shared_ptr<const CycleCert> find(const std::string& key) const;
    std::shared_ptr<const CycleCert> insert(const std::string& key,
                                            std::shared_ptr<const CycleCert> cert);
    std::vector<std::pair<std::string, std::shared_ptr<const CycleCert>>> sorted() const;

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const CycleCert>> map_;
};

// Recursive admissibility check. Failures come back inside the certificate,
// never as exceptions.
std::shared_ptr<const CycleCert> check_admissible(const Cycle& cy, const HypothesisSet& H,
                                                  const CheckOptions& opt, CertStore& store);

} // namespace cubecert
