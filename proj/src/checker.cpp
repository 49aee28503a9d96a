#include "cubecert/checker.hpp"

#include <algorithm>

namespace cubecert {

std::shared_ptr<const CycleCert> CertStore::find(const std::string& key) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
}

std::shared_ptr<const CycleCert> CertStore::insert(const std::string& key,
                                                   std::shared_ptr<const CycleCert> cert) {
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = map_.emplace(key, std::move(cert));
    return it->second;
}

std::vector<std::pair<std::string, std::shared_ptr<const CycleCert>>> CertStore::sorted() const {
    std::lock_guard<std::mutex> lk(mu_);
    return {map_.begin(), map_.end()};
}

namespace {

void add_obligation(BranchRecord& br, const Poly& claim, const std::string& context,
                    const HypothesisSet& H, const CheckOptions& opt) {
    Poly prim = claim.primitive_part();
    if (prim.is_constant()) return;  // nonzero rational, nothing to discharge
    for (const auto& o : br.obligations)
        if (o.claim == prim) return;
    ObligationRecord rec;
    rec.claim = prim;
    rec.context = context;
    rec.discharge = certify_nonzero(prim, H, opt.trials, obligation_seed(opt.seed, prim));
    br.obligations.push_back(std::move(rec));
}

std::string face_name(int index, FaceEps eps) {
    return "d" + std::to_string(index) + "^" + eps_name(eps);
}

} // namespace

std::shared_ptr<const CycleCert> check_admissible(const Cycle& cy, const HypothesisSet& H,
                                                  const CheckOptions& opt, CertStore& store) {
    const std::string key = cy.key();
    if (opt.memoize) {
        if (auto hit = store.find(key)) return hit;
    }

    auto cert = std::make_shared<CycleCert>();
    cert->cycle = cy;
    cert->admissible = true;

    if (cy.dim == 0) {
        // A point: the admissibility content is that every coordinate value
        // is neither 0 nor infinite.
        FaceRecord fr;
        fr.index = 0;
        BranchRecord br;
        br.status.kind = FaceStatus::Kind::PointCycle;
        for (int i = 1; i <= cy.arity(); ++i) {
            RatFunc v = cy.coords[i - 1].expand();
            br.status.point_values.push_back(v);
            br.status.point_index.push_back(i);
            std::string at = "coordinate " + std::to_string(i);
            add_obligation(br, v.num(), at + " != 0", H, opt);
            add_obligation(br, v.den(), at + " != infinity", H, opt);
        }
        br.admissible = true;
        for (const auto& o : br.obligations) {
            if (!o.discharge.ok(opt.strict)) br.admissible = false;
            if (o.discharge.kind == Discharge::Kind::ProbabilisticOnly)
                cert->fully_symbolic = false;
        }
        fr.admissible = br.admissible;
        cert->admissible = br.admissible;
        if (!br.admissible) cert->first_failure = "point value obligation failed";
        fr.branches.push_back(std::move(br));
        cert->faces.push_back(std::move(fr));
        return opt.memoize ? store.insert(key, cert) : cert;
    }

    for (int i = 1; i <= cy.arity(); ++i) {
        for (FaceEps eps : {FaceEps::Zero, FaceEps::Infinity}) {
            FaceRecord fr;
            fr.index = i;
            fr.eps = eps;
            fr.admissible = true;
            std::vector<FaceBranch> branches;
            try {
                branches = face(cy, i, eps);
            } catch (const UnsolvableBranch& e) {
                BranchRecord br;
                br.status.kind = FaceStatus::Kind::Violation;
                br.status.reason = e.what();
                br.admissible = false;
                fr.branches.push_back(std::move(br));
                fr.admissible = false;
            }
            for (auto& fb : branches) {
                BranchRecord br;
                br.branch = fb.branch;
                br.status = std::move(fb.status);
                if (fb.branch.at_infinity()) {
                    fr.uses_infinity = true;
                    cert->uses_infinity_branch = true;
                }
                switch (br.status.kind) {
                    case FaceStatus::Kind::DegenerateIn:
                        br.admissible = true;
                        break;
                    case FaceStatus::Kind::Violation:
                        br.admissible = false;
                        break;
                    case FaceStatus::Kind::Subcycle: {
                        auto child = check_admissible(br.status.subcycle, H, opt, store);
                        br.child_key = br.status.subcycle.key();
                        br.child_admissible = child->admissible;
                        br.admissible = child->admissible;
                        if (!child->fully_symbolic) cert->fully_symbolic = false;
                        if (child->uses_infinity_branch) cert->uses_infinity_branch = true;
                        break;
                    }
                    case FaceStatus::Kind::PointCycle: {
                        br.admissible = true;
                        for (std::size_t k = 0; k < br.status.point_values.size(); ++k) {
                            const RatFunc& v = br.status.point_values[k];
                            std::string at =
                                "coordinate " + std::to_string(br.status.point_index[k]);
                            add_obligation(br, v.num(), at + " != 0", H, opt);
                            add_obligation(br, v.den(), at + " != infinity", H, opt);
                        }
                        for (const auto& o : br.obligations) {
                            if (!o.discharge.ok(opt.strict)) br.admissible = false;
                            if (o.discharge.kind == Discharge::Kind::ProbabilisticOnly)
                                cert->fully_symbolic = false;
                        }
                        break;
                    }
                }
                if (!br.admissible) fr.admissible = false;
                fr.branches.push_back(std::move(br));
            }
            if (!fr.admissible && cert->admissible) {
                cert->admissible = false;
                cert->first_failure = face_name(i, eps) + " of " + cy.str();
            } else if (!fr.admissible) {
                cert->admissible = false;
            }
            cert->faces.push_back(std::move(fr));
        }
    }
    return opt.memoize ? store.insert(key, cert) : cert;
}

} // namespace cubecert
