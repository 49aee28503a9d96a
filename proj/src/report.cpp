#include "cubecert/report.hpp"

#include <json.hpp>

#include <sstream>

namespace cubecert {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* discharge_name(Discharge::Kind k) {
    switch (k) {
        case Discharge::Kind::SymbolicFactorization: return "symbolic-factorization";
        case Discharge::Kind::ProbabilisticOnly: return "probabilistic-only";
        case Discharge::Kind::Failed: return "failed";
    }
    return "?";
}

const char* status_name(FaceStatus::Kind k) {
    switch (k) {
        case FaceStatus::Kind::DegenerateIn: return "degenerate";
        case FaceStatus::Kind::Subcycle: return "subcycle";
        case FaceStatus::Kind::PointCycle: return "point";
        case FaceStatus::Kind::Violation: return "violation";
    }
    return "?";
}

ordered_json obligation_json(const ObligationRecord& o, const HypothesisSet& H) {
    ordered_json j;
    j["claim"] = o.claim.str();
    j["context"] = o.context;
    ordered_json d;
    d["kind"] = discharge_name(o.discharge.kind);
    if (o.discharge.kind == Discharge::Kind::SymbolicFactorization) {
        d["unit"] = rat_str(o.discharge.unit);
        ordered_json fs = ordered_json::array();
        for (auto [idx, e] : o.discharge.factors) {
            ordered_json f;
            f["hypothesis"] = H.entries()[idx].poly.str();
            f["exponent"] = e;
            fs.push_back(f);
        }
        d["factors"] = fs;
    } else {
        d["trials"] = o.discharge.trials;
        d["seed"] = o.discharge.seed;
        if (!o.discharge.fail_reason.empty()) d["reason"] = o.discharge.fail_reason;
    }
    j["discharge"] = d;
    return j;
}

ordered_json certificate_json(const CycleCert& cert, const HypothesisSet& H) {
    ordered_json j;
    j["cycle"] = cert.cycle.str();
    j["dim"] = cert.cycle.dim;
    j["admissible"] = cert.admissible;
    j["fully_symbolic"] = cert.fully_symbolic;
    j["uses_infinity_branch"] = cert.uses_infinity_branch;
    if (!cert.first_failure.empty()) j["first_failure"] = cert.first_failure;
    ordered_json faces = ordered_json::array();
    for (const auto& fr : cert.faces) {
        ordered_json f;
        f["face"] = "d" + std::to_string(fr.index) + "^" + eps_name(fr.eps);
        f["admissible"] = fr.admissible;
        ordered_json branches = ordered_json::array();
        for (const auto& br : fr.branches) {
            ordered_json b;
            b["branch"] = br.branch.str();
            b["at_infinity"] = br.branch.at_infinity();
            b["verdict"] = status_name(br.status.kind);
            switch (br.status.kind) {
                case FaceStatus::Kind::DegenerateIn: {
                    b["hyperplane"] = br.status.degenerate_in;
                    ordered_json all = ordered_json::array();
                    for (int t : br.status.all_degenerate) all.push_back(t);
                    b["all_hyperplanes"] = all;
                    break;
                }
                case FaceStatus::Kind::Subcycle:
                    b["subcycle"] = br.status.subcycle.str();
                    b["subcycle_key"] = br.child_key;
                    b["subcycle_admissible"] = br.child_admissible;
                    break;
                case FaceStatus::Kind::PointCycle: {
                    ordered_json vals = ordered_json::array();
                    for (const auto& v : br.status.point_values) vals.push_back(v.str());
                    b["values"] = vals;
                    ordered_json obs = ordered_json::array();
                    for (const auto& o : br.obligations) obs.push_back(obligation_json(o, H));
                    b["obligations"] = obs;
                    break;
                }
                case FaceStatus::Kind::Violation:
                    b["reason"] = br.status.reason;
                    break;
            }
            b["admissible"] = br.admissible;
            branches.push_back(b);
        }
        f["branches"] = branches;
        faces.push_back(f);
    }
    j["faces"] = faces;
    return j;
}

} // namespace

std::string render_certificate_text(const CycleCert& cert) {
    std::ostringstream os;
    os << (cert.cycle.name.empty() ? "(anonymous)" : cert.cycle.name) << " = "
       << cert.cycle.str() << "\n";
    for (const auto& fr : cert.faces) {
        for (const auto& br : fr.branches) {
            os << "  d" << fr.index << "^" << eps_name(fr.eps) << "  ";
            std::string bs = br.branch.str();
            os << bs;
            for (std::size_t pad = bs.size(); pad < 28; ++pad) os << ' ';
            os << " " << br.status.brief();
            if (br.status.kind == FaceStatus::Kind::PointCycle) {
                for (const auto& o : br.obligations) {
                    if (o.discharge.kind != Discharge::Kind::SymbolicFactorization)
                        os << "  [" << discharge_name(o.discharge.kind) << ": " << o.claim.str()
                           << "]";
                }
            }
            os << "\n";
        }
        if (fr.branches.empty() && fr.index > 0) continue;
    }
    os << "  => " << (cert.admissible ? "admissible" : "NOT ADMISSIBLE");
    if (cert.admissible && cert.fully_symbolic) os << " (all obligations factored)";
    if (cert.uses_infinity_branch) os << " [uses at-infinity branches]";
    os << "\n";
    return os.str();
}

std::string render_text(const CatalogReport& report, const CertStore& store,
                        const HypothesisSet& H, const ReportMeta& meta) {
    std::ostringstream os;
    os << "ledger: " << H.size() << " nonvanishing hypotheses; seed " << meta.seed
       << ", trials " << meta.trials << (meta.strict ? ", strict" : "") << "\n\n";
    for (const auto& e : report.entries) {
        os << (e.pass ? "[PASS] " : "[FAIL] ") << entry_kind_name(e.kind) << " " << e.name
           << "\n";
        for (const auto& d : e.details) os << "       " << d << "\n";
        if (e.cert && !e.pass) os << render_certificate_text(*e.cert);
    }
    os << "\n";
    for (const auto& n : report.notes) os << "note: " << n << "\n";
    os << "\nsummary: " << report.passed << " passed, " << report.failed << " failed ("
       << store.sorted().size() << " distinct cycles certified)\n";
    return os.str();
}

std::string render_json(const CatalogReport& report, const CertStore& store,
                        const HypothesisSet& H, const ReportMeta& meta) {
    ordered_json j;
    j["tool"] = "cubecert";
    j["schema_version"] = 1;
    j["seed"] = meta.seed;
    j["trials"] = meta.trials;
    j["strict"] = meta.strict;
    ordered_json hyp = ordered_json::array();
    for (const auto& e : H.entries()) {
        ordered_json he;
        he["poly"] = e.poly.str();
        ordered_json prov = ordered_json::array();
        for (const auto& p : e.provenance) prov.push_back(p);
        he["provenance"] = prov;
        hyp.push_back(he);
    }
    j["hypotheses"] = hyp;
    ordered_json notes = ordered_json::array();
    for (const auto& n : report.notes) notes.push_back(n);
    for (const auto& n : H.notes()) notes.push_back(n);
    j["notes"] = notes;
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) {
        ordered_json je;
        je["kind"] = entry_kind_name(e.kind);
        je["name"] = e.name;
        je["pass"] = e.pass;
        ordered_json det = ordered_json::array();
        for (const auto& d : e.details) det.push_back(d);
        je["details"] = det;
        if (e.cert) je["certificate"] = certificate_json(*e.cert, H);
        entries.push_back(je);
    }
    j["entries"] = entries;
    ordered_json certs;
    for (const auto& [key, cert] : store.sorted()) certs[key] = certificate_json(*cert, H);
    j["certified_cycles"] = certs;
    ordered_json summary;
    summary["passed"] = report.passed;
    summary["failed"] = report.failed;
    summary["distinct_cycles"] = store.sorted().size();
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

} // namespace cubecert
