#include "cubecert/faces.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cubecert {

std::string FaceStatus::brief() const {
    switch (kind) {
        case Kind::DegenerateIn: return "in {t" + std::to_string(degenerate_in) + "=1}";
        case Kind::Subcycle: return "subcycle " + subcycle.str();
        case Kind::PointCycle: {
            std::ostringstream os;
            os << "point [";
            for (std::size_t i = 0; i < point_values.size(); ++i) {
                if (i) os << ", ";
                os << point_values[i].str();
            }
            os << "]";
            return os.str();
        }
        case Kind::Violation: return "violation: " + reason;
    }
    return "?";
}

namespace {

FaceStatus classify(const RestrictedTuple& rt) {
    FaceStatus st;
    // Degeneracy first: a component inside {t_j = 1} carries no cube points.
    for (std::size_t k = 0; k < rt.coords.size(); ++k) {
        const auto& c = rt.coords[k];
        if (c.kind == CoordOnBranch::Kind::Value && c.value.is_one())
            st.all_degenerate.push_back(rt.parent_index[k]);
    }
    if (!st.all_degenerate.empty()) {
        st.kind = FaceStatus::Kind::DegenerateIn;
        st.degenerate_in = st.all_degenerate.front();
        return st;
    }
    for (std::size_t k = 0; k < rt.coords.size(); ++k) {
        const auto& c = rt.coords[k];
        std::string where = "coordinate " + std::to_string(rt.parent_index[k]);
        switch (c.kind) {
            case CoordOnBranch::Kind::IdentZero:
                st.kind = FaceStatus::Kind::Violation;
                st.reason = where + " identically 0 on the branch";
                return st;
            case CoordOnBranch::Kind::IdentInf:
                st.kind = FaceStatus::Kind::Violation;
                st.reason = where + " identically infinite on the branch";
                return st;
            case CoordOnBranch::Kind::Indeterminate:
                st.kind = FaceStatus::Kind::Violation;
                st.reason = where + " has a base point (0/0) on the branch";
                return st;
            case CoordOnBranch::Kind::Value:
                break;
        }
    }
    if (rt.dim >= 1) {
        bool any_var = false;
        for (const auto& c : rt.coords)
            any_var = any_var || c.value.depends_on(Sym::x) || c.value.depends_on(Sym::y);
        if (any_var) {
            st.kind = FaceStatus::Kind::Subcycle;
            st.subcycle = rt.to_cycle();
            return st;
        }
    }
    st.kind = FaceStatus::Kind::PointCycle;
    for (std::size_t k = 0; k < rt.coords.size(); ++k) {
        st.point_values.push_back(rt.coords[k].value.expand());
        st.point_index.push_back(rt.parent_index[k]);
    }
    return st;
}

} // namespace

std::vector<FaceBranch> face(const Cycle& cy, int i, FaceEps eps) {
    if (cy.dim < 1) throw Error("face of a point cycle");
    assert(i >= 1 && i <= cy.arity());
    const auto target = eps == FaceEps::Zero ? LocusTarget::Zero : LocusTarget::Pole;
    std::vector<FaceBranch> out;
    for (const Branch& br : solve_branches(cy.coords[i - 1], target, cy.dim)) {
        RestrictedTuple rt = restrict_to_branch(cy, i, br);
        out.push_back({br, classify(rt)});
    }
    return out;
}

std::string DecompositionSignature::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (i) os << " ^ ";
        os << "C" << groups[i].codim() << "(F," << groups[i].coords.size() << ")";
    }
    return os.str();
}

std::optional<DecompositionSignature> decomposability(const Cycle& cy) {
    DecompositionSignature sig;
    std::vector<int> xs, ys, mixed;
    for (int i = 1; i <= cy.arity(); ++i) {
        const CoordFunc& g = cy.coords[i - 1];
        bool in_x = g.depends_on(Sym::x);
        bool in_y = g.depends_on(Sym::y);
        if (in_x && in_y) mixed.push_back(i);
        else if (in_x) xs.push_back(i);
        else if (in_y) ys.push_back(i);
        else sig.groups.push_back({{i}, 0});
    }
    if (!mixed.empty()) {
        // A coordinate that uses both variables welds the variable part
        // into a single group.
        DecompositionSignature::Group g;
        g.coords = xs;
        g.coords.insert(g.coords.end(), ys.begin(), ys.end());
        g.coords.insert(g.coords.end(), mixed.begin(), mixed.end());
        std::sort(g.coords.begin(), g.coords.end());
        g.vars = 2;
        sig.groups.push_back(g);
    } else {
        if (!xs.empty()) sig.groups.push_back({xs, 1});
        if (!ys.empty()) sig.groups.push_back({ys, 1});
    }
    if (sig.groups.size() < 2) return std::nullopt;
    std::sort(sig.groups.begin(), sig.groups.end(),
              [](const DecompositionSignature::Group& l, const DecompositionSignature::Group& r) {
                  if (l.codim() != r.codim()) return l.codim() < r.codim();
                  if (l.coords.size() != r.coords.size()) return l.coords.size() < r.coords.size();
                  return l.coords.front() < r.coords.front();
              });
    return sig;
}

DecompositionSignature signature_from_tags(const std::vector<std::pair<int, int>>& codim_size) {
    DecompositionSignature sig;
    int next = 1;
    for (auto [codim, size] : codim_size) {
        DecompositionSignature::Group g;
        for (int k = 0; k < size; ++k) g.coords.push_back(next++);
        g.vars = size - codim;
        sig.groups.push_back(g);
    }
    return sig;
}

} // namespace cubecert
