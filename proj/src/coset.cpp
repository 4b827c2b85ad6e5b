#include "exq/coset.hpp"

#include <algorithm>
#include <stdexcept>

namespace exq {

std::string SpaceId::name() const { return to_string(kind) + "/P" + std::to_string(node); }

const std::vector<SpaceId>& all_spaces() {
    static const std::vector<SpaceId> spaces = {
        {GroupKind::E6, 1}, {GroupKind::E6, 2}, {GroupKind::E7, 1}, {GroupKind::E7, 7}, {GroupKind::E8, 8},
        {GroupKind::F4, 1}, {GroupKind::F4, 4}, {GroupKind::G2, 1}, {GroupKind::G2, 2},
    };
    return spaces;
}

SpaceId make_space(GroupKind kind, int node) {
    const SpaceId s{kind, node};
    const auto& all = all_spaces();
    if (std::find(all.begin(), all.end(), s) == all.end())
        throw std::invalid_argument("unsupported space " + s.name());
    return s;
}

SpaceId parse_space(std::string_view text) {
    const auto slash = text.find("/P");
    if (slash == std::string_view::npos) throw std::invalid_argument("malformed space '" + std::string(text) + "'");
    const auto kind = parse_group_kind(text.substr(0, slash));
    const auto node_text = std::string(text.substr(slash + 2));
    if (node_text.empty() || node_text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed space '" + std::string(text) + "'");
    return make_space(kind, std::stoi(node_text));
}

const std::vector<int>& ParabolicQuotient::degree(int d) const {
    static const std::vector<int> empty;
    if (d < 0 || d >= static_cast<int>(by_degree_.size())) return empty;
    return by_degree_[static_cast<std::size_t>(d)];
}

int ParabolicQuotient::find_weight(const WeightCoords& w) const {
    const auto it = by_weight_.find(w.coeffs);
    return it == by_weight_.end() ? -1 : it->second;
}

int ParabolicQuotient::find_label(const RootCoords& alpha) const {
    const auto it = by_label_.find(alpha.coeffs);
    return it == by_label_.end() ? -1 : it->second;
}

ParabolicQuotient enumerate(const SpaceId& space) {
    ParabolicQuotient q;
    q.space_ = make_space(space.kind, space.node);
    q.roots_ = build_root_system(space.kind);
    q.fano_ = fano_index(q.roots_, space.node);
    const auto& rs = q.roots_;
    const int r = rs.rank();

    CosetElement top;
    top.weight = WeightCoords{IntVector::Unit(r, space.node - 1)};
    top.label = RootCoords{IntVector::Zero(r)};
    std::vector<CosetElement> level{top};
    while (!level.empty()) {
        std::sort(level.begin(), level.end(),
                  [](const CosetElement& a, const CosetElement& b) { return LexLess{}(a.weight.coeffs, b.weight.coeffs); });
        std::vector<int> ords;
        for (auto& e : level) {
            e.ordinal = static_cast<int>(q.elements_.size());
            e.index = static_cast<int>(ords.size());
            ords.push_back(e.ordinal);
            q.by_weight_.emplace(e.weight.coeffs, e.ordinal);
            q.by_label_.emplace(e.label.coeffs, e.ordinal);
            q.elements_.push_back(e);
        }
        q.by_degree_.push_back(std::move(ords));

        std::map<IntVector, CosetElement, LexLess> next;
        for (const auto& e : level) {
            for (int i = 1; i <= r; ++i) {
                const int k = e.weight.coeffs[i - 1];
                if (k <= 0) continue;
                WeightCoords w = simple_reflect(rs, e.weight, i);
                if (next.count(w.coeffs)) continue;
                CosetElement child;
                child.weight = w;
                child.label = e.label;
                child.label.coeffs[i - 1] += k;
                child.length = e.length + 1;
                child.word = e.word;
                child.word.push_back(i);
                next.emplace(w.coeffs, std::move(child));
            }
        }
        level.clear();
        for (auto& [w, e] : next) level.push_back(std::move(e));
    }
    return q;
}

const CosetElement& lookup_label(const ParabolicQuotient& q, const RootCoords& alpha) {
    const int i = q.find_label(alpha);
    if (i < 0) throw UnknownLabel("no Schubert class of " + q.space().name() + " has label " + format_tuple(alpha.coeffs));
    return q[i];
}

const CosetElement& dual(const ParabolicQuotient& q, const CosetElement& e) {
    IntVector w = -e.weight.coeffs;
    if (q.space().kind == GroupKind::E6) {
        std::swap(w[0], w[5]);
        std::swap(w[2], w[4]);
    }
    const int i = q.find_weight(WeightCoords{w});
    if (i < 0) throw std::logic_error("dual weight not in orbit");
    return q[i];
}

std::vector<int> poincare_profile(const ParabolicQuotient& q) {
    std::vector<int> out;
    for (int d = 0; d <= q.dimension(); ++d) out.push_back(static_cast<int>(q.degree(d).size()));
    return out;
}

RootCoords act(const ParabolicQuotient& q, const CosetElement& e, const RootCoords& x) {
    RootCoords y = x;
    for (int i : e.word) y = simple_reflect(q.roots(), y, i);
    return y;
}

}  // namespace exq
