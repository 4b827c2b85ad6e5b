#include "exq/chevalley.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace exq {

ChevalleyData build_chevalley(const ParabolicQuotient& q) {
    return build_chevalley(std::make_shared<const ParabolicQuotient>(q));
}

ChevalleyData build_chevalley(std::shared_ptr<const ParabolicQuotient> quotient) {
    ChevalleyData data;
    data.quotient_ = std::move(quotient);
    const auto& q = *data.quotient_;
    const int c = q.fano();
    data.max_qpower_ = (2 * q.dimension() + c - 1) / c;

    const auto& rs = q.roots();
    const int p = q.space().node;
    for (const auto& e : q.elements()) {
        std::map<std::pair<int, int>, int> acc;  // (qpower, target) -> coeff
        for (std::size_t a = 0; a < rs.positive_roots().size(); ++a) {
            const int d = rs.coroots()[a][p - 1];
            if (d <= 0) continue;
            const RootCoords wa = act(q, e, rs.positive_roots()[a]);
            const WeightCoords target{e.weight.coeffs - d * rs.to_weight(wa).coeffs};
            const int t = q.find_weight(target);
            if (t < 0) throw std::logic_error("reflected weight left the orbit");
            const int len = q[t].length;
            if (len == e.length + 1) acc[{0, t}] += d;
            else if (len == e.length + 1 - d * c) acc[{d, t}] += d;
        }
        std::vector<ChevalleyTerm> terms;
        for (const auto& [key, coeff] : acc) terms.push_back({key.second, key.first, coeff});
        data.terms_.push_back(std::move(terms));
    }
    return data;
}

IntMatrix ChevalleyData::classical_block(int d) const {
    const auto& q = quotient();
    const auto& rows = q.degree(d);
    const auto& cols = q.degree(d + 1);
    IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : terms(rows[i]))
            if (t.qpower == 0) m(static_cast<Eigen::Index>(i), q[t.target].index) += t.coeff;
    return m;
}

GradedClass apply_h(const ChevalleyData& data, const GradedClass& x) {
    const auto& q = data.quotient();
    GradedClass out;
    if (x.is_zero()) return out;
    if (x.degree(q) + 1 > q.dimension() + q.fano() * data.max_qpower())
        throw std::out_of_range("apply_h: degree beyond tracked range");
    for (const auto& [k, c] : x.terms())
        for (const auto& t : data.terms(k.ordinal)) out.add({k.qpower + t.qpower, t.target}, c * Rational(t.coeff));
    return out;
}

GradedClass h_power(const ChevalleyData& data, int k) {
    if (k < 0) throw std::invalid_argument("h_power: negative exponent");
    GradedClass x = GradedClass::basis(0);
    for (int i = 0; i < k; ++i) x = apply_h(data, x);
    return x;
}

int first_quantum_degree(const ChevalleyData& data) {
    const auto& q = data.quotient();
    int best = std::numeric_limits<int>::max();
    for (const auto& e : q.elements())
        for (const auto& t : data.terms(e.ordinal))
            if (t.qpower > 0) best = std::min(best, e.length + 1);
    return best;
}

}  // namespace exq
