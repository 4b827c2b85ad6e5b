#include "exq/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "exq/linalg.hpp"
#include "exq/rational.hpp"

namespace exq {

bool LexLess::operator()(const IntVector& a, const IntVector& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

int rank_of(GroupKind kind) {
    switch (kind) {
        case GroupKind::E6: return 6;
        case GroupKind::E7: return 7;
        case GroupKind::E8: return 8;
        case GroupKind::F4: return 4;
        case GroupKind::G2: return 2;
    }
    throw std::invalid_argument("unknown group kind");
}

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::E6: return "E6";
        case GroupKind::E7: return "E7";
        case GroupKind::E8: return "E8";
        case GroupKind::F4: return "F4";
        case GroupKind::G2: return "G2";
    }
    throw std::invalid_argument("unknown group kind");
}

GroupKind parse_group_kind(std::string_view text) {
    for (auto k : {GroupKind::E6, GroupKind::E7, GroupKind::E8, GroupKind::F4, GroupKind::G2})
        if (to_string(k) == text) return k;
    throw std::invalid_argument("unknown group type '" + std::string(text) + "'");
}

std::string format_tuple(const IntVector& v) {
    std::ostringstream os;
    os << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

namespace {

IntMatrix cartan_matrix(GroupKind kind) {
    const int r = rank_of(kind);
    IntMatrix c = 2 * IntMatrix::Identity(r, r);
    auto link = [&](int i, int j) { c(i - 1, j - 1) = c(j - 1, i - 1) = -1; };
    switch (kind) {
        case GroupKind::E6:
        case GroupKind::E7:
        case GroupKind::E8:
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for (int i = 4; i < r; ++i) link(i, i + 1);
            break;
        case GroupKind::F4:
            // alpha_1, alpha_2 long; <alpha_2, alpha_3^vee> = -2.
            link(1, 2);
            link(3, 4);
            c(1, 2) = -1;
            c(2, 1) = -2;
            break;
        case GroupKind::G2:
            // alpha_1 short; <alpha_2, alpha_1^vee> = -3.
            c(0, 1) = -3;
            c(1, 0) = -1;
            break;
    }
    return c;
}

IntVector half_square_lengths(GroupKind kind) {
    switch (kind) {
        case GroupKind::F4: return (IntVector(4) << 2, 2, 1, 1).finished();
        case GroupKind::G2: return (IntVector(2) << 1, 3).finished();
        default: return IntVector::Ones(rank_of(kind));
    }
}

}  // namespace

RootSystem build_root_system(GroupKind kind) {
    RootSystem rs;
    rs.kind_ = kind;
    rs.cartan_ = cartan_matrix(kind);
    rs.simple_lengths_ = half_square_lengths(kind);
    const int r = rs.rank();

    std::set<IntVector, LexLess> seen;
    std::vector<IntVector> frontier;
    for (int i = 0; i < r; ++i) {
        IntVector e = IntVector::Unit(r, i);
        seen.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<IntVector> next;
        for (const auto& x : frontier) {
            for (int i = 1; i <= r; ++i) {
                IntVector y = simple_reflect(rs, RootCoords{x}, i).coeffs;
                if ((y.array() >= 0).all() && seen.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    std::vector<IntVector> roots(seen.begin(), seen.end());
    std::stable_sort(roots.begin(), roots.end(),
                     [](const IntVector& a, const IntVector& b) { return a.sum() < b.sum(); });

    // Gram matrix (alpha_i, alpha_j) = cartan(i, j) * |alpha_i|^2 / 2.
    IntMatrix gram = rs.cartan_;
    for (int i = 0; i < r; ++i) gram.row(i) *= rs.simple_lengths_[i];
    for (const auto& x : roots) {
        const int half_norm = (x.transpose() * gram * x)(0, 0) / 2;
        IntVector co(r);
        for (int i = 0; i < r; ++i) {
            const int num = x[i] * rs.simple_lengths_[i];
            if (num % half_norm != 0) throw std::logic_error("non-integral coroot");
            co[i] = num / half_norm;
        }
        rs.positives_.push_back(RootCoords{x});
        rs.coroots_.push_back(co);
    }
    return rs;
}

int RootSystem::index_of(const RootCoords& root) const {
    for (std::size_t i = 0; i < positives_.size(); ++i)
        if (positives_[i].coeffs == root.coeffs) return static_cast<int>(i);
    return -1;
}

WeightCoords RootSystem::to_weight(const RootCoords& x) const { return WeightCoords{cartan_ * x.coeffs}; }

RootCoords RootSystem::to_root(const WeightCoords& w) const {
    const int r = rank();
    RationalMatrix a(r, r);
    RationalMatrix b(r, 1);
    for (int i = 0; i < r; ++i) {
        b(i, 0) = Rational(w.coeffs[i]);
        for (int j = 0; j < r; ++j) a(i, j) = Rational(cartan_(i, j));
    }
    const auto sol = linalg::solve_square(a, b);
    if (!sol) throw std::logic_error("singular Cartan matrix");
    IntVector out(r);
    for (int i = 0; i < r; ++i) {
        const Rational& v = (*sol)(i, 0);
        if (!v.is_integer()) throw std::invalid_argument("weight " + format_tuple(w.coeffs) + " is not in the root lattice");
        out[i] = static_cast<int>(v.numerator().get_si());
    }
    return RootCoords{out};
}

IntVector RootSystem::fundamental_weight_scaled(int node, int& denominator) const {
    const int r = rank();
    RationalMatrix a(r, r);
    RationalMatrix b = RationalMatrix::Zero(r, 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) a(i, j) = Rational(cartan_(i, j));
    b(node - 1, 0) = Rational(1);
    const auto sol = linalg::solve_square(a, b);
    if (!sol) throw std::logic_error("singular Cartan matrix");
    long den = 1;
    for (int i = 0; i < r; ++i) den = std::lcm(den, (*sol)(i, 0).denominator().get_si());
    IntVector out(r);
    for (int i = 0; i < r; ++i) out[i] = static_cast<int>(((*sol)(i, 0) * Rational(den)).numerator().get_si());
    denominator = static_cast<int>(den);
    return out;
}

int pair(const RootSystem& rs, const RootCoords& x, int beta) {
    return rs.coroots().at(static_cast<std::size_t>(beta)).dot(rs.cartan() * x.coeffs);
}

int pair(const RootSystem& rs, const WeightCoords& lambda, int beta) {
    return rs.coroots().at(static_cast<std::size_t>(beta)).dot(lambda.coeffs);
}

WeightCoords reflect_weight(const RootSystem& rs, const WeightCoords& lambda, int beta) {
    const int k = pair(rs, lambda, beta);
    return WeightCoords{lambda.coeffs - k * rs.to_weight(rs.positive_roots()[static_cast<std::size_t>(beta)]).coeffs};
}

WeightCoords simple_reflect(const RootSystem& rs, const WeightCoords& lambda, int node) {
    const int k = lambda.coeffs[node - 1];
    return WeightCoords{lambda.coeffs - k * rs.cartan().col(node - 1)};
}

RootCoords simple_reflect(const RootSystem& rs, const RootCoords& x, int node) {
    const int k = rs.cartan().row(node - 1).dot(x.coeffs);
    RootCoords out = x;
    out.coeffs[node - 1] -= k;
    return out;
}

int fano_index(const RootSystem& rs, int node) {
    if (node < 1 || node > rs.rank()) throw std::out_of_range("fano_index: node out of range");
    IntVector sum = IntVector::Zero(rs.rank());
    for (const auto& a : rs.positive_roots())
        if (a.coeffs[node - 1] > 0) sum += a.coeffs;
    return rs.cartan().row(node - 1).dot(sum);
}

}  // namespace exq
