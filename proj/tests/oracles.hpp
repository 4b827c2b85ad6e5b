#ifndef EXQ_TESTS_ORACLES_HPP
#define EXQ_TESTS_ORACLES_HPP

// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms; only its value types are used.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "exq/refdata.hpp"

namespace oracle {

using exq::Rational;

inline exq::RootCoords root(std::initializer_list<int> v) {
    exq::RootCoords r{exq::IntVector(static_cast<Eigen::Index>(v.size()))};
    Eigen::Index i = 0;
    for (int x : v) r.coeffs[i++] = x;
    return r;
}

// Degrees of the basic invariants.
inline std::vector<int> weyl_degrees(exq::GroupKind k) {
    switch (k) {
    case exq::GroupKind::E6: return {2, 5, 6, 8, 9, 12};
    case exq::GroupKind::E7: return {2, 6, 8, 10, 12, 14, 18};
    case exq::GroupKind::E8: return {2, 8, 12, 14, 18, 20, 24, 30};
    case exq::GroupKind::F4: return {2, 6, 8, 12};
    case exq::GroupKind::G2: return {2, 6};
    }
    return {};
}

inline int lie_dimension(exq::GroupKind k) {
    switch (k) {
    case exq::GroupKind::E6: return 78;
    case exq::GroupKind::E7: return 133;
    case exq::GroupKind::E8: return 248;
    case exq::GroupKind::F4: return 52;
    case exq::GroupKind::G2: return 14;
    }
    return 0;
}

// Levi factor of each maximal parabolic, as invariant degrees of its Weyl group.
inline std::vector<int> levi_degrees(const exq::SpaceId& s) {
    using exq::GroupKind;
    if (s.kind == GroupKind::E6 && s.node == 1) return {2, 4, 5, 6, 8};          // D5
    if (s.kind == GroupKind::E6 && s.node == 2) return {2, 3, 4, 5, 6};          // A5
    if (s.kind == GroupKind::E7 && s.node == 1) return {2, 4, 6, 6, 8, 10};      // D6
    if (s.kind == GroupKind::E7 && s.node == 7) return {2, 5, 6, 8, 9, 12};      // E6
    if (s.kind == GroupKind::E8) return {2, 6, 8, 10, 12, 14, 18};               // E7
    if (s.kind == GroupKind::F4) return {2, 4, 6};                               // C3 / B3
    return {2};                                                                  // A1
}

inline std::int64_t product(const std::vector<int>& v) {
    std::int64_t p = 1;
    for (int x : v) p *= x;
    return p;
}

// prod [d_i]_t / prod [e_j]_t with [d]_t = 1 + t + ... + t^{d-1}.
inline std::vector<std::int64_t> poincare_polynomial(const exq::SpaceId& s) {
    std::vector<std::int64_t> p{1};
    for (int d : weyl_degrees(s.kind)) {
        std::vector<std::int64_t> next(p.size() + static_cast<std::size_t>(d - 1), 0);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (int j = 0; j < d; ++j) next[i + static_cast<std::size_t>(j)] += p[i];
        p = next;
    }
    for (int e : levi_degrees(s)) {
        // divide by 1 + t + ... + t^{e-1}: multiply by (1 - t), divide by (1 - t^e)
        std::vector<std::int64_t> m(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] += p[i];
            m[i + 1] -= p[i];
        }
        std::vector<std::int64_t> q(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) q[i] = m[i] + (i >= static_cast<std::size_t>(e) ? q[i - static_cast<std::size_t>(e)] : 0);
        while (!q.empty() && q.back() == 0) q.pop_back();
        p = q;
    }
    return p;
}

// Plain Gauss-Jordan inverse, written out separately from the library.
inline std::optional<std::vector<std::vector<Rational>>> invert(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Rational f = Rational(1) / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            const Rational g = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= g * a[c][j];
                inv[r][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

inline exq::SpaceId space(const char* s) { return exq::parse_space(s); }

inline std::string reference_dir() { return EXQ_REFERENCE_DIR; }

}  // namespace oracle

#endif  // EXQ_TESTS_ORACLES_HPP
