#include "exq/localization.hpp"

#include <set>
#include <stdexcept>

namespace exq {

namespace {

Rational evaluate_label(const IntVector& label, const IntVector& point) {
    mpz_class v = 0;
    for (Eigen::Index i = 0; i < label.size(); ++i) v += mpz_class(label[i]) * point[i];
    return Rational(v, mpz_class(1));
}

// Powers of a base, smallest base first, until the labels separate.
IntVector generic_point(const ParabolicQuotient& q) {
    const int r = q.roots().rank();
    for (int base = 2; base < 64; ++base) {
        IntVector t(r);
        long p = 1;
        for (int i = 0; i < r; ++i, p *= base) t[i] = static_cast<int>(p);
        std::set<long> values;
        bool distinct = true;
        for (const auto& e : q.elements()) {
            const long v = e.label.coeffs.cast<long>().dot(t.cast<long>());
            if (!values.insert(v).second) {
                distinct = false;
                break;
            }
        }
        if (distinct) return t;
    }
    throw std::logic_error("no generic evaluation point found");
}

}  // namespace

LocalizationTable::LocalizationTable(const ChevalleyData& chevalley) : chevalley_(&chevalley) {
    const auto& q = chevalley.quotient();
    const int n = q.size();
    point_ = generic_point(q);

    std::vector<Rational> h(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) h[static_cast<std::size_t>(v)] = evaluate_label(q[v].label.coeffs, point_);

    table_ = RationalMatrix::Zero(n, n);
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        std::fill(x.begin(), x.end(), Rational(0));
        x[static_cast<std::size_t>(w)] = Rational(1);
        // Ordinals are sorted by length, so a backward sweep sees every
        // longer target before its sources.
        for (int v = w - 1; v >= 0; --v) {
            if (q[v].length >= q[w].length) continue;
            Rational acc;
            for (const auto& t : chevalley.terms(v))
                if (t.qpower == 0 && !x[static_cast<std::size_t>(t.target)].is_zero())
                    acc += Rational(t.coeff) * x[static_cast<std::size_t>(t.target)];
            if (!acc.is_zero()) x[static_cast<std::size_t>(v)] = acc / (h[static_cast<std::size_t>(w)] - h[static_cast<std::size_t>(v)]);
        }
        if (x[0].is_zero()) throw std::logic_error("degenerate localization at identity");
        const Rational norm = Rational(1) / x[0];
        for (int v = 0; v <= w; ++v)
            if (!x[static_cast<std::size_t>(v)].is_zero()) table_(w, v) = x[static_cast<std::size_t>(v)] * norm;
    }
}

GradedClass LocalizationTable::classical_product(int u, int v) const {
    const auto& q = chevalley_->quotient();
    const int n = q.size();
    const int top = q[u].length + q[v].length;
    GradedClass out;
    if (top > q.dimension()) return out;

    // sigma_u(x) sigma_v(x) = sum_{w <= x} c^w sigma_w(x), solved upward in x.
    std::vector<std::pair<int, Rational>> found;
    const int lo = std::max(q[u].length, q[v].length);
    for (int x = 0; x < n && q[x].length <= top; ++x) {
        if (q[x].length < lo) continue;
        Rational rhs = table_(x, u) * table_(x, v);
        for (const auto& [w, c] : found)
            if (!table_(x, w).is_zero()) rhs -= c * table_(x, w);
        if (rhs.is_zero()) continue;
        const Rational c = rhs / table_(x, x);
        found.emplace_back(x, c);
        if (q[x].length == top) {
            if (!c.is_integer() || c.sign() < 0)
                throw std::logic_error("classical structure constant " + c.to_string() + " is not a nonnegative integer");
            out.add({0, x}, c);
        }
    }
    return out;
}

std::vector<GradedClass> LocalizationTable::classical_products(int u) const {
    std::vector<GradedClass> out;
    for (int v = 0; v < size(); ++v) out.push_back(classical_product(u, v));
    return out;
}

}  // namespace exq
