#ifndef EXQ_LINALG_HPP
#define EXQ_LINALG_HPP

// Exact linear algebra over a field scalar (Rational in practice).
//
// Pivoting is deterministic: the pivot of a column is the first row, in
// index order, holding a nonzero entry. Nothing here looks at magnitudes,
// so the same input always yields the same echelon form.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "exq/rational.hpp"

namespace exq::linalg {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct Echelon {
    Matrix<Scalar> reduced;                // reduced row echelon form
    std::vector<Eigen::Index> pivot_cols;  // one per nonzero row, increasing
    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols.size()); }
};

template <typename Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    Echelon<Scalar> out{input.eval(), {}};
    auto& m = out.reduced;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = row;
        while (p < m.rows() && m(p, col) == Scalar(0)) ++p;
        if (p == m.rows()) continue;
        if (p != row) m.row(p).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == Scalar(0)) continue;
            const Scalar f = m(r, col);
            for (Eigen::Index j = col; j < m.cols(); ++j)
                if (!(m(row, j) == Scalar(0))) m(r, j) -= f * m(row, j);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
    return reduced_row_echelon(m).rank();
}

// Greedy maximal independent set of columns, scanning left to right.
template <typename Derived>
std::vector<Eigen::Index> independent_columns(const Eigen::MatrixBase<Derived>& m) {
    return reduced_row_echelon(m).pivot_cols;
}

// Unique solution of a square nonsingular system; nullopt when singular.
template <typename DerivedA, typename DerivedB>
std::optional<Matrix<typename DerivedA::Scalar>> solve_square(const Eigen::MatrixBase<DerivedA>& a,
                                                              const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    if (a.rows() != a.cols() || b.rows() != a.rows())
        throw std::invalid_argument("solve_square: shape mismatch");
    const Eigen::Index n = a.rows();
    Matrix<Scalar> aug(n, n + b.cols());
    aug << a, b;
    auto ech = reduced_row_echelon(aug);
    if (ech.rank() < n || ech.pivot_cols[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
    return Matrix<Scalar>(ech.reduced.rightCols(b.cols()));
}

template <typename Derived>
std::optional<Matrix<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    return solve_square(a, Matrix<Scalar>::Identity(a.rows(), a.rows()));
}

// Incremental sparse elimination for an exact linear system A x = b.
//
// Equations are folded in one at a time; each new row is fully reduced
// against the existing pivot rows and, if anything survives, its lowest
// column becomes a new pivot. Pivot rows only ever hold columns larger than
// their pivot, so a single ascending sweep reduces a row, and back
// substitution in reverse insertion order recovers a solution. Free columns
// are set to zero.
template <typename Scalar>
class SparseEliminator {
public:
    using Row = std::map<int, Scalar>;

    enum class Outcome { independent, redundant, inconsistent };

    explicit SparseEliminator(int unknowns) : unknowns_(unknowns) {}

    Outcome add(Row row, Scalar rhs) {
        for (auto it = row.begin(); it != row.end();) {
            if (it->first < 0 || it->first >= unknowns_)
                throw std::out_of_range("SparseEliminator: column out of range");
            if (it->second == Scalar(0)) {
                it = row.erase(it);
                continue;
            }
            const auto piv = pivot_of_.find(it->first);
            if (piv == pivot_of_.end()) {
                ++it;
                continue;
            }
            const Scalar f = it->second;
            const auto& prow = rows_[piv->second];
            for (const auto& [c, v] : prow.coeffs) {
                if (c == it->first) continue;
                auto [slot, inserted] = row.try_emplace(c, Scalar(0));
                slot->second -= f * v;
            }
            rhs -= f * prow.rhs;
            it = row.erase(it);
        }
        for (auto it = row.begin(); it != row.end();)
            it = it->second == Scalar(0) ? row.erase(it) : std::next(it);
        if (row.empty()) {
            if (rhs == Scalar(0)) return Outcome::redundant;
            inconsistent_ = true;
            return Outcome::inconsistent;
        }
        const int pivot = row.begin()->first;
        const Scalar inv = Scalar(1) / row.begin()->second;
        for (auto& [c, v] : row) v *= inv;
        rhs *= inv;
        pivot_of_.emplace(pivot, rows_.size());
        rows_.push_back({pivot, std::move(row), std::move(rhs)});
        return Outcome::independent;
    }

    int unknowns() const { return unknowns_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    int free_dimension() const { return unknowns_ - rank(); }
    bool consistent() const { return !inconsistent_; }
    bool is_pivot(int col) const { return pivot_of_.count(col) != 0; }

    std::vector<int> free_columns() const {
        std::vector<int> out;
        for (int c = 0; c < unknowns_; ++c)
            if (!is_pivot(c)) out.push_back(c);
        return out;
    }

    std::vector<Scalar> solution() const {
        if (inconsistent_) throw std::logic_error("SparseEliminator: system is inconsistent");
        std::vector<Scalar> x(static_cast<std::size_t>(unknowns_), Scalar(0));
        for (auto r = rows_.rbegin(); r != rows_.rend(); ++r) {
            Scalar v = r->rhs;
            for (const auto& [c, a] : r->coeffs)
                if (c != r->pivot) v -= a * x[static_cast<std::size_t>(c)];
            x[static_cast<std::size_t>(r->pivot)] = v;
        }
        return x;
    }

private:
    struct PivotRow {
        int pivot;
        Row coeffs;
        Scalar rhs;
    };

    int unknowns_;
    bool inconsistent_ = false;
    std::vector<PivotRow> rows_;
    std::map<int, std::size_t> pivot_of_;
};

}  // namespace exq::linalg

#endif  // EXQ_LINALG_HPP
