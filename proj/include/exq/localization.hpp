#ifndef EXQ_LOCALIZATION_HPP
#define EXQ_LOCALIZATION_HPP

#include <vector>

#include "exq/chevalley.hpp"
#include "exq/rational.hpp"

namespace exq {

// Torus-fixed-point restrictions sigma_v(w) of the equivariant Schubert
// classes, specialised at one integral point t of the Cartan subalgebra.
//
// The equivariant Chevalley rule reads
//     h sigma_v = h(v) sigma_v + sum_{v'} c_{v v'} sigma_{v'},
// with h(v) the label varpi - v(varpi) evaluated at t. Restricting to a
// fixed point w makes (sigma_v(w))_v an eigenvector of the upper triangular
// matrix diag(h(v)) + C for the eigenvalue h(w), normalised by
// sigma_id(w) = 1. The point is chosen so the h(v) are pairwise distinct.
//
// Non-equivariant structure constants do not depend on t, which is what
// makes a single numeric point enough.
class LocalizationTable {
public:
    explicit LocalizationTable(const ChevalleyData& chevalley);

    const IntVector& point() const { return point_; }
    // sigma_v(w)
    const Rational& restriction(int v, int w) const { return table_(w, v); }
    int size() const { return static_cast<int>(table_.rows()); }

    // Classical products sigma_u * sigma_v for every v, as degree
    // l(u) + l(v) classes. Throws std::logic_error if a structure constant
    // comes out non-integral or negative.
    std::vector<GradedClass> classical_products(int u) const;
    GradedClass classical_product(int u, int v) const;

private:
    const ChevalleyData* chevalley_;
    IntVector point_;
    RationalMatrix table_;  // (w, v) -> sigma_v(w)
};

}  // namespace exq

#endif  // EXQ_LOCALIZATION_HPP
