#ifndef EXQ_CHEVALLEY_HPP
#define EXQ_CHEVALLEY_HPP

#include <memory>
#include <vector>

#include "exq/coset.hpp"
#include "exq/graded.hpp"

namespace exq {

struct ChevalleyTerm {
    int target = 0;  // ordinal
    int qpower = 0;  // 0 for classical terms
    int coeff = 0;
};

// Quantum multiplication by the hyperplane class h = sigma_{s_p}.
//
// For a coset with weight lambda = w(varpi) and a positive root alpha with
// d = <varpi, alpha^vee> > 0, the coset of w s_alpha has weight
// lambda - d w(alpha). It contributes d sigma_{w s_alpha} when its length is
// l(w) + 1, and d q^d sigma_{w s_alpha} when its length is l(w) + 1 - d c,
// c the Fano index. Contributions landing on the same term are summed.
class ChevalleyData {
public:
    const ParabolicQuotient& quotient() const { return *quotient_; }
    const std::shared_ptr<const ParabolicQuotient>& shared_quotient() const { return quotient_; }
    const std::vector<ChevalleyTerm>& terms(int ordinal) const { return terms_.at(static_cast<std::size_t>(ordinal)); }

    // Largest q-power a class may carry: ceil(2 dim / c), enough for any
    // product of two Schubert classes.
    int max_qpower() const { return max_qpower_; }

    // Classical part of h, degree d -> d+1: rows are the degree-d ordinals
    // in order, columns the degree-(d+1) ones.
    IntMatrix classical_block(int d) const;

private:
    friend ChevalleyData build_chevalley(std::shared_ptr<const ParabolicQuotient> q);

    std::shared_ptr<const ParabolicQuotient> quotient_;
    int max_qpower_ = 0;
    std::vector<std::vector<ChevalleyTerm>> terms_;
};

ChevalleyData build_chevalley(std::shared_ptr<const ParabolicQuotient> q);
ChevalleyData build_chevalley(const ParabolicQuotient& q);

// h * x. Throws std::out_of_range when the result would leave the tracked
// degree range dim + c * max_qpower.
GradedClass apply_h(const ChevalleyData& data, const GradedClass& x);

// h^k as a class.
GradedClass h_power(const ChevalleyData& data, int k);

// Lowest degree at which some h * sigma_w carries a q term.
int first_quantum_degree(const ChevalleyData& data);

}  // namespace exq

#endif  // EXQ_CHEVALLEY_HPP
