#ifndef EXQ_RING_HPP
#define EXQ_RING_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exq/chevalley.hpp"
#include "exq/localization.hpp"

namespace exq {

// A ring generator beyond h: a named Schubert class.
struct Generator {
    std::string name;  // "s" or "t"
    int degree = 0;
    int ordinal = 0;
};

// h (degree 1), then the extra generators in order, then q (degree fano).
struct GeneratorSet {
    SpaceId space{};
    std::vector<Generator> extra;
    int q_degree = 0;

    const Generator* find(std::string_view name) const;
};

// Defining labels of s, t for a space, on the simple roots.
std::vector<RootCoords> builtin_generator_labels(const SpaceId& space);
GeneratorSet make_generators(const ParabolicQuotient& q, const std::vector<RootCoords>& labels);
GeneratorSet builtin_generators(const ParabolicQuotient& q);

// Quantum multiplication by a fixed class, stored column by column on the
// Schubert basis; q-linear, so q^k sigma_w maps to q^k times column w.
class GradedOperator {
public:
    GradedOperator() = default;
    GradedOperator(SpaceId space, int shift, std::vector<GradedClass> columns);

    const SpaceId& space() const { return space_; }
    int shift() const { return shift_; }
    int size() const { return static_cast<int>(columns_.size()); }
    const GradedClass& column(int ordinal) const { return columns_.at(static_cast<std::size_t>(ordinal)); }
    const std::vector<GradedClass>& columns() const { return columns_; }

    GradedClass apply(const GradedClass& x) const;

    friend bool operator==(const GradedOperator& a, const GradedOperator& b) {
        return a.space_ == b.space_ && a.shift_ == b.shift_ && a.columns_ == b.columns_;
    }

private:
    SpaceId space_{};
    int shift_ = 0;
    std::vector<GradedClass> columns_;
};

GradedOperator hyperplane_operator(const ChevalleyData& chevalley);

// Quantum Poincare pairing: <sigma_u, sigma_v> = [v = dual(u)], q-powers add.
class PairingForm {
public:
    explicit PairingForm(const ParabolicQuotient& q);
    // qpower -> coefficient
    std::map<int, Rational> operator()(const GradedClass& x, const GradedClass& y) const;
    int dual_of(int ordinal) const { return dual_.at(static_cast<std::size_t>(ordinal)); }

private:
    std::vector<int> dual_;
};

bool is_self_adjoint(const PairingForm& form, const GradedOperator& op);
bool commute(const GradedOperator& a, const GradedOperator& b);
bool is_homogeneous(const ParabolicQuotient& q, const GradedOperator& op);

class InfeasibleSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveReport {
    std::string generator;
    int unknowns = 0;
    int equations = 0;
    // Free dimension left by unit, commutation, self-adjointness and
    // q-linearity alone.
    int ambiguity_structural = 0;
    // Free dimension after also fixing the classical part by localization.
    int ambiguity = 0;
    double seconds = 0;
};

struct OperatorSolution {
    GradedOperator op;
    SolveReport report;
};

// Unknowns: coefficient of q^k sigma_x in M_g(sigma_v), for every v, k >= 0
// and x with l(x) = l(v) + deg g - k c. Constraints, in order:
//   unit           M_g(1) = sigma_g
//   commutation    M_g M_o = M_o M_g for each operator o in `commuting`
//   adjointness    coefficient(v, k, x) = coefficient(dual x, k, dual v)
// then the classical part (k = 0) from `classical`. Pivoting follows the
// unknown order (v, k, x), free unknowns are set to zero.
// Throws InfeasibleSystem when the constraints contradict each other.
OperatorSolution solve_generator_operator(const ChevalleyData& chevalley,
                                          const Generator& g,
                                          const std::vector<GradedClass>& classical,
                                          const std::vector<const GradedOperator*>& commuting);

// Exponents of h^a s^b t^c q^e.
struct Exponents {
    int a = 0, b = 0, c = 0, e = 0;
    friend bool operator==(const Exponents&, const Exponents&) = default;
    friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

struct KrylovRow {
    int degree = 0;
    int dimension = 0;     // classes q^k sigma_w of this degree
    int span_hq = 0;       // rank of h,q monomials applied to 1
    int span_hsq = 0;      // with s
    int span_all = 0;      // with s and t
};

// h, the extra generators and their operators, with memoised monomials.
// Construction is the only mutating step; everything afterwards is safe to
// call from several threads.
class QuantumRing {
public:
    // Solves the operators for the given (or built-in) generators.
    static std::shared_ptr<QuantumRing> build(const SpaceId& space,
                                              std::optional<std::vector<RootCoords>> labels = std::nullopt);
    // From already-solved operators (cache); checks their shapes.
    static std::shared_ptr<QuantumRing> from_operators(const SpaceId& space, const std::vector<RootCoords>& labels,
                                                       std::vector<GradedOperator> ops);

    const ParabolicQuotient& quotient() const { return chevalley_.quotient(); }
    const ChevalleyData& chevalley() const { return chevalley_; }
    const GeneratorSet& generators() const { return generators_; }
    const std::vector<SolveReport>& reports() const { return reports_; }

    // 0 = h, 1 = s, 2 = t
    int operator_count() const { return static_cast<int>(ops_.size()); }
    const GradedOperator& op(int i) const { return ops_.at(static_cast<std::size_t>(i)); }

    int degree(const Exponents& m) const;
    // Exponents naming generators that do not exist throw std::invalid_argument.
    GradedClass monomial(const Exponents& m) const;
    // h^a s^b t^c q^e * y
    GradedClass apply_monomial(const Exponents& m, const GradedClass& y) const;

    // All exponents of total degree d, ascending e, then c, then b, then
    // descending a.
    std::vector<Exponents> monomials_of_degree(int d) const;

    std::vector<KrylovRow> krylov_report() const;

private:
    QuantumRing(ChevalleyData chevalley, GeneratorSet generators);

    ChevalleyData chevalley_;
    GeneratorSet generators_;
    std::vector<GradedOperator> ops_;
    std::vector<SolveReport> reports_;

    mutable std::mutex memo_mutex_;
    mutable std::map<Exponents, GradedClass> memo_;
};

}  // namespace exq

#endif  // EXQ_RING_HPP
