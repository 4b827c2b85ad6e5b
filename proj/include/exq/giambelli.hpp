#ifndef EXQ_GIAMBELLI_HPP
#define EXQ_GIAMBELLI_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "exq/ring.hpp"

namespace exq {

struct GiambelliTerm {
    Rational coeff;
    Exponents exps;
    friend bool operator==(const GiambelliTerm&, const GiambelliTerm&) = default;
};

// Sum of coeff * h^a s^b t^c q^e. Kept sorted in monomial order, no zero
// coefficients, no repeated monomials.
class GiambelliPolynomial {
public:
    GiambelliPolynomial() = default;
    explicit GiambelliPolynomial(std::vector<GiambelliTerm> terms);
    static GiambelliPolynomial one();

    const std::vector<GiambelliTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for zero; throws std::invalid_argument when not homogeneous.
    int degree(const QuantumRing& ring) const;

    // "2 h^8 - 5 h^4 s + s^2"
    std::string format() const;
    // "2h^{8} - 5h^{4}s + s^{2}", fractions as \frac{a}{b}
    std::string format_latex() const;

    friend bool operator==(const GiambelliPolynomial&, const GiambelliPolynomial&) = default;

private:
    std::vector<GiambelliTerm> terms_;
};

// Monomial order used everywhere: ascending e, then c, then b, then
// descending a.
bool monomial_before(const Exponents& x, const Exponents& y);

std::vector<Exponents> monomial_basis(const QuantumRing& ring, int d);

GradedClass evaluate(const QuantumRing& ring, const GiambelliPolynomial& p);

// x * y where px evaluates to x: the monomial operators of px applied to y.
GradedClass star(const QuantumRing& ring, const GiambelliPolynomial& px, const GradedClass& y);

// ordinal -> polynomial
struct GiambelliTable {
    SpaceId space{};
    std::map<int, GiambelliPolynomial> entries;
};

class UnsolvableDegree : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per degree: the degree-d monomials applied to 1 span a matrix; its pivot
// columns (scanning in monomial order) are kept, so later monomials get zero
// coefficients when the set is dependent. Every entry is evaluated back to
// its class before returning.
GiambelliTable solve_table(const QuantumRing& ring);

enum class Agreement { equal_as_polynomials, equal_by_evaluation, mismatch };
std::string to_string(Agreement a);

struct RowComparison {
    int ordinal = 0;
    Agreement agreement = Agreement::mismatch;
    GradedClass left, right;  // evaluations
};

struct TableComparison {
    std::vector<RowComparison> rows;
    int count(Agreement a) const;
    bool ok() const { return count(Agreement::mismatch) == 0; }
};

// Throws std::invalid_argument when the tables cover different classes or
// different spaces.
TableComparison compare_tables(const QuantumRing& ring, const GiambelliTable& a, const GiambelliTable& b);

// Blocks "Schubert cells in degree d" with one align row per class.
std::string emit_latex(const QuantumRing& ring, const GiambelliTable& table);

}  // namespace exq

#endif  // EXQ_GIAMBELLI_HPP
