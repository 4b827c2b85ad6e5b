#ifndef EXQ_GRADED_HPP
#define EXQ_GRADED_HPP

#include <compare>
#include <map>
#include <string>

#include "exq/coset.hpp"
#include "exq/rational.hpp"

namespace exq {

// q^qpower * sigma_{ordinal}
struct ClassKey {
    int qpower = 0;
    int ordinal = 0;
    friend bool operator==(const ClassKey&, const ClassKey&) = default;
    friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

// A rational combination of q^k sigma_w. Zero coefficients are never stored.
//
// The class does not know its space; homogeneity (k*fano + l(w) constant) is
// checked against a quotient with is_homogeneous().
class GradedClass {
public:
    using Terms = std::map<ClassKey, Rational>;

    GradedClass() = default;
    static GradedClass basis(int ordinal, int qpower = 0);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const ClassKey& k) const;

    void add(const ClassKey& k, const Rational& c);
    GradedClass& operator+=(const GradedClass& o);
    GradedClass& operator-=(const GradedClass& o);
    GradedClass& operator*=(const Rational& c);
    GradedClass q_shifted(int by) const;

    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator*(const Rational& c, GradedClass a) { return a *= c; }
    friend bool operator==(const GradedClass& a, const GradedClass& b) { return a.terms_ == b.terms_; }

    // Cohomological degree of the first term; -1 for zero.
    int degree(const ParabolicQuotient& q) const;
    bool is_homogeneous(const ParabolicQuotient& q) const;
    // True iff the class is exactly 1 * sigma_{ordinal}.
    bool is_schubert(int ordinal) const;

    // "2 s(1,1,2,0) + q s(0,0,0,0)"-style rendering with labels.
    std::string format(const ParabolicQuotient& q) const;

private:
    Terms terms_;
};

inline int degree_of(const ParabolicQuotient& q, const ClassKey& k) {
    return k.qpower * q.fano() + q[k.ordinal].length;
}

}  // namespace exq

#endif  // EXQ_GRADED_HPP
