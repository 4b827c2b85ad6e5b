#ifndef EXQ_COSET_HPP
#define EXQ_COSET_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exq/root_system.hpp"

namespace exq {

// One of the nine homogeneous spaces G/P handled here.
struct SpaceId {
    GroupKind kind;
    int node;

    std::string name() const;  // "E6/P1"
    friend bool operator==(const SpaceId&, const SpaceId&) = default;
    friend auto operator<=>(const SpaceId&, const SpaceId&) = default;
};

// Throws std::invalid_argument unless (kind, node) is one of the nine pairs.
SpaceId make_space(GroupKind kind, int node);
SpaceId parse_space(std::string_view text);
const std::vector<SpaceId>& all_spaces();

// A Schubert class of G/P, i.e. a coset w W_P, identified by its orbit weight.
struct CosetElement {
    WeightCoords weight;   // w(varpi)
    RootCoords label;      // varpi - w(varpi)
    int length = 0;        // l(w) = cohomological degree
    std::vector<int> word; // reduced word: w = s_{word.back()} ... s_{word.front()}
    int index = 0;         // position within its degree
    int ordinal = 0;       // position in the whole quotient
};

class UnknownLabel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// W/W_P enumerated as the W-orbit of the fundamental weight varpi_p.
class ParabolicQuotient {
public:
    const SpaceId& space() const { return space_; }
    const RootSystem& roots() const { return roots_; }
    const std::vector<CosetElement>& elements() const { return elements_; }
    const CosetElement& operator[](int ordinal) const { return elements_.at(static_cast<std::size_t>(ordinal)); }
    int size() const { return static_cast<int>(elements_.size()); }
    int dimension() const { return elements_.back().length; }
    int fano() const { return fano_; }

    // Ordinals of the elements of degree d (empty outside 0..dimension).
    const std::vector<int>& degree(int d) const;

    // -1 when absent.
    int find_weight(const WeightCoords& w) const;
    int find_label(const RootCoords& alpha) const;

private:
    friend ParabolicQuotient enumerate(const SpaceId& space);

    SpaceId space_{};
    RootSystem roots_;
    int fano_ = 0;
    std::vector<CosetElement> elements_;
    std::vector<std::vector<int>> by_degree_;
    std::map<IntVector, int, LexLess> by_weight_;
    std::map<IntVector, int, LexLess> by_label_;
};

// Breadth-first orbit generation from varpi. A simple reflection s_i raises
// the length exactly when <lambda, alpha_i^vee> > 0. Each level is sorted by
// weight (lexicographic) so ordinals are reproducible.
ParabolicQuotient enumerate(const SpaceId& space);

// Throws UnknownLabel if no element carries `alpha`.
const CosetElement& lookup_label(const ParabolicQuotient& q, const RootCoords& alpha);

// Poincare dual: lambda -> w0(lambda). w0 = -1 on weights except for E6,
// where it is minus the diagram automorphism (1 6)(3 5).
const CosetElement& dual(const ParabolicQuotient& q, const CosetElement& e);

std::vector<int> poincare_profile(const ParabolicQuotient& q);

// w(x) for the minimal representative of `e`, x on the simple roots.
RootCoords act(const ParabolicQuotient& q, const CosetElement& e, const RootCoords& x);

}  // namespace exq

#endif  // EXQ_COSET_HPP
