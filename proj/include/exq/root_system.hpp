#ifndef EXQ_ROOT_SYSTEM_HPP
#define EXQ_ROOT_SYSTEM_HPP

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace exq {

using IntVector = Eigen::Matrix<int, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Lexicographic order on integer vectors, for use as map keys.
struct LexLess {
    bool operator()(const IntVector& a, const IntVector& b) const;
};

enum class GroupKind { E6, E7, E8, F4, G2 };

int rank_of(GroupKind kind);
std::string to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view text);

// Coefficients on the simple roots.
struct RootCoords {
    IntVector coeffs;
    int height() const { return coeffs.sum(); }
    friend bool operator==(const RootCoords& a, const RootCoords& b) { return a.coeffs == b.coeffs; }
};

// Coefficients on the fundamental weights, i.e. pairings with the simple coroots.
struct WeightCoords {
    IntVector coeffs;
    friend bool operator==(const WeightCoords& a, const WeightCoords& b) { return a.coeffs == b.coeffs; }
};

// "(a1,...,ar)"
std::string format_tuple(const IntVector& v);

// Root datum of an exceptional simple group, Bourbaki numbering.
//
// cartan(i, j) = <alpha_j, alpha_i^vee>. Roots are stored in simple-root
// coordinates; the coroot of a positive root is stored in simple-coroot
// coordinates. Positive roots are sorted by height, then lexicographically,
// so the highest root is last.
class RootSystem {
public:
    GroupKind kind() const { return kind_; }
    int rank() const { return static_cast<int>(cartan_.rows()); }
    const IntMatrix& cartan() const { return cartan_; }

    const std::vector<RootCoords>& positive_roots() const { return positives_; }
    const std::vector<IntVector>& coroots() const { return coroots_; }
    // Squared lengths of the simple roots, normalised so the short ones are minimal integers.
    const IntVector& simple_lengths() const { return simple_lengths_; }

    const RootCoords& highest_root() const { return positives_.back(); }
    // Index of `root` among the positive roots, or -1.
    int index_of(const RootCoords& root) const;

    WeightCoords to_weight(const RootCoords& x) const;
    // Throws std::invalid_argument when `w` is not in the root lattice.
    RootCoords to_root(const WeightCoords& w) const;

    // The fundamental weight varpi_p written on the simple roots; rational in
    // general, so returned scaled by `denominator` (set on return).
    IntVector fundamental_weight_scaled(int node, int& denominator) const;

private:
    friend RootSystem build_root_system(GroupKind kind);

    GroupKind kind_{};
    IntMatrix cartan_;
    IntVector simple_lengths_;
    std::vector<RootCoords> positives_;
    std::vector<IntVector> coroots_;
};

RootSystem build_root_system(GroupKind kind);

// <x, beta^vee> for x on the simple roots and beta a positive root (by index).
int pair(const RootSystem& rs, const RootCoords& x, int beta);
// <lambda, beta^vee> for lambda on the fundamental weights.
int pair(const RootSystem& rs, const WeightCoords& lambda, int beta);

// s_beta(lambda) = lambda - <lambda, beta^vee> beta.
WeightCoords reflect_weight(const RootSystem& rs, const WeightCoords& lambda, int beta);
// Simple reflection s_i on either coordinate system (node i is 1-based).
WeightCoords simple_reflect(const RootSystem& rs, const WeightCoords& lambda, int node);
RootCoords simple_reflect(const RootSystem& rs, const RootCoords& x, int node);

// Coefficient of varpi_p in the sum of the positive roots outside the Levi of
// P_p; the first Chern class of G/P_p is this multiple of the hyperplane class.
int fano_index(const RootSystem& rs, int node);

}  // namespace exq

#endif  // EXQ_ROOT_SYSTEM_HPP
