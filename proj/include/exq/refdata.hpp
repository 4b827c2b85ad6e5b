#ifndef EXQ_REFDATA_HPP
#define EXQ_REFDATA_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exq/giambelli.hpp"

namespace exq {

// Reference file format, one space per file:
//
//   # comment
//   space E7/P1
//   coords 1 3 4 2 5 6 7          optional; printed slot k holds simple root coords[k]
//   gen s 4 (1,1,1,1,0,0,0)
//   row (1,1,1,0,1,0,0) : 1/1 4 0 0 0 ; -1/1 0 1 0 0
//
// A term is "coef a b c e" for coef h^a s^b t^c q^e, coef in lowest terms.
// Labels are parenthesised tuples, or "d.i": a tag i among the classes of
// degree d, matched to a class by evaluating the row.

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RefLabel {
    enum class Kind { tuple, indexed };
    Kind kind = Kind::tuple;
    IntVector tuple;  // printed order
    int degree = 0, index = 0;

    std::string text() const;
    friend bool operator==(const RefLabel& a, const RefLabel& b) {
        return a.kind == b.kind && a.tuple == b.tuple && a.degree == b.degree && a.index == b.index;
    }
};

struct RefGenerator {
    std::string name;
    int degree = 0;
    RefLabel label;
    friend bool operator==(const RefGenerator&, const RefGenerator&) = default;
};

struct RefRow {
    RefLabel label;
    GiambelliPolynomial poly;
    int line = 0;  // source line, 0 when built in memory
};

struct ReferenceTable {
    SpaceId space{};
    std::vector<int> coords;  // empty for the identity
    std::vector<RefGenerator> gens;
    std::vector<RefRow> rows;

    // Printed tuple <-> simple-root coordinates.
    RootCoords to_roots(const IntVector& printed) const;
    IntVector to_printed(const RootCoords& x) const;
    int generator_degree(std::size_t i) const { return i < gens.size() ? gens[i].degree : 0; }

    // Ignores source lines.
    friend bool operator==(const ReferenceTable& a, const ReferenceTable& b);
};

// Syntax only. Throws ParseError.
ReferenceTable parse_reference_text(std::string_view text);
// Arity, lowest terms already enforced by the parser; here: labels exist,
// homogeneity, row degree = class degree, unique labels, per-degree row
// counts equal the Betti numbers. Throws InvariantViolation.
void validate(const ReferenceTable& table, const ParabolicQuotient& q);
// Parse and validate; I/O failures throw std::runtime_error.
ReferenceTable parse_reference(const std::filesystem::path& path);

std::string serialize(const ReferenceTable& table);

std::string reference_file_name(const SpaceId& space);  // "e7_p1.ref"
std::map<SpaceId, ReferenceTable> load_corpus(const std::filesystem::path& dir);

// The "(a1 ... a8)" digit string used by E8 tableaux, whose printed order is
// a1 a3 a4 a5 a6 a7 a8 a2.
RootCoords e8_tableau_label(std::string_view digits);

// A solved table in reference form (simple-root order, tuple labels).
ReferenceTable to_reference(const QuantumRing& ring, const GiambelliTable& table);

// Which class each row names, and whether it evaluates to it.
struct ResolvedRow {
    std::size_t row = 0;
    int ordinal = -1;  // -1 when the row could not be placed
    GradedClass value;
    bool ok = false;
};

struct Resolution {
    std::vector<ResolvedRow> rows;
    GiambelliTable table;          // rows that resolved
    std::vector<int> generators;   // ordinals of the declared generators, -1 if unresolved
    bool stopped = false;          // early exit hit
    bool complete() const;
};

// Tuple rows name their class directly. Indexed rows are placed by
// evaluation: the value must be a single Schubert class of the row degree
// with coefficient 1, not claimed by another row.
// Stops at the first failing row when `early_exit` is set.
Resolution resolve(const QuantumRing& ring, const ReferenceTable& ref, bool early_exit = false);

struct RowProblem {
    std::string label;
    int line = 0;
    std::string computed;
};

struct SpaceVerification {
    SpaceId space{};
    int rows_checked = 0;
    int evaluation_matches = 0;
    int chevalley_matches = 0;
    std::vector<RowProblem> mismatches;
    bool generators_ok = false;
    int fano = 0;
    int first_q_degree = -1;  // lowest row degree using q, -1 if none
    bool q_below_index = false;
    bool profile_ok = false;  // row counts per degree = Betti numbers, palindromic
    std::optional<bool> tableau_identity;  // E8/P8 only
    std::optional<bool> index_offset;      // E8/P8 only, informational
    std::vector<SolveReport> solves;
    double seconds = 0;

    bool pass() const;
};

struct VerificationReport {
    std::vector<SpaceVerification> spaces;
    bool pass() const;
    int total_rows() const;
};

SpaceVerification verify_space(const QuantumRing& ring, const ReferenceTable& ref);
// One ring per space, checked concurrently.
VerificationReport verify(const std::vector<SpaceId>& spaces, const std::map<SpaceId, ReferenceTable>& corpus);
std::string format_report(const VerificationReport& report);

// Every choice of Schubert classes with the declared generator degrees for
// which all rows resolve.
struct GeneratorSearch {
    int tested = 0;
    std::vector<std::vector<RootCoords>> accepted;
};
GeneratorSearch search_generators(const ReferenceTable& ref);

class CacheError : public std::runtime_error {
public:
    enum class Kind { io, version, checksum, format };
    CacheError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline constexpr int cache_version = 1;

std::string serialize_operators(const QuantumRing& ring);
std::shared_ptr<QuantumRing> parse_operators(std::string_view text);
// Written to a temporary sibling, then renamed into place.
void cache_store(const std::filesystem::path& path, const QuantumRing& ring);
std::shared_ptr<QuantumRing> cache_load(const std::filesystem::path& path);

}  // namespace exq

#endif  // EXQ_REFDATA_HPP
