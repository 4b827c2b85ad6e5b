#include <doctest.h>

#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <set>

#include "exq/refdata.hpp"
#include "oracles.hpp"

using namespace exq;
using oracle::root;
namespace fs = std::filesystem;

namespace {

const std::map<SpaceId, ReferenceTable>& corpus() {
    static const auto c = load_corpus(oracle::reference_dir());
    return c;
}

std::shared_ptr<QuantumRing> ring(const char* name) {
    static std::map<std::string, std::shared_ptr<QuantumRing>> rings;
    auto& r = rings[name];
    if (!r) r = QuantumRing::build(oracle::space(name));
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

// line, column of the thrown ParseError
std::pair<int, int> parse_failure(const std::string& text) {
    try {
        parse_reference_text(text);
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    return {0, 0};
}

void check_invalid(const std::string& text) {
    const auto t = parse_reference_text(text);
    CHECK_THROWS_AS(validate(t, enumerate(t.space)), InvariantViolation);
}

const std::string g2 =
    "space G2/P2\n"
    "row (0,0) : 1/1 0 0 0 0\n"
    "row (0,1) : 1/1 1 0 0 0\n"
    "row (3,1) : 1/3 2 0 0 0\n"
    "row (3,3) : 1/6 3 0 0 0 ; -1/2 0 0 0 1\n"
    "row (6,3) : 1/18 4 0 0 0 ; -1/2 1 0 0 1\n"
    "row (6,4) : 1/18 5 0 0 0 ; -5/6 2 0 0 1\n";

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("exq-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("corpus contents") {
    const auto& c = corpus();
    CHECK(c.size() == 9);
    int total = 0;
    for (const auto& [s, t] : c) total += static_cast<int>(t.rows.size());
    CHECK(total == 581);
    CHECK(c.at(oracle::space("E6/P1")).rows.size() == 27);
    CHECK(c.at(oracle::space("E8/P8")).rows.size() == 240);

    const auto& g = c.at(oracle::space("G2/P2"));
    CHECK(g.gens.empty());
    const auto& row = g.rows.at(3);
    CHECK(row.label.text() == "(3,3)");
    CHECK(row.line == 5);
    REQUIRE(row.poly.terms().size() == 2);
    CHECK(row.poly.terms()[0].coeff == Rational(1, 6));
    CHECK(row.poly.terms()[1].coeff == Rational(-1, 2));
    CHECK(row.poly.terms()[1].exps == Exponents{0, 0, 0, 1});
    CHECK(parse_reference_text(g2) == g);
}

TEST_CASE("printed coordinates") {
    const auto& t = corpus().at(oracle::space("E7/P1"));
    CHECK(t.coords == std::vector<int>{1, 3, 4, 2, 5, 6, 7});
    IntVector printed(7);
    printed << 1, 1, 1, 0, 1, 1, 1;
    CHECK(t.to_roots(printed) == root({1, 0, 1, 1, 1, 1, 1}));
    CHECK(t.to_printed(root({1, 0, 1, 1, 1, 1, 1})) == printed);
    CHECK(t.gens.at(1).label.text() == "(1,1,1,0,1,1,1)");
}

TEST_CASE("corpus labels are exactly the Schubert classes") {
    for (const auto& [s, t] : corpus()) {
        if (s.kind == GroupKind::E8) continue;
        const auto q = enumerate(s);
        std::set<int> seen;
        for (const auto& r : t.rows) seen.insert(lookup_label(q, t.to_roots(r.label.tuple)).ordinal);
        CHECK(static_cast<int>(seen.size()) == q.size());
    }
    const auto& e8 = corpus().at(oracle::space("E8/P8"));
    // indexed labels are tags, placed by evaluation; only the counts are fixed
    const auto profile = poincare_profile(enumerate(e8.space));
    std::map<int, int> per;
    std::set<std::string> tags;
    for (const auto& r : e8.rows) {
        REQUIRE(r.label.kind == RefLabel::Kind::indexed);
        CHECK(tags.insert(r.label.text()).second);
        ++per[r.label.degree];
    }
    for (const auto& [d, n] : per) CHECK(n == profile[static_cast<std::size_t>(d)]);
}

TEST_CASE("syntax errors carry line and column") {
    CHECK(parse_failure("space G2/P2\nrow (0,0) : 2/4 0 0 0 0\n") == std::pair{2, 13});
    CHECK(parse_failure("space G2/P2\nrow (0,0) : 1/x 0 0 0 0\n") == std::pair{2, 13});
    CHECK(parse_failure("space G2/P2\nrow (0,0) : 1/1 0 0 0\n").first == 2);
    CHECK(parse_failure("space G2/P2\nrow (0,x) : 1/1 0 0 0 0\n") == std::pair{2, 8});
    CHECK(parse_failure("space G2/P2\nrow (0,0) 1/1 0 0 0 0\n") == std::pair{2, 11});
    CHECK(parse_failure("row (0,0) : 1/1 0 0 0 0\n") == std::pair{1, 1});
    CHECK(parse_failure("# only a comment\n\n").first >= 1);
    CHECK(parse_failure("space X9/P1\n") == std::pair{1, 7});
    CHECK(parse_failure("space G2/P2\nspace G2/P2\n").first == 2);
    CHECK(parse_failure("space G2/P2\n\n  bogus 1\n") == std::pair{3, 3});
    CHECK(parse_failure("space E6/P1\ncoords 1 2 3\n").first == 2);
    CHECK(parse_failure("space E6/P2\ngen t 4 (1,1,1,1,0,0)\n").first == 2);
    CHECK(parse_failure("space G2/P2\nrow (0,0) : -0/1 0 0 0 0\n").first == 2);
    try {
        parse_reference_text("");
        FAIL("accepted empty input");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("no 'space' header") != std::string::npos);
    }
    try {
        parse_reference_text("space G2/P2\nrow (0,0) : 3/6 0 0 0 0\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("line 2, column 13: ", 0) == 0);
    }
    // comments and blank lines are fine
    CHECK_NOTHROW(parse_reference_text("# x\nspace G2/P2\n  # indented\n\nrow (0,0) : 1/1 0 0 0 0\n"));
}

TEST_CASE("semantic violations") {
    CHECK_NOTHROW(validate(parse_reference_text(g2), enumerate(oracle::space("G2/P2"))));
    check_invalid(replace(g2, "row (0,1)", "row (0,1,0)"));                   // arity
    check_invalid(replace(g2, "row (0,1)", "row (1,1)"));                     // no such class
    check_invalid(replace(g2, "row (0,1)", "row (3,1)"));                     // duplicate
    check_invalid(replace(g2, "1/3 2 0 0 0", "1/3 1 0 0 0"));                 // wrong degree
    check_invalid(replace(g2, "-1/2 0 0 0 1", "-1/2 0 1 0 0"));               // undeclared generator
    check_invalid(replace(g2, "row (6,4) : 1/18 5 0 0 0 ; -5/6 2 0 0 1\n", ""));  // missing row
    check_invalid("space E6/P1\ngen s 3 (1,1,1,1,0,0)\n");                    // generator degree
    const std::string e6 = slurp(oracle::reference_dir() + "/e6_p1.ref");
    check_invalid(replace(e6, "row (1,1,1,1,0,0) : 1/1 0 1 0 0", "row (1,1,1,1,0,0) : 1/1 0 1 0 0 ; 1/1 3 0 0 0"));
    CHECK_THROWS_AS(parse_reference(oracle::reference_dir() + "/no_such.ref"), std::runtime_error);
}

TEST_CASE("serialization round trips") {
    for (const auto& [s, t] : corpus()) {
        CAPTURE(s.name());
        const auto text = serialize(t);
        CHECK(parse_reference_text(text) == t);
        CHECK(serialize(parse_reference_text(text)) == text);
    }
    const auto R = ring("F4/P4");
    const auto mine = to_reference(*R, solve_table(*R));
    const auto back = parse_reference_text(serialize(mine));
    CHECK(back == mine);
    CHECK_NOTHROW(validate(back, R->quotient()));
    CHECK(resolve(*R, back).complete());
}

TEST_CASE("E8 tableau labels") {
    CHECK(e8_tableau_label("01222221") == root({0, 1, 1, 2, 2, 2, 2, 2}));
    CHECK(e8_tableau_label("23444322") == root({2, 2, 3, 4, 4, 4, 3, 2}));
    CHECK_THROWS_AS(e8_tableau_label("0122222"), std::invalid_argument);
    CHECK_THROWS_AS(e8_tableau_label("0122222x"), std::invalid_argument);
}

TEST_CASE("verification of small spaces") {
    for (const char* name : {"G2/P1", "G2/P2", "F4/P1", "E6/P1"}) {
        const auto sv = verify_space(*ring(name), corpus().at(oracle::space(name)));
        CAPTURE(name);
        CHECK(sv.pass());
        CHECK(sv.mismatches.empty());
        CHECK(sv.rows_checked == sv.evaluation_matches);
        CHECK(sv.rows_checked == sv.chevalley_matches);
        CHECK_FALSE(sv.q_below_index);
        CHECK_FALSE(sv.tableau_identity);
    }
    CHECK(verify_space(*ring("G2/P1"), corpus().at(oracle::space("G2/P1"))).first_q_degree == 5);
    CHECK(verify_space(*ring("F4/P1"), corpus().at(oracle::space("F4/P1"))).first_q_degree == -1);
    CHECK_THROWS_AS(verify_space(*ring("G2/P1"), corpus().at(oracle::space("G2/P2"))), std::invalid_argument);
}

TEST_CASE("a corrupted coefficient is localised to its row") {
    const std::string e6 = slurp(oracle::reference_dir() + "/e6_p1.ref");
    const auto bad = parse_reference_text(replace(e6, "row (1,1,1,2,1,0) : -1/1 6", "row (1,1,1,2,1,0) : -2/1 6"));
    const auto sv = verify_space(*ring("E6/P1"), bad);
    CHECK_FALSE(sv.pass());
    REQUIRE(sv.mismatches.size() == 1);
    CHECK(sv.mismatches[0].label == "(1,1,1,2,1,0)");
    CHECK(sv.mismatches[0].line == 12);
    CHECK(sv.evaluation_matches == 26);

    VerificationReport rep;
    rep.spaces.push_back(sv);
    CHECK_FALSE(rep.pass());
    CHECK(format_report(rep).find("MISMATCH row (1,1,1,2,1,0) (line 12)") != std::string::npos);

    const auto res = resolve(*ring("E6/P1"), bad, true);
    CHECK(res.stopped);
    CHECK_FALSE(res.complete());
}

TEST_CASE("generator search") {
    const auto& t = corpus().at(oracle::space("F4/P1"));
    const auto found = search_generators(t);
    CHECK(found.tested == static_cast<int>(enumerate(t.space).degree(4).size()));
    REQUIRE(found.accepted.size() == 1);
    CHECK(found.accepted[0] == builtin_generator_labels(t.space));
    CHECK(search_generators(corpus().at(oracle::space("G2/P2"))).accepted.size() == 1);
}

TEST_CASE("operator cache") {
    const auto R = ring("E6/P2");
    const auto text = serialize_operators(*R);
    CHECK(text.rfind("exq-operator-cache 1\n", 0) == 0);
    const auto back = parse_operators(text);
    REQUIRE(back->operator_count() == R->operator_count());
    for (int i = 0; i < R->operator_count(); ++i) CHECK(back->op(i) == R->op(i));
    CHECK(serialize_operators(*back) == text);

    auto kind_of = [](const std::string& s) {
        try {
            parse_operators(s);
        } catch (const CacheError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind_of(replace(text, "exq-operator-cache 1", "exq-operator-cache 2")) == int(CacheError::Kind::version));
    CHECK(kind_of(text.substr(0, text.size() / 2)) == int(CacheError::Kind::checksum));
    auto flipped = text;
    flipped[text.size() / 2] = flipped[text.size() / 2] == '1' ? '2' : '1';
    CHECK(kind_of(flipped) == int(CacheError::Kind::checksum));
    CHECK(kind_of("hello\n") == int(CacheError::Kind::format));

    TempDir dir;
    const auto path = dir.path / "e6_p2.cache";
    cache_store(path, *R);
    CHECK(fs::exists(path));
    for (const auto& e : fs::directory_iterator(dir.path)) CHECK(e.path().extension() != ".tmp");
    const auto loaded = cache_load(path);
    for (int i = 0; i < R->operator_count(); ++i) CHECK(loaded->op(i) == R->op(i));
    CHECK_THROWS_AS(cache_load(dir.path / "missing.cache"), CacheError);
}
