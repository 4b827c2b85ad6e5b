#include <doctest.h>

#include "exq/chevalley.hpp"
#include "exq/refdata.hpp"
#include "oracles.hpp"

using namespace exq;
using oracle::root;

namespace {

int ord(const ParabolicQuotient& q, std::initializer_list<int> v) { return lookup_label(q, root(v)).ordinal; }

GradedClass sigma(const ParabolicQuotient& q, std::initializer_list<int> v, int qpower = 0) {
    return GradedClass::basis(ord(q, v), qpower);
}

// sum c h^a q^e, only for polynomials without s and t
std::optional<GradedClass> eval_hq(const ChevalleyData& ch, const GiambelliPolynomial& p) {
    GradedClass out;
    for (const auto& t : p.terms()) {
        if (t.exps.b || t.exps.c) return std::nullopt;
        out += t.coeff * h_power(ch, t.exps.a).q_shifted(t.exps.e);
    }
    return out;
}

}  // namespace

TEST_CASE("chevalley terms are positive and raise degree by one") {
    for (const auto& s : all_spaces()) {
        const auto q = enumerate(s);
        const auto ch = build_chevalley(q);
        for (const auto& e : q.elements())
            for (const auto& t : ch.terms(e.ordinal)) {
                CHECK(t.coeff > 0);
                CHECK(t.qpower >= 0);
                CHECK(t.qpower * q.fano() + q[t.target].length == e.length + 1);
            }
        CHECK(first_quantum_degree(ch) == q.fano());
    }
}

TEST_CASE("h times the identity is the divisor class") {
    for (const auto& s : all_spaces()) {
        const auto q = enumerate(s);
        const auto ch = build_chevalley(q);
        CHECK(apply_h(ch, GradedClass::basis(0)) == GradedClass::basis(q.degree(1)[0]));
        CHECK(h_power(ch, 0) == GradedClass::basis(0));
    }
}

TEST_CASE("classical h-powers") {
    {
        const auto q = enumerate(oracle::space("E6/P1"));
        const auto ch = build_chevalley(q);
        CHECK(h_power(ch, 4) == sigma(q, {1, 0, 1, 1, 1, 0}) + sigma(q, {1, 1, 1, 1, 0, 0}));
    }
    {
        const auto q = enumerate(oracle::space("F4/P1"));
        CHECK(h_power(build_chevalley(q), 3) == Rational(2) * sigma(q, {1, 1, 2, 0}));
    }
    {
        const auto q = enumerate(oracle::space("E7/P7"));
        CHECK(h_power(build_chevalley(q), 4) == sigma(q, {0, 0, 0, 1, 1, 1, 1}));
    }
}

TEST_CASE("first q terms") {
    {
        // sigma(3,1) = h^2/3 and sigma(3,3) = h^3/6 - q/2 give h sigma(3,1) = 2 sigma(3,3) + q
        const auto q = enumerate(oracle::space("G2/P2"));
        const auto ch = build_chevalley(q);
        CHECK(apply_h(ch, sigma(q, {3, 1})) == Rational(2) * sigma(q, {3, 3}) + GradedClass::basis(0, 1));
    }
    {
        const auto q = enumerate(oracle::space("G2/P1"));
        const auto ch = build_chevalley(q);
        CHECK(h_power(ch, 5) == Rational(2) * sigma(q, {4, 2}) + Rational(2) * GradedClass::basis(0, 1));
    }
}

TEST_CASE("E6/P1 h^6 from the two degree-6 rows") {
    // rows: x = h^6 - 2 h^2 s, y = -h^6 + 3 h^2 s  =>  h^6 = 3x + 2y
    const auto ref = parse_reference(oracle::reference_dir() + "/e6_p1.ref");
    std::vector<int> deg6;
    std::vector<std::vector<Rational>> m;
    const auto q = enumerate(ref.space);
    for (const auto& r : ref.rows) {
        const auto& e = lookup_label(q, ref.to_roots(r.label.tuple));
        if (e.length != 6) continue;
        deg6.push_back(e.ordinal);
        Rational a6(0), a2s(0);
        for (const auto& t : r.poly.terms()) {
            if (t.exps == Exponents{6, 0, 0, 0}) a6 = t.coeff;
            else if (t.exps == Exponents{2, 1, 0, 0}) a2s = t.coeff;
            else FAIL("unexpected monomial");
        }
        m.push_back({a6, a2s});
    }
    REQUIRE(deg6.size() == 2);
    // [x;y] = M [h^6; h^2 s]  =>  h^6 = (M^-1)_{00} x + (M^-1)_{01} y
    const auto inv = oracle::invert(m);
    REQUIRE(inv);
    const GradedClass expected =
        (*inv)[0][0] * GradedClass::basis(deg6[0]) + (*inv)[0][1] * GradedClass::basis(deg6[1]);
    CHECK(h_power(build_chevalley(q), 6) == expected);
}

TEST_CASE("every h,q-only reference row is reproduced by the Chevalley rule") {
    const auto corpus = load_corpus(oracle::reference_dir());
    int checked = 0;
    for (const auto& [s, ref] : corpus) {
        const auto q = enumerate(s);
        const auto ch = build_chevalley(q);
        for (const auto& r : ref.rows) {
            if (r.label.kind != RefLabel::Kind::tuple) continue;
            const auto v = eval_hq(ch, r.poly);
            if (!v) continue;
            CAPTURE(r.label.text());
            CHECK(v->is_schubert(lookup_label(q, ref.to_roots(r.label.tuple)).ordinal));
            ++checked;
        }
    }
    CHECK(checked == 36);
}

TEST_CASE("degree bound") {
    const auto q = enumerate(oracle::space("G2/P1"));
    const auto ch = build_chevalley(q);
    CHECK(ch.max_qpower() == 2);
    CHECK_THROWS_AS(h_power(ch, 5 * 4), std::out_of_range);
}

TEST_CASE("classical blocks") {
    const auto q = enumerate(oracle::space("E6/P1"));
    const auto ch = build_chevalley(q);
    const auto b = ch.classical_block(3);
    CHECK(b.rows() == 1);
    CHECK(b.cols() == 2);
    CHECK(b(0, 0) == 1);
    CHECK(b(0, 1) == 1);
}
