#include "exq/giambelli.hpp"

#include <algorithm>
#include <sstream>

#include "exq/linalg.hpp"

namespace exq {

namespace {

struct MonomialLess {
    bool operator()(const Exponents& x, const Exponents& y) const { return monomial_before(x, y); }
};

std::string power(const char* var, int k, bool latex) {
    if (k == 0) return "";
    std::string s = var;
    if (k > 1) s += latex ? "^{" + std::to_string(k) + "}" : "^" + std::to_string(k);
    return s;
}

std::string render(const std::vector<GiambelliTerm>& terms, bool latex) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        Rational a = t.coeff;
        if (!first) {
            os << (a.sign() < 0 ? " - " : " + ");
            a = abs(a);
        } else if (a.sign() < 0) {
            os << "-";
            a = abs(a);
        }
        first = false;
        std::vector<std::string> parts;
        for (auto p : {power("h", t.exps.a, latex), power("s", t.exps.b, latex), power("t", t.exps.c, latex),
                       power("q", t.exps.e, latex)})
            if (!p.empty()) parts.push_back(p);
        const bool unit = a == Rational(1);
        if (!unit || parts.empty()) {
            if (latex && !a.is_integer())
                os << "\\frac{" << a.numerator().get_str() << "}{" << a.denominator().get_str() << "}";
            else
                os << a;
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (!latex && (i > 0 || !unit)) os << ' ';
            os << parts[i];
        }
    }
    return os.str();
}

}  // namespace

bool monomial_before(const Exponents& x, const Exponents& y) {
    if (x.e != y.e) return x.e < y.e;
    if (x.c != y.c) return x.c < y.c;
    if (x.b != y.b) return x.b < y.b;
    return x.a > y.a;
}

GiambelliPolynomial::GiambelliPolynomial(std::vector<GiambelliTerm> terms) {
    std::map<Exponents, Rational, MonomialLess> acc;
    for (auto& t : terms) acc[t.exps] += t.coeff;
    for (auto& [m, c] : acc)
        if (!c.is_zero()) terms_.push_back({c, m});
}

GiambelliPolynomial GiambelliPolynomial::one() { return GiambelliPolynomial({{Rational(1), {}}}); }

int GiambelliPolynomial::degree(const QuantumRing& ring) const {
    if (terms_.empty()) return -1;
    const int d = ring.degree(terms_.front().exps);
    for (const auto& t : terms_)
        if (ring.degree(t.exps) != d) throw std::invalid_argument("polynomial is not homogeneous: " + format());
    return d;
}

std::string GiambelliPolynomial::format() const { return render(terms_, false); }
std::string GiambelliPolynomial::format_latex() const { return render(terms_, true); }

std::vector<Exponents> monomial_basis(const QuantumRing& ring, int d) { return ring.monomials_of_degree(d); }

GradedClass evaluate(const QuantumRing& ring, const GiambelliPolynomial& p) {
    GradedClass out;
    for (const auto& t : p.terms()) out += t.coeff * ring.monomial(t.exps);
    return out;
}

GradedClass star(const QuantumRing& ring, const GiambelliPolynomial& px, const GradedClass& y) {
    GradedClass out;
    for (const auto& t : px.terms()) out += t.coeff * ring.apply_monomial(t.exps, y);
    return out;
}

GiambelliTable solve_table(const QuantumRing& ring) {
    const auto& q = ring.quotient();
    GiambelliTable table{q.space(), {}};
    for (int d = 0; d <= q.dimension(); ++d) {
        const auto& targets = q.degree(d);
        std::map<ClassKey, Eigen::Index> coord;
        for (int k = 0; k * q.fano() <= d; ++k)
            for (int x : q.degree(d - k * q.fano())) coord.emplace(ClassKey{k, x}, static_cast<Eigen::Index>(coord.size()));
        const auto monos = monomial_basis(ring, d);
        const auto rows = static_cast<Eigen::Index>(coord.size());
        RationalMatrix a = RationalMatrix::Zero(rows, static_cast<Eigen::Index>(monos.size()));
        for (std::size_t j = 0; j < monos.size(); ++j) {
            const GradedClass m = ring.monomial(monos[j]);
            for (const auto& [k, v] : m.terms()) a(coord.at(k), static_cast<Eigen::Index>(j)) = v;
        }

        const auto keep = linalg::independent_columns(a);
        const auto r = static_cast<Eigen::Index>(keep.size());
        RationalMatrix aug = RationalMatrix::Zero(rows, r + static_cast<Eigen::Index>(targets.size()));
        for (Eigen::Index j = 0; j < r; ++j) aug.col(j) = a.col(keep[static_cast<std::size_t>(j)]);
        for (std::size_t i = 0; i < targets.size(); ++i)
            aug(coord.at({0, targets[i]}), r + static_cast<Eigen::Index>(i)) = Rational(1);
        const auto ech = linalg::reduced_row_echelon(aug);
        if (ech.rank() != r)
            throw UnsolvableDegree("degree " + std::to_string(d) + " of " + q.space().name() +
                                   " is not spanned by generator monomials");
        for (std::size_t i = 0; i < targets.size(); ++i) {
            std::vector<GiambelliTerm> terms;
            for (Eigen::Index j = 0; j < r; ++j) {
                const Rational& c = ech.reduced(j, r + static_cast<Eigen::Index>(i));
                if (!c.is_zero()) terms.push_back({c, monos[static_cast<std::size_t>(keep[static_cast<std::size_t>(j)])]});
            }
            GiambelliPolynomial p(std::move(terms));
            if (!evaluate(ring, p).is_schubert(targets[i]))
                throw UnsolvableDegree("solved polynomial does not evaluate back to " +
                                       format_tuple(q[targets[i]].label.coeffs));
            table.entries.emplace(targets[i], std::move(p));
        }
    }
    return table;
}

std::string to_string(Agreement a) {
    switch (a) {
    case Agreement::equal_as_polynomials: return "EQUAL-AS-POLYNOMIALS";
    case Agreement::equal_by_evaluation: return "EQUAL-BY-EVALUATION";
    case Agreement::mismatch: return "MISMATCH";
    }
    return "?";
}

int TableComparison::count(Agreement a) const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [&](const RowComparison& r) { return r.agreement == a; }));
}

TableComparison compare_tables(const QuantumRing& ring, const GiambelliTable& a, const GiambelliTable& b) {
    if (a.space != b.space) throw std::invalid_argument("tables belong to different spaces");
    if (a.entries.size() != b.entries.size() ||
        !std::equal(a.entries.begin(), a.entries.end(), b.entries.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; }))
        throw std::invalid_argument("tables cover different classes");
    TableComparison out;
    for (const auto& [ordinal, pa] : a.entries) {
        const auto& pb = b.entries.at(ordinal);
        RowComparison row{ordinal, Agreement::mismatch, evaluate(ring, pa), evaluate(ring, pb)};
        if (pa == pb) row.agreement = Agreement::equal_as_polynomials;
        else if (row.left == row.right) row.agreement = Agreement::equal_by_evaluation;
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string emit_latex(const QuantumRing& ring, const GiambelliTable& table) {
    const auto& q = ring.quotient();
    std::ostringstream os;
    for (int d = 0; d <= q.dimension(); ++d) {
        os << "\\textbf{Schubert cells in degree " << d << "}\n\\begin{align*}\n";
        for (int w : q.degree(d)) {
            const auto it = table.entries.find(w);
            if (it == table.entries.end()) continue;
            os << "\\sigma_{" << format_tuple(q[w].label.coeffs) << "} &= " << it->second.format_latex() << " \\\\\n";
        }
        os << "\\end{align*}\n";
    }
    return os.str();
}

}  // namespace exq
