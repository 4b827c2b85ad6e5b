#include "exq/refdata.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>

#include <zlib.h>

namespace exq {

namespace {

// Line-oriented scanner with 1-based columns for error reporting.
class Cursor {
public:
    Cursor(std::string_view text, int line) : text_(text), line_(line) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    int column() const { return static_cast<int>(pos_) + 1; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string word() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("unexpected end of line");
        return std::string(text_.substr(start, pos_ - start));
    }
    int integer() {
        skip_ws();
        const auto start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        const auto digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) {
            pos_ = start;
            fail("expected an integer");
        }
        const std::string s(text_.substr(start, pos_ - start));
        if (s.size() > 9) {
            pos_ = start;
            fail("integer out of range");
        }
        return std::stoi(s);
    }
    Rational rational() {
        skip_ws();
        const auto start = pos_;
        const int col = column();
        const std::string tok = word();
        try {
            return Rational::parse_canonical(tok);
        } catch (const std::invalid_argument& e) {
            pos_ = start;
            throw ParseError(line_, col, "bad coefficient '" + tok + "': " + e.what());
        }
    }
    RefLabel label() {
        RefLabel out;
        if (peek() == '(') {
            ++pos_;
            std::vector<int> v{integer()};
            while (peek() == ',') {
                ++pos_;
                v.push_back(integer());
            }
            expect(')');
            out.kind = RefLabel::Kind::tuple;
            out.tuple = Eigen::Map<IntVector>(v.data(), static_cast<Eigen::Index>(v.size()));
            return out;
        }
        out.kind = RefLabel::Kind::indexed;
        out.degree = integer();
        expect('.');
        out.index = integer();
        if (out.degree < 0 || out.index < 1) fail("bad indexed label");
        return out;
    }

private:
    std::string_view text_;
    int line_;
    std::size_t pos_ = 0;
};

std::string term_text(const GiambelliTerm& t) {
    std::ostringstream os;
    os << t.coeff.to_fraction_string() << ' ' << t.exps.a << ' ' << t.exps.b << ' ' << t.exps.c << ' ' << t.exps.e;
    return os.str();
}

int monomial_degree(const ReferenceTable& t, int fano, const Exponents& m) {
    return m.a + m.b * t.generator_degree(0) + m.c * t.generator_degree(1) + m.e * fano;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        start = end + 1;
    }
    return out;
}

int label_length(const ReferenceTable& t, const ParabolicQuotient& q, const RefLabel& l) {
    if (l.kind == RefLabel::Kind::indexed) return l.degree;
    const int o = q.find_label(t.to_roots(l.tuple));
    return o < 0 ? -1 : q[o].length;
}

unsigned long checksum(std::string_view s) {
    return crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size()));
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string RefLabel::text() const {
    if (kind == Kind::indexed) return std::to_string(degree) + "." + std::to_string(index);
    return format_tuple(tuple);
}

RootCoords ReferenceTable::to_roots(const IntVector& printed) const {
    if (coords.empty()) return RootCoords{printed};
    RootCoords out{IntVector::Zero(printed.size())};
    for (std::size_t k = 0; k < coords.size() && static_cast<Eigen::Index>(k) < printed.size(); ++k)
        out.coeffs[coords[k] - 1] = printed[static_cast<Eigen::Index>(k)];
    return out;
}

IntVector ReferenceTable::to_printed(const RootCoords& x) const {
    if (coords.empty()) return x.coeffs;
    IntVector out(x.coeffs.size());
    for (std::size_t k = 0; k < coords.size(); ++k) out[static_cast<Eigen::Index>(k)] = x.coeffs[coords[k] - 1];
    return out;
}

bool operator==(const ReferenceTable& a, const ReferenceTable& b) {
    if (!(a.space == b.space && a.coords == b.coords && a.gens == b.gens && a.rows.size() == b.rows.size())) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (!(a.rows[i].label == b.rows[i].label && a.rows[i].poly == b.rows[i].poly)) return false;
    return true;
}

ReferenceTable parse_reference_text(std::string_view text) {
    ReferenceTable out;
    bool have_space = false;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        Cursor cur(lines[i], lineno);
        if (cur.at_end() || cur.peek() == '#') continue;
        const int col = cur.column();
        const std::string directive = cur.word();
        if (directive == "space") {
            if (have_space) throw ParseError(lineno, col, "duplicate space header");
            const int c2 = (cur.skip_ws(), cur.column());
            const std::string name = cur.word();
            try {
                out.space = parse_space(name);
            } catch (const std::invalid_argument&) {
                throw ParseError(lineno, c2, "unknown space '" + name + "'");
            }
            have_space = true;
        } else if (!have_space) {
            throw ParseError(lineno, col, "expected 'space' header before '" + directive + "'");
        } else if (directive == "coords") {
            if (!out.coords.empty()) throw ParseError(lineno, col, "duplicate coords directive");
            while (!cur.at_end()) out.coords.push_back(cur.integer());
            std::vector<int> sorted = out.coords;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t k = 0; k < sorted.size(); ++k)
                if (sorted[k] != static_cast<int>(k) + 1 || static_cast<int>(sorted.size()) != rank_of(out.space.kind))
                    throw ParseError(lineno, col, "coords must permute 1.." + std::to_string(rank_of(out.space.kind)));
        } else if (directive == "gen") {
            RefGenerator g;
            g.name = cur.word();
            g.degree = cur.integer();
            g.label = cur.label();
            const char* expected = out.gens.empty() ? "s" : "t";
            if (out.gens.size() >= 2 || g.name != expected)
                throw ParseError(lineno, col, std::string("expected generator '") + expected + "'");
            out.gens.push_back(std::move(g));
        } else if (directive == "row") {
            RefRow row;
            row.line = lineno;
            row.label = cur.label();
            cur.expect(':');
            std::vector<GiambelliTerm> terms;
            while (true) {
                GiambelliTerm t;
                t.coeff = cur.rational();
                t.exps.a = cur.integer();
                t.exps.b = cur.integer();
                t.exps.c = cur.integer();
                t.exps.e = cur.integer();
                if (t.exps.a < 0 || t.exps.b < 0 || t.exps.c < 0 || t.exps.e < 0) cur.fail("negative exponent");
                if (t.coeff.is_zero()) cur.fail("zero coefficient");
                terms.push_back(std::move(t));
                if (cur.at_end()) break;
                cur.expect(';');
            }
            row.poly = GiambelliPolynomial(std::move(terms));
            out.rows.push_back(std::move(row));
        } else {
            throw ParseError(lineno, col, "unknown directive '" + directive + "'");
        }
        if (!cur.at_end()) cur.fail("trailing input");
    }
    if (!have_space) throw ParseError(static_cast<int>(lines.size()), 1, "no 'space' header");
    return out;
}

void validate(const ReferenceTable& t, const ParabolicQuotient& q) {
    const std::string sp = t.space.name();
    if (q.space() != t.space) throw InvariantViolation(sp + ": quotient of a different space");
    const int r = q.roots().rank();
    auto where = [&](const RefLabel& l, int degree) {
        return sp + " degree " + std::to_string(degree) + " row " + l.text() + ": ";
    };
    auto check_label = [&](const RefLabel& l) {
        if (l.kind == RefLabel::Kind::tuple) {
            if (l.tuple.size() != r) throw InvariantViolation(sp + " label " + l.text() + ": expected " + std::to_string(r) + " entries");
            if (label_length(t, q, l) < 0) throw InvariantViolation(sp + " label " + l.text() + ": no such Schubert class");
        } else if (l.degree > q.dimension()) {
            throw InvariantViolation(sp + " label " + l.text() + ": degree beyond dimension");
        }
    };
    for (const auto& g : t.gens) {
        check_label(g.label);
        if (label_length(t, q, g.label) != g.degree)
            throw InvariantViolation(sp + " generator " + g.name + ": degree " + std::to_string(g.degree) +
                                     " does not match label " + g.label.text());
    }
    std::vector<int> counts(static_cast<std::size_t>(q.dimension() + 1), 0);
    std::set<std::string> seen;
    for (const auto& row : t.rows) {
        check_label(row.label);
        const int d = label_length(t, q, row.label);
        if (!seen.insert(row.label.text()).second) throw InvariantViolation(where(row.label, d) + "duplicate label");
        if (row.poly.is_zero()) throw InvariantViolation(where(row.label, d) + "polynomial is zero");
        for (const auto& term : row.poly.terms()) {
            if ((term.exps.b && t.gens.empty()) || (term.exps.c && t.gens.size() < 2))
                throw InvariantViolation(where(row.label, d) + "uses an undeclared generator");
            if (monomial_degree(t, q.fano(), term.exps) != d)
                throw InvariantViolation(where(row.label, d) + "term '" + term_text(term) + "' is not of degree " +
                                         std::to_string(d));
        }
        ++counts[static_cast<std::size_t>(d)];
    }
    const auto profile = poincare_profile(q);
    for (int d = 0; d <= q.dimension(); ++d)
        if (counts[static_cast<std::size_t>(d)] != profile[static_cast<std::size_t>(d)])
            throw InvariantViolation(sp + " degree " + std::to_string(d) + ": " +
                                     std::to_string(counts[static_cast<std::size_t>(d)]) + " rows, expected " +
                                     std::to_string(profile[static_cast<std::size_t>(d)]));
}

ReferenceTable parse_reference(const std::filesystem::path& path) {
    auto t = parse_reference_text(read_file(path));
    validate(t, enumerate(t.space));
    return t;
}

std::string serialize(const ReferenceTable& t) {
    std::ostringstream os;
    os << "space " << t.space.name() << '\n';
    if (!t.coords.empty()) {
        os << "coords";
        for (int c : t.coords) os << ' ' << c;
        os << '\n';
    }
    for (const auto& g : t.gens) os << "gen " << g.name << ' ' << g.degree << ' ' << g.label.text() << '\n';
    for (const auto& row : t.rows) {
        os << "row " << row.label.text() << " :";
        bool first = true;
        for (const auto& term : row.poly.terms()) {
            os << (first ? " " : " ; ") << term_text(term);
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

std::string reference_file_name(const SpaceId& space) {
    std::string s = to_string(space.kind) + "_p" + std::to_string(space.node) + ".ref";
    s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    return s;
}

std::map<SpaceId, ReferenceTable> load_corpus(const std::filesystem::path& dir) {
    std::map<SpaceId, ReferenceTable> out;
    for (const auto& sp : all_spaces()) {
        const auto path = dir / reference_file_name(sp);
        if (!std::filesystem::exists(path)) continue;
        auto t = parse_reference(path);
        if (t.space != sp) throw InvariantViolation(path.string() + " declares " + t.space.name());
        out.emplace(sp, std::move(t));
    }
    return out;
}

RootCoords e8_tableau_label(std::string_view digits) {
    static constexpr int order[8] = {1, 3, 4, 5, 6, 7, 8, 2};
    if (digits.size() != 8) throw std::invalid_argument("E8 tableau label needs 8 digits");
    RootCoords out{IntVector::Zero(8)};
    for (int k = 0; k < 8; ++k) {
        if (!std::isdigit(static_cast<unsigned char>(digits[static_cast<std::size_t>(k)])))
            throw std::invalid_argument("E8 tableau label needs 8 digits");
        out.coeffs[order[k] - 1] = digits[static_cast<std::size_t>(k)] - '0';
    }
    return out;
}

ReferenceTable to_reference(const QuantumRing& ring, const GiambelliTable& table) {
    const auto& q = ring.quotient();
    ReferenceTable out;
    out.space = q.space();
    for (const auto& g : ring.generators().extra)
        out.gens.push_back({g.name, g.degree, {RefLabel::Kind::tuple, q[g.ordinal].label.coeffs, 0, 0}});
    for (const auto& [ordinal, p] : table.entries)
        out.rows.push_back({{RefLabel::Kind::tuple, q[ordinal].label.coeffs, 0, 0}, p, 0});
    return out;
}

bool Resolution::complete() const {
    return !stopped && std::all_of(rows.begin(), rows.end(), [](const ResolvedRow& r) { return r.ok; });
}

Resolution resolve(const QuantumRing& ring, const ReferenceTable& ref, bool early_exit) {
    const auto& q = ring.quotient();
    Resolution res;
    res.table.space = q.space();
    std::map<std::string, int> placed;
    for (std::size_t i = 0; i < ref.rows.size(); ++i) {
        const auto& row = ref.rows[i];
        ResolvedRow rr;
        rr.row = i;
        rr.value = evaluate(ring, row.poly);
        if (row.label.kind == RefLabel::Kind::tuple) {
            rr.ordinal = q.find_label(ref.to_roots(row.label.tuple));
            rr.ok = rr.ordinal >= 0 && rr.value.is_schubert(rr.ordinal);
        } else if (rr.value.size() == 1) {
            const auto& [key, c] = *rr.value.terms().begin();
            if (key.qpower == 0 && c == Rational(1) && q[key.ordinal].length == row.label.degree &&
                !res.table.entries.count(key.ordinal)) {
                rr.ordinal = key.ordinal;
                rr.ok = true;
            }
        }
        if (rr.ok) {
            res.table.entries.emplace(rr.ordinal, row.poly);
            placed.emplace(row.label.text(), rr.ordinal);
        }
        const bool ok = rr.ok;
        res.rows.push_back(std::move(rr));
        if (!ok && early_exit) {
            res.stopped = true;
            break;
        }
    }
    for (const auto& g : ref.gens) {
        if (g.label.kind == RefLabel::Kind::tuple) {
            res.generators.push_back(q.find_label(ref.to_roots(g.label.tuple)));
        } else {
            const auto it = placed.find(g.label.text());
            res.generators.push_back(it == placed.end() ? -1 : it->second);
        }
    }
    return res;
}

bool SpaceVerification::pass() const {
    return mismatches.empty() && evaluation_matches == rows_checked && chevalley_matches == rows_checked &&
           generators_ok && !q_below_index && profile_ok && tableau_identity.value_or(true);
}

bool VerificationReport::pass() const {
    return !spaces.empty() && std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.pass(); });
}

int VerificationReport::total_rows() const {
    int n = 0;
    for (const auto& s : spaces) n += s.rows_checked;
    return n;
}

SpaceVerification verify_space(const QuantumRing& ring, const ReferenceTable& ref) {
    const auto start = std::chrono::steady_clock::now();
    const auto& q = ring.quotient();
    if (ref.space != q.space()) throw std::invalid_argument("reference and ring belong to different spaces");
    SpaceVerification sv;
    sv.space = q.space();
    sv.fano = q.fano();
    sv.solves = ring.reports();
    sv.rows_checked = static_cast<int>(ref.rows.size());

    const auto res = resolve(ring, ref);
    for (const auto& rr : res.rows) {
        const auto& row = ref.rows[rr.row];
        if (rr.ok) ++sv.evaluation_matches;
        else sv.mismatches.push_back({row.label.text(), row.line, rr.value.format(q)});

        std::vector<GiambelliTerm> shifted;
        for (auto t : row.poly.terms()) {
            ++t.exps.a;
            shifted.push_back(t);
        }
        if (evaluate(ring, GiambelliPolynomial(std::move(shifted))) == apply_h(ring.chevalley(), rr.value))
            ++sv.chevalley_matches;
    }

    sv.generators_ok = res.generators.size() == ring.generators().extra.size();
    for (std::size_t i = 0; sv.generators_ok && i < res.generators.size(); ++i)
        sv.generators_ok = res.generators[i] == ring.generators().extra[i].ordinal &&
                           ref.gens[i].degree == ring.generators().extra[i].degree;

    std::vector<int> counts(static_cast<std::size_t>(q.dimension() + 1), 0);
    for (const auto& row : ref.rows) {
        const int d = label_length(ref, q, row.label);
        if (d >= 0 && d <= q.dimension()) ++counts[static_cast<std::size_t>(d)];
        const bool has_q = std::any_of(row.poly.terms().begin(), row.poly.terms().end(),
                                       [](const GiambelliTerm& t) { return t.exps.e > 0; });
        if (!has_q) continue;
        if (sv.first_q_degree < 0 || d < sv.first_q_degree) sv.first_q_degree = d;
        if (d < q.fano()) sv.q_below_index = true;
    }
    const auto profile = poincare_profile(q);
    sv.profile_ok = counts == profile && std::equal(profile.begin(), profile.end(), profile.rbegin());

    if (q.space() == SpaceId{GroupKind::E8, 8}) {
        const int src = q.find_label(e8_tableau_label("01222221"));
        const int dst = q.find_label(e8_tableau_label("23444322"));
        const auto it = res.table.entries.find(src);
        sv.tableau_identity = it != res.table.entries.end() &&
                              star(ring, it->second, GradedClass::basis(src)).is_schubert(dst);

        bool offset_ok = true;
        std::map<int, std::vector<int>> indices;
        for (const auto& row : ref.rows)
            if (row.label.kind == RefLabel::Kind::indexed) indices[row.label.degree].push_back(row.label.index);
        for (auto& [d, idx] : indices) {
            std::sort(idx.begin(), idx.end());
            int offset = 0;
            for (int k = 1; k * q.fano() <= d; ++k) offset += static_cast<int>(q.degree(d - k * q.fano()).size());
            for (std::size_t j = 0; j < idx.size(); ++j)
                if (idx[j] != offset + static_cast<int>(j) + 1) offset_ok = false;
        }
        sv.index_offset = offset_ok;
    }
    sv.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sv;
}

VerificationReport verify(const std::vector<SpaceId>& spaces, const std::map<SpaceId, ReferenceTable>& corpus) {
    for (const auto& sp : spaces)
        if (!corpus.count(sp)) throw std::invalid_argument("no reference table for " + sp.name());
    std::vector<std::future<SpaceVerification>> jobs;
    for (const auto& sp : spaces)
        jobs.push_back(std::async(std::launch::async, [&corpus, sp] {
            const auto start = std::chrono::steady_clock::now();
            const auto ring = QuantumRing::build(sp);
            auto sv = verify_space(*ring, corpus.at(sp));
            sv.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return sv;
        }));
    VerificationReport report;
    for (auto& j : jobs) report.spaces.push_back(j.get());
    return report;
}

std::string format_report(const VerificationReport& report) {
    std::ostringstream os;
    for (const auto& s : report.spaces) {
        os << std::left << std::setw(6) << s.space.name() << std::right << "  rows " << std::setw(3) << s.rows_checked
           << "  eval " << s.evaluation_matches << "/" << s.rows_checked << "  chevalley " << s.chevalley_matches << "/"
           << s.rows_checked << "  gens " << (s.generators_ok ? "ok" : "BAD") << "  q-first "
           << s.first_q_degree << " (index " << s.fano << (s.q_below_index ? ", BELOW INDEX" : "") << ")"
           << "  profile " << (s.profile_ok ? "ok" : "BAD");
        if (s.tableau_identity) os << "  tableau " << (*s.tableau_identity ? "ok" : "BAD");
        if (s.index_offset) os << "  index-offset " << (*s.index_offset ? "holds" : "fails");
        os << "  " << (s.pass() ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(2) << s.seconds << "s\n";
        for (const auto& m : s.mismatches)
            os << "  MISMATCH row " << m.label << " (line " << m.line << "): evaluates to " << m.computed << '\n';
    }
    os << "total rows " << report.total_rows() << "  " << (report.pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

GeneratorSearch search_generators(const ReferenceTable& ref) {
    const auto q = enumerate(ref.space);
    std::vector<std::vector<int>> pools;
    for (const auto& g : ref.gens) pools.push_back(q.degree(g.degree));
    GeneratorSearch out;
    std::vector<std::size_t> pick(pools.size(), 0);
    while (true) {
        std::vector<RootCoords> labels;
        for (std::size_t i = 0; i < pools.size(); ++i) labels.push_back(q[pools[i][pick[i]]].label);
        ++out.tested;
        try {
            const auto ring = QuantumRing::build(ref.space, labels);
            if (resolve(*ring, ref, true).complete()) out.accepted.push_back(labels);
        } catch (const InfeasibleSystem&) {
        } catch (const std::logic_error&) {
        }
        std::size_t i = 0;
        while (i < pools.size() && ++pick[i] == pools[i].size()) pick[i++] = 0;
        if (i == pools.size()) break;
    }
    return out;
}

std::string serialize_operators(const QuantumRing& ring) {
    const auto& q = ring.quotient();
    std::ostringstream os;
    os << "exq-operator-cache " << cache_version << '\n';
    os << "space " << q.space().name() << '\n';
    os << "size " << q.size() << '\n';
    for (const auto& g : ring.generators().extra)
        os << "gen " << g.name << ' ' << g.degree << ' ' << format_tuple(q[g.ordinal].label.coeffs) << '\n';
    for (int i = 1; i < ring.operator_count(); ++i) {
        const auto& op = ring.op(i);
        os << "op " << ring.generators().extra[static_cast<std::size_t>(i - 1)].name << '\n';
        for (int v = 0; v < op.size(); ++v) {
            os << "col " << v << " :";
            bool first = true;
            for (const auto& [k, c] : op.column(v).terms()) {
                os << (first ? " " : " ; ") << k.qpower << ' ' << k.ordinal << ' ' << c.to_fraction_string();
                first = false;
            }
            os << '\n';
        }
    }
    std::string body = os.str();
    std::ostringstream sum;
    sum << "checksum " << std::hex << std::setw(8) << std::setfill('0') << checksum(body) << '\n';
    return body + sum.str();
}

std::shared_ptr<QuantumRing> parse_operators(std::string_view text) {
    const auto first_nl = text.find('\n');
    {
        std::istringstream head(std::string(text.substr(0, first_nl)));
        std::string magic;
        int version = -1;
        head >> magic >> version;
        if (magic != "exq-operator-cache") throw CacheError(CacheError::Kind::format, "not an operator cache");
        if (version != cache_version)
            throw CacheError(CacheError::Kind::version, "cache version " + std::to_string(version) + ", expected " +
                                                            std::to_string(cache_version));
    }
    std::string_view trimmed = text;
    while (!trimmed.empty() && trimmed.back() == '\n') trimmed.remove_suffix(1);
    const auto last_nl = trimmed.rfind('\n');
    const std::string_view last = last_nl == std::string_view::npos ? trimmed : trimmed.substr(last_nl + 1);
    if (last.substr(0, 9) != "checksum ") throw CacheError(CacheError::Kind::checksum, "checksum line missing (truncated?)");
    const std::string_view body = text.substr(0, last_nl + 1);
    unsigned long stored = 0;
    try {
        stored = std::stoul(std::string(last.substr(9)), nullptr, 16);
    } catch (const std::exception&) {
        throw CacheError(CacheError::Kind::checksum, "unreadable checksum");
    }
    if (stored != checksum(body)) throw CacheError(CacheError::Kind::checksum, "checksum mismatch");

    auto bad = [](int line, const std::string& what) {
        return CacheError(CacheError::Kind::format, "line " + std::to_string(line) + ": " + what);
    };
    std::optional<SpaceId> space;
    int size = -1;
    std::vector<RootCoords> labels;
    std::vector<int> degrees;
    std::vector<std::vector<GradedClass>> cols;
    const auto lines = split_lines(body);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        Cursor cur(lines[i], lineno);
        if (cur.at_end()) continue;
        try {
            const std::string d = cur.word();
            if (d == "space") space = parse_space(cur.word());
            else if (d == "size") size = cur.integer();
            else if (d == "gen") {
                cur.word();
                degrees.push_back(cur.integer());
                const RefLabel l = cur.label();
                if (l.kind != RefLabel::Kind::tuple) throw bad(lineno, "generator label must be a tuple");
                labels.push_back(RootCoords{l.tuple});
            } else if (d == "op") {
                cur.word();
                cols.emplace_back();
            } else if (d == "col") {
                if (cols.empty()) throw bad(lineno, "column before op");
                const int v = cur.integer();
                if (v != static_cast<int>(cols.back().size())) throw bad(lineno, "columns out of order");
                cur.expect(':');
                GradedClass c;
                while (!cur.at_end()) {
                    const int k = cur.integer();
                    const int o = cur.integer();
                    if (k < 0 || o < 0 || o >= size) throw bad(lineno, "term outside the basis");
                    c.add({k, o}, cur.rational());
                    if (cur.at_end()) break;
                    cur.expect(';');
                }
                cols.back().push_back(std::move(c));
            } else {
                throw bad(lineno, "unknown directive '" + d + "'");
            }
            if (!cur.at_end()) throw bad(lineno, "trailing input");
        } catch (const ParseError& e) {
            throw CacheError(CacheError::Kind::format, e.what());
        } catch (const std::invalid_argument& e) {
            throw bad(lineno, e.what());
        }
    }
    if (!space) throw CacheError(CacheError::Kind::format, "no space line");
    if (cols.size() != labels.size()) throw CacheError(CacheError::Kind::format, "operator count does not match generators");
    std::vector<GradedOperator> ops;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (static_cast<int>(cols[i].size()) != size) throw CacheError(CacheError::Kind::format, "wrong column count");
        ops.emplace_back(*space, degrees[i], std::move(cols[i]));
    }
    try {
        auto ring = QuantumRing::from_operators(*space, labels, std::move(ops));
        if (ring->quotient().size() != size) throw CacheError(CacheError::Kind::format, "basis size differs");
        return ring;
    } catch (const std::invalid_argument& e) {
        throw CacheError(CacheError::Kind::format, e.what());
    } catch (const UnknownLabel& e) {
        throw CacheError(CacheError::Kind::format, e.what());
    }
}

void cache_store(const std::filesystem::path& path, const QuantumRing& ring) {
    const std::string text = serialize_operators(ring);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError(CacheError::Kind::io, "cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) throw CacheError(CacheError::Kind::io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw CacheError(CacheError::Kind::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::shared_ptr<QuantumRing> cache_load(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error& e) {
        throw CacheError(CacheError::Kind::io, e.what());
    }
    return parse_operators(text);
}

}  // namespace exq
