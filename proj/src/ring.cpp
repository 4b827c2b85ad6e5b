#include "exq/ring.hpp"

#include <chrono>
#include <string_view>

#include "exq/linalg.hpp"

namespace exq {

namespace {

RootCoords root(std::initializer_list<int> v) {
    RootCoords r{IntVector(static_cast<Eigen::Index>(v.size()))};
    Eigen::Index i = 0;
    for (int x : v) r.coeffs[i++] = x;
    return r;
}

const char* generator_name(std::size_t i) { return i == 0 ? "s" : "t"; }

}  // namespace

const Generator* GeneratorSet::find(std::string_view name) const {
    for (const auto& g : extra)
        if (g.name == name) return &g;
    return nullptr;
}

std::vector<RootCoords> builtin_generator_labels(const SpaceId& space) {
    switch (space.kind) {
    case GroupKind::E6:
        if (space.node == 1) return {root({1, 1, 1, 1, 0, 0})};
        return {root({0, 1, 1, 1, 0, 0}), root({1, 1, 1, 1, 0, 0})};
    case GroupKind::E7:
        if (space.node == 1) return {root({1, 1, 1, 1, 0, 0, 0}), root({1, 0, 1, 1, 1, 1, 1})};
        return {root({0, 1, 0, 1, 1, 1, 1}), root({1, 1, 2, 2, 1, 1, 1})};
    case GroupKind::E8:
        return {root({0, 1, 0, 1, 1, 1, 1, 1}), root({0, 1, 1, 2, 2, 2, 1, 1})};
    case GroupKind::F4:
        if (space.node == 1) return {root({1, 2, 2, 0})};
        return {root({1, 1, 1, 1})};
    case GroupKind::G2:
        return {};
    }
    return {};
}

GeneratorSet make_generators(const ParabolicQuotient& q, const std::vector<RootCoords>& labels) {
    if (labels.size() > 2) throw std::invalid_argument("at most two generators besides h");
    GeneratorSet out{q.space(), {}, q.fano()};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto& e = lookup_label(q, labels[i]);
        out.extra.push_back({generator_name(i), e.length, e.ordinal});
    }
    return out;
}

GeneratorSet builtin_generators(const ParabolicQuotient& q) {
    return make_generators(q, builtin_generator_labels(q.space()));
}

GradedOperator::GradedOperator(SpaceId space, int shift, std::vector<GradedClass> columns)
    : space_(space), shift_(shift), columns_(std::move(columns)) {}

GradedClass GradedOperator::apply(const GradedClass& x) const {
    GradedClass out;
    for (const auto& [k, c] : x.terms())
        for (const auto& [k2, c2] : column(k.ordinal).terms()) out.add({k.qpower + k2.qpower, k2.ordinal}, c * c2);
    return out;
}

GradedOperator hyperplane_operator(const ChevalleyData& chevalley) {
    const auto& q = chevalley.quotient();
    std::vector<GradedClass> cols;
    for (int v = 0; v < q.size(); ++v) {
        GradedClass c;
        for (const auto& t : chevalley.terms(v)) c.add({t.qpower, t.target}, Rational(t.coeff));
        cols.push_back(std::move(c));
    }
    return GradedOperator(q.space(), 1, std::move(cols));
}

PairingForm::PairingForm(const ParabolicQuotient& q) {
    for (const auto& e : q.elements()) dual_.push_back(dual(q, e).ordinal);
}

std::map<int, Rational> PairingForm::operator()(const GradedClass& x, const GradedClass& y) const {
    std::map<int, Rational> out;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms())
            if (dual_of(kx.ordinal) == ky.ordinal) out[kx.qpower + ky.qpower] += cx * cy;
    std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
    return out;
}

bool is_self_adjoint(const PairingForm& form, const GradedOperator& op) {
    const int n = op.size();
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v) {
            const auto bu = GradedClass::basis(u), bv = GradedClass::basis(v);
            if (form(op.apply(bu), bv) != form(bu, op.apply(bv))) return false;
        }
    return true;
}

bool commute(const GradedOperator& a, const GradedOperator& b) {
    if (a.size() != b.size()) return false;
    for (int v = 0; v < a.size(); ++v)
        if (a.apply(b.column(v)) != b.apply(a.column(v))) return false;
    return true;
}

bool is_homogeneous(const ParabolicQuotient& q, const GradedOperator& op) {
    for (int v = 0; v < op.size(); ++v)
        for (const auto& [k, c] : op.column(v).terms())
            if (degree_of(q, k) != q[v].length + op.shift()) return false;
    return true;
}

OperatorSolution solve_generator_operator(const ChevalleyData& chevalley,
                                          const Generator& g,
                                          const std::vector<GradedClass>& classical,
                                          const std::vector<const GradedOperator*>& commuting) {
    using Eliminator = linalg::SparseEliminator<Rational>;
    const auto start = std::chrono::steady_clock::now();
    const auto& q = chevalley.quotient();
    const int n = q.size(), c = q.fano(), dim = q.dimension();
    if (static_cast<int>(classical.size()) != n) throw std::invalid_argument("classical products: wrong column count");

    // ids[v] : (k, x) -> unknown
    std::vector<std::map<ClassKey, int>> ids(static_cast<std::size_t>(n));
    std::vector<std::pair<int, ClassKey>> unknowns;
    // Longest sources first: the lowest column of a commutation row then
    // sits one step above its source, so elimination runs upward from the unit.
    for (int v = n - 1; v >= 0; --v)
        for (int k = 0;; ++k) {
            const int len = q[v].length + g.degree - k * c;
            if (len < 0) break;
            if (len > dim) continue;
            for (int x : q.degree(len)) {
                ids[static_cast<std::size_t>(v)].emplace(ClassKey{k, x}, static_cast<int>(unknowns.size()));
                unknowns.emplace_back(v, ClassKey{k, x});
            }
        }
    const int count = static_cast<int>(unknowns.size());
    auto id_of = [&](int v, const ClassKey& k) {
        const auto& m = ids[static_cast<std::size_t>(v)];
        const auto it = m.find(k);
        if (it == m.end()) throw std::logic_error("target outside the graded range");
        return it->second;
    };

    Eliminator elim(count);
    int equations = 0;
    auto push = [&](Eliminator::Row row, const Rational& rhs) {
        ++equations;
        if (elim.add(std::move(row), rhs) == Eliminator::Outcome::inconsistent)
            throw InfeasibleSystem("no operator for " + g.name + " on " + q.space().name());
    };

    for (const auto& [key, id] : ids[0])
        push({{id, Rational(1)}}, Rational(key.qpower == 0 && key.ordinal == g.ordinal ? 1 : 0));

    for (const GradedOperator* o : commuting) {
        for (int v = 0; v < n; ++v) {
            std::map<ClassKey, Eliminator::Row> rows;
            // M_g(o sigma_v)
            for (const auto& [ko, co] : o->column(v).terms())
                for (const auto& [kg, id] : ids[static_cast<std::size_t>(ko.ordinal)])
                    rows[{ko.qpower + kg.qpower, kg.ordinal}][id] += co;
            // - o(M_g sigma_v)
            for (const auto& [kg, id] : ids[static_cast<std::size_t>(v)])
                for (const auto& [ko, co] : o->column(kg.ordinal).terms())
                    rows[{kg.qpower + ko.qpower, ko.ordinal}][id] -= co;
            for (auto& [key, row] : rows) push(std::move(row), Rational(0));
        }
    }

    PairingForm form(q);
    for (int id = 0; id < count; ++id) {
        const auto& [v, key] = unknowns[static_cast<std::size_t>(id)];
        const int mate = id_of(form.dual_of(key.ordinal), {key.qpower, form.dual_of(v)});
        if (mate > id) push({{id, Rational(1)}, {mate, Rational(-1)}}, Rational(0));
    }
    const int structural = elim.free_dimension();

    for (int id = 0; id < count; ++id) {
        const auto& [v, key] = unknowns[static_cast<std::size_t>(id)];
        if (key.qpower != 0) continue;
        push({{id, Rational(1)}}, classical[static_cast<std::size_t>(v)].coefficient(key));
    }

    const auto x = elim.solution();
    std::vector<GradedClass> cols(static_cast<std::size_t>(n));
    for (int id = 0; id < count; ++id) {
        const auto& [v, key] = unknowns[static_cast<std::size_t>(id)];
        cols[static_cast<std::size_t>(v)].add(key, x[static_cast<std::size_t>(id)]);
    }

    SolveReport report;
    report.generator = g.name;
    report.unknowns = count;
    report.equations = equations;
    report.ambiguity_structural = structural;
    report.ambiguity = elim.free_dimension();
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {GradedOperator(q.space(), g.degree, std::move(cols)), report};
}

QuantumRing::QuantumRing(ChevalleyData chevalley, GeneratorSet generators)
    : chevalley_(std::move(chevalley)), generators_(std::move(generators)) {
    ops_.push_back(hyperplane_operator(chevalley_));
}

std::shared_ptr<QuantumRing> QuantumRing::build(const SpaceId& space, std::optional<std::vector<RootCoords>> labels) {
    auto quotient = std::make_shared<const ParabolicQuotient>(enumerate(space));
    auto gens = labels ? make_generators(*quotient, *labels) : builtin_generators(*quotient);
    std::shared_ptr<QuantumRing> ring(new QuantumRing(build_chevalley(quotient), std::move(gens)));
    if (ring->generators_.extra.empty()) return ring;

    const LocalizationTable loc(ring->chevalley_);
    for (const auto& g : ring->generators_.extra) {
        std::vector<const GradedOperator*> known;
        for (const auto& o : ring->ops_) known.push_back(&o);
        auto sol = solve_generator_operator(ring->chevalley_, g, loc.classical_products(g.ordinal), known);
        ring->ops_.push_back(std::move(sol.op));
        ring->reports_.push_back(sol.report);
    }
    return ring;
}

std::shared_ptr<QuantumRing> QuantumRing::from_operators(const SpaceId& space, const std::vector<RootCoords>& labels,
                                                         std::vector<GradedOperator> ops) {
    auto quotient = std::make_shared<const ParabolicQuotient>(enumerate(space));
    auto gens = make_generators(*quotient, labels);
    if (ops.size() != gens.extra.size()) throw std::invalid_argument("operator count does not match generators");
    std::shared_ptr<QuantumRing> ring(new QuantumRing(build_chevalley(quotient), std::move(gens)));
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const auto& o = ops[i];
        if (o.space() != space || o.size() != quotient->size() || o.shift() != ring->generators_.extra[i].degree ||
            !is_homogeneous(*quotient, o))
            throw std::invalid_argument("operator shape does not match " + space.name());
        ring->ops_.push_back(std::move(ops[i]));
    }
    return ring;
}

int QuantumRing::degree(const Exponents& m) const {
    const auto& ex = generators_.extra;
    if ((m.b && ex.empty()) || (m.c && ex.size() < 2)) throw std::invalid_argument("monomial uses a missing generator");
    return m.a + m.b * (ex.empty() ? 0 : ex[0].degree) + m.c * (ex.size() < 2 ? 0 : ex[1].degree) +
           m.e * generators_.q_degree;
}

GradedClass QuantumRing::monomial(const Exponents& m) const {
    degree(m);
    const Exponents key{m.a, m.b, m.c, 0};
    {
        std::lock_guard lock(memo_mutex_);
        const auto it = memo_.find(key);
        if (it != memo_.end()) return it->second.q_shifted(m.e);
    }
    GradedClass value;
    if (m.a > 0) value = op(0).apply(monomial({m.a - 1, m.b, m.c, 0}));
    else if (m.b > 0) value = op(1).apply(monomial({0, m.b - 1, m.c, 0}));
    else if (m.c > 0) value = op(2).apply(monomial({0, 0, m.c - 1, 0}));
    else value = GradedClass::basis(0);
    {
        std::lock_guard lock(memo_mutex_);
        memo_.emplace(key, value);
    }
    return value.q_shifted(m.e);
}

GradedClass QuantumRing::apply_monomial(const Exponents& m, const GradedClass& y) const {
    degree(m);
    GradedClass x = y.q_shifted(m.e);
    for (int i = 0; i < m.c; ++i) x = op(2).apply(x);
    for (int i = 0; i < m.b; ++i) x = op(1).apply(x);
    for (int i = 0; i < m.a; ++i) x = op(0).apply(x);
    return x;
}

std::vector<Exponents> QuantumRing::monomials_of_degree(int d) const {
    std::vector<Exponents> out;
    if (d < 0) return out;
    const auto& ex = generators_.extra;
    const int ds = ex.empty() ? 0 : ex[0].degree;
    const int dt = ex.size() < 2 ? 0 : ex[1].degree;
    const int dq = generators_.q_degree;
    for (int e = 0; e * dq <= d; ++e)
        for (int c = 0; dt ? e * dq + c * dt <= d : c == 0; ++c) {
            const int rest = d - e * dq - c * dt;
            for (int b = 0; ds ? b * ds <= rest : b == 0; ++b) out.push_back({rest - b * ds, b, c, e});
        }
    return out;
}

std::vector<KrylovRow> QuantumRing::krylov_report() const {
    const auto& q = quotient();
    std::vector<KrylovRow> out;
    for (int d = 0; d <= q.dimension(); ++d) {
        std::map<ClassKey, Eigen::Index> coord;
        for (int k = 0; k * q.fano() <= d; ++k)
            for (int x : q.degree(d - k * q.fano())) coord.emplace(ClassKey{k, x}, static_cast<Eigen::Index>(coord.size()));
        const auto monos = monomials_of_degree(d);
        auto span = [&](auto&& keep) {
            std::vector<GradedClass> vs;
            for (const auto& m : monos)
                if (keep(m)) vs.push_back(monomial(m));
            if (vs.empty()) return 0;
            RationalMatrix a = RationalMatrix::Zero(static_cast<Eigen::Index>(coord.size()), static_cast<Eigen::Index>(vs.size()));
            for (std::size_t j = 0; j < vs.size(); ++j)
                for (const auto& [k, v] : vs[j].terms()) a(coord.at(k), static_cast<Eigen::Index>(j)) = v;
            return static_cast<int>(linalg::rank(a));
        };
        KrylovRow row;
        row.degree = d;
        row.dimension = static_cast<int>(coord.size());
        row.span_hq = span([](const Exponents& m) { return m.b == 0 && m.c == 0; });
        row.span_hsq = span([](const Exponents& m) { return m.c == 0; });
        row.span_all = span([](const Exponents&) { return true; });
        out.push_back(row);
    }
    return out;
}

}  // namespace exq
