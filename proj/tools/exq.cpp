// exq: Schubert bases, quantum products and Giambelli tables of the
// exceptional spaces E6/P1 ... G2/P2.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "exq/refdata.hpp"

namespace fs = std::filesystem;
using namespace exq;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SpaceId space_arg(const std::string& s) {
    try {
        return parse_space(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("unknown space '" + s + "' (expected one of E6/P1 E6/P2 E7/P1 E7/P7 E8/P8 F4/P1 F4/P4 G2/P1 G2/P2)");
    }
}

// "(1,0,1,1)" or "1,0,1,1", simple-root order
const CosetElement& label_arg(const ParabolicQuotient& q, std::string s) {
    if (!s.empty() && s.front() == '(') s.erase(0, 1);
    if (!s.empty() && s.back() == ')') s.pop_back();
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad label entry '" + item + "'");
        }
    }
    if (static_cast<int>(v.size()) != q.roots().rank())
        throw UsageError("label needs " + std::to_string(q.roots().rank()) + " entries");
    return lookup_label(q, RootCoords{Eigen::Map<IntVector>(v.data(), static_cast<Eigen::Index>(v.size()))});
}

std::shared_ptr<QuantumRing> ring_for(const SpaceId& sp, const std::string& cache_dir) {
    if (cache_dir.empty()) return QuantumRing::build(sp);
    fs::create_directories(cache_dir);
    std::string name = reference_file_name(sp);
    name.replace(name.size() - 4, 4, ".cache");
    const auto path = fs::path(cache_dir) / name;
    if (fs::exists(path)) {
        try {
            return cache_load(path);
        } catch (const CacheError& e) {
            std::cerr << "warning: ignoring cache " << path << ": " << e.what() << '\n';
        }
    }
    auto ring = QuantumRing::build(sp);
    cache_store(path, *ring);
    return ring;
}

int cmd_basis(const SpaceId& sp) {
    const auto q = enumerate(sp);
    for (const auto& e : q.elements()) {
        std::cout << std::setw(3) << e.length << "  " << format_tuple(e.label.coeffs) << "  s";
        for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) std::cout << (it == e.word.rbegin() ? "" : ".") << *it;
        if (e.word.empty()) std::cout << "()";
        std::cout << '\n';
    }
    return exit_ok;
}

int cmd_info(const SpaceId& sp, const std::string& cache) {
    const auto ring = ring_for(sp, cache);
    const auto& q = ring->quotient();
    std::cout << "space      " << sp.name() << '\n'
              << "dimension  " << q.dimension() << '\n'
              << "classes    " << q.size() << '\n'
              << "fano index " << q.fano() << '\n'
              << "profile   ";
    for (int b : poincare_profile(q)) std::cout << ' ' << b;
    std::cout << '\n' << "generators h(1)";
    for (const auto& g : ring->generators().extra)
        std::cout << ' ' << g.name << '(' << g.degree << ")=" << format_tuple(q[g.ordinal].label.coeffs);
    std::cout << " q(" << q.fano() << ")\n";
    for (const auto& r : ring->reports())
        std::cout << "solve " << r.generator << "    " << r.unknowns << " unknowns, " << r.equations
                  << " equations, ambiguity " << r.ambiguity_structural << " before classical part, " << r.ambiguity
                  << " after\n";
    return exit_ok;
}

int cmd_mult(const SpaceId& sp, const std::string& a, const std::string& b, const std::string& cache) {
    const auto ring = ring_for(sp, cache);
    const auto& q = ring->quotient();
    const auto& x = label_arg(q, a);
    const auto& y = label_arg(q, b);
    const auto table = solve_table(*ring);
    std::cout << star(*ring, table.entries.at(x.ordinal), GradedClass::basis(y.ordinal)).format(q) << '\n';
    return exit_ok;
}

int cmd_giambelli(const SpaceId& sp, bool latex, bool structured, const std::string& cache) {
    const auto ring = ring_for(sp, cache);
    const auto& q = ring->quotient();
    const auto table = solve_table(*ring);
    if (latex) std::cout << emit_latex(*ring, table);
    else if (structured) std::cout << serialize(to_reference(*ring, table));
    else
        for (const auto& [o, p] : table.entries)
            std::cout << std::setw(3) << q[o].length << "  " << format_tuple(q[o].label.coeffs) << " = " << p.format() << '\n';
    return exit_ok;
}

int cmd_krylov(const SpaceId& sp, const std::string& cache) {
    const auto ring = ring_for(sp, cache);
    std::cout << "degree  dim  h,q  +s  +t\n";
    for (const auto& r : ring->krylov_report())
        std::cout << std::setw(6) << r.degree << std::setw(5) << r.dimension << std::setw(5) << r.span_hq << std::setw(4)
                  << r.span_hsq << std::setw(4) << r.span_all << '\n';
    return exit_ok;
}

int cmd_verify(const std::string& which, const std::string& reference) {
    const fs::path ref = reference.empty() ? fs::path(EXQ_REFERENCE_DIR) : fs::path(reference);
    std::map<SpaceId, ReferenceTable> corpus;
    std::vector<SpaceId> spaces;
    if (fs::is_directory(ref)) {
        corpus = load_corpus(ref);
        if (which == "all") spaces = all_spaces();
        else spaces.push_back(space_arg(which));
    } else {
        auto t = parse_reference(ref);
        if (which != "all" && space_arg(which) != t.space)
            throw UsageError(ref.string() + " holds " + t.space.name() + ", not " + which);
        spaces.push_back(t.space);
        corpus.emplace(t.space, std::move(t));
    }
    const auto report = verify(spaces, corpus);
    std::cout << format_report(report);
    return report.pass() ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quantum cohomology of exceptional G/P"};
    app.require_subcommand(1);
    std::string cache;
    app.add_option("--cache", cache, "directory for solved operators");

    std::string space, label_a, label_b, reference, which;
    bool latex = false, structured = false;

    auto* basis = app.add_subcommand("basis", "Schubert classes: degree, label, reduced word");
    basis->add_option("space", space)->required();
    auto* info = app.add_subcommand("info", "dimension, Fano index, Betti numbers, generators");
    info->add_option("space", space)->required();
    auto* mult = app.add_subcommand("mult", "quantum product of two Schubert classes");
    mult->add_option("space", space)->required();
    mult->add_option("a", label_a, "label on the simple roots, e.g. (1,0,1,1)")->required();
    mult->add_option("b", label_b)->required();
    auto* giam = app.add_subcommand("giambelli", "Giambelli polynomials of all classes");
    giam->add_option("space", space)->required();
    auto* fmt = giam->add_option_group("format");
    fmt->add_flag("--latex", latex);
    fmt->add_flag("--struct", structured);
    fmt->require_option(0, 1);
    auto* ver = app.add_subcommand("verify", "check reference tables");
    ver->add_option("space", which, "a space or 'all'")->required();
    ver->add_option("--reference", reference, "reference directory or single file");
    auto* kry = app.add_subcommand("krylov", "span of generator monomials per degree");
    kry->add_option("space", space)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*basis) return cmd_basis(space_arg(space));
        if (*info) return cmd_info(space_arg(space), cache);
        if (*mult) return cmd_mult(space_arg(space), label_a, label_b, cache);
        if (*giam) return cmd_giambelli(space_arg(space), latex, structured, cache);
        if (*kry) return cmd_krylov(space_arg(space), cache);
        if (*ver) return cmd_verify(which, reference);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const UnknownLabel& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvariantViolation& e) {
        std::cerr << "invalid reference: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
