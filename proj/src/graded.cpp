#include "exq/graded.hpp"

#include <sstream>

namespace exq {

GradedClass GradedClass::basis(int ordinal, int qpower) {
    GradedClass g;
    g.terms_.emplace(ClassKey{qpower, ordinal}, Rational(1));
    return g;
}

Rational GradedClass::coefficient(const ClassKey& k) const {
    const auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GradedClass::add(const ClassKey& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

GradedClass& GradedClass::operator+=(const GradedClass& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

GradedClass& GradedClass::operator-=(const GradedClass& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

GradedClass& GradedClass::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

GradedClass GradedClass::q_shifted(int by) const {
    GradedClass out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(ClassKey{k.qpower + by, k.ordinal}, c);
    return out;
}

int GradedClass::degree(const ParabolicQuotient& q) const {
    return terms_.empty() ? -1 : degree_of(q, terms_.begin()->first);
}

bool GradedClass::is_homogeneous(const ParabolicQuotient& q) const {
    const int d = degree(q);
    for (const auto& [k, c] : terms_)
        if (degree_of(q, k) != d) return false;
    return true;
}

bool GradedClass::is_schubert(int ordinal) const {
    return terms_.size() == 1 && terms_.begin()->first == ClassKey{0, ordinal} && terms_.begin()->second == Rational(1);
}

std::string GradedClass::format(const ParabolicQuotient& q) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational a = c;
        if (!first) {
            os << (a.sign() < 0 ? " - " : " + ");
            a = abs(a);
        } else if (a.sign() < 0) {
            os << "-";
            a = abs(a);
        }
        first = false;
        if (a != Rational(1)) os << a << " ";
        if (k.qpower == 1) os << "q ";
        else if (k.qpower > 1) os << "q^" << k.qpower << " ";
        os << "s" << format_tuple(q[k.ordinal].label.coeffs);
    }
    return os.str();
}

}  // namespace exq
