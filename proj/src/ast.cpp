#include "tkb/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace tkb {

std::string RoleExpr::to_string() const {
    switch (kind) {
    case Kind::Named: return name;
    case Kind::Inverse: return "INV(" + name + ")";
    case Kind::Universal: return "UNIVERSAL";
    }
    return name;
}

struct ConceptFactory {
    static ConceptPtr make(ConceptKind kind, std::string name = {},
                           std::vector<ConceptPtr> args = {}, ConceptPtr filler = nullptr,
                           RoleExpr role = {}, std::uint32_t n = 0,
                           std::vector<std::string> inds = {}) {
        ConceptExpr node;
        node.kind_ = kind;
        node.name_ = std::move(name);
        node.args_ = std::move(args);
        node.filler_ = std::move(filler);
        node.role_ = std::move(role);
        node.n_ = n;
        node.inds_ = std::move(inds);
        return std::make_shared<const ConceptExpr>(std::move(node));
    }
};

namespace {

ConceptPtr make_node(ConceptKind kind) { return ConceptFactory::make(kind); }

const ConceptPtr& top_singleton() {
    static const ConceptPtr t = make_node(ConceptKind::Top);
    return t;
}

const ConceptPtr& bottom_singleton() {
    static const ConceptPtr b = make_node(ConceptKind::Bottom);
    return b;
}

// Shared builder for And/Or. `neutral` is dropped, `absorbing` collapses the
// whole expression; nested same-kind arguments are flattened first.
ConceptPtr make_nary(ConceptKind kind, std::vector<ConceptPtr> args,
                     const ConceptPtr& neutral, const ConceptPtr& absorbing) {
    std::vector<ConceptPtr> flat;
    flat.reserve(args.size());
    for (auto& a : args) {
        if (!a) throw std::invalid_argument("null concept argument");
        if (a->kind() == kind) {
            for (const auto& sub : a->args()) flat.push_back(sub);
        } else {
            flat.push_back(std::move(a));
        }
    }
    std::vector<ConceptPtr> kept;
    kept.reserve(flat.size());
    for (auto& a : flat) {
        if (structurally_equal(a, absorbing)) return absorbing;
        if (structurally_equal(a, neutral)) continue;
        bool duplicate = false;
        for (const auto& k : kept) {
            if (structurally_equal(k, a)) { duplicate = true; break; }
        }
        if (!duplicate) kept.push_back(std::move(a));
    }
    if (kept.empty()) return neutral;
    if (kept.size() == 1) return kept.front();
    return ConceptFactory::make(kind, {}, std::move(kept));
}

} // namespace

ConceptPtr atomic(std::string name) {
    return ConceptFactory::make(ConceptKind::Atomic, std::move(name));
}

ConceptPtr top() { return top_singleton(); }
ConceptPtr bottom() { return bottom_singleton(); }

ConceptPtr negation(ConceptPtr c) {
    if (!c) throw std::invalid_argument("null concept argument");
    return ConceptFactory::make(ConceptKind::Not, {}, {}, std::move(c));
}

ConceptPtr conjunction(std::vector<ConceptPtr> args) {
    return make_nary(ConceptKind::And, std::move(args), top_singleton(), bottom_singleton());
}

ConceptPtr disjunction(std::vector<ConceptPtr> args) {
    return make_nary(ConceptKind::Or, std::move(args), bottom_singleton(), top_singleton());
}

ConceptPtr exists(RoleExpr r, ConceptPtr filler) {
    if (!filler) throw std::invalid_argument("null filler");
    return ConceptFactory::make(ConceptKind::Exists, {}, {}, std::move(filler), std::move(r));
}

ConceptPtr forall(RoleExpr r, ConceptPtr filler) {
    if (!filler) throw std::invalid_argument("null filler");
    return ConceptFactory::make(ConceptKind::ForAll, {}, {}, std::move(filler), std::move(r));
}

ConceptPtr at_least(std::uint32_t n, RoleExpr r, ConceptPtr filler) {
    if (!filler) throw std::invalid_argument("null filler");
    return ConceptFactory::make(ConceptKind::AtLeast, {}, {}, std::move(filler), std::move(r), n);
}

ConceptPtr at_most(std::uint32_t n, RoleExpr r, ConceptPtr filler) {
    if (!filler) throw std::invalid_argument("null filler");
    return ConceptFactory::make(ConceptKind::AtMost, {}, {}, std::move(filler), std::move(r), n);
}

ConceptPtr self_restriction(RoleExpr r) {
    return ConceptFactory::make(ConceptKind::Self, {}, {}, nullptr, std::move(r));
}

ConceptPtr nominal(std::vector<std::string> individuals) {
    if (individuals.empty()) throw std::invalid_argument("empty nominal");
    std::sort(individuals.begin(), individuals.end());
    individuals.erase(std::unique(individuals.begin(), individuals.end()), individuals.end());
    return ConceptFactory::make(ConceptKind::Nominal, {}, {}, nullptr, {}, 0,
                                std::move(individuals));
}

namespace {

int cmp3(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compare_roles(const RoleExpr& a, const RoleExpr& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
}

} // namespace

int compare(const ConceptExpr& a, const ConceptExpr& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
        return 0;
    case ConceptKind::Atomic: {
        int c = a.name().compare(b.name());
        return cmp3(c, 0);
    }
    case ConceptKind::Not:
        return compare(a.child(), b.child());
    case ConceptKind::And:
    case ConceptKind::Or: {
        const auto& xs = a.args();
        const auto& ys = b.args();
        for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
            if (int c = compare(xs[i], ys[i])) return c;
        }
        return cmp3(static_cast<int>(xs.size()), static_cast<int>(ys.size()));
    }
    case ConceptKind::Exists:
    case ConceptKind::ForAll: {
        if (int c = compare_roles(a.role(), b.role())) return c;
        return compare(a.filler(), b.filler());
    }
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost: {
        if (a.cardinality() != b.cardinality()) return a.cardinality() < b.cardinality() ? -1 : 1;
        if (int c = compare_roles(a.role(), b.role())) return c;
        return compare(a.filler(), b.filler());
    }
    case ConceptKind::Self:
        return compare_roles(a.role(), b.role());
    case ConceptKind::Nominal: {
        const auto& xs = a.individuals();
        const auto& ys = b.individuals();
        for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
            int c = xs[i].compare(ys[i]);
            if (c) return cmp3(c, 0);
        }
        return cmp3(static_cast<int>(xs.size()), static_cast<int>(ys.size()));
    }
    }
    return 0;
}

int compare(const ConceptPtr& a, const ConceptPtr& b) {
    if (a.get() == b.get()) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return compare(*a, *b);
}

bool structurally_equal(const ConceptPtr& a, const ConceptPtr& b) {
    return compare(a, b) == 0;
}

namespace {

// Precedence tiers for printing: OR is loosest, AND next, everything else is
// an atom-like unit. A subexpression is parenthesized when its tier binds
// looser than or equal to the context's.
enum class Prec { None = 0, Or = 1, And = 2, Unit = 3 };

Prec prec_of(const ConceptExpr& c) {
    switch (c.kind()) {
    case ConceptKind::Or: return Prec::Or;
    case ConceptKind::And: return Prec::And;
    default: return Prec::Unit;
    }
}

void print(const ConceptExpr& c, Prec context, std::string& out) {
    const bool parens = prec_of(c) != Prec::Unit && prec_of(c) <= context;
    if (parens) out += "(";
    switch (c.kind()) {
    case ConceptKind::Atomic: out += c.name(); break;
    case ConceptKind::Top: out += "TOP"; break;
    case ConceptKind::Bottom: out += "BOTTOM"; break;
    case ConceptKind::Not:
        out += "NOT ";
        print(*c.child(), Prec::And, out); // NOT binds tighter than AND
        break;
    case ConceptKind::And:
        for (std::size_t i = 0; i < c.args().size(); ++i) {
            if (i) out += " AND ";
            print(*c.args()[i], Prec::And, out);
        }
        break;
    case ConceptKind::Or:
        for (std::size_t i = 0; i < c.args().size(); ++i) {
            if (i) out += " OR ";
            print(*c.args()[i], Prec::Or, out);
        }
        break;
    case ConceptKind::Exists:
        out += c.role().to_string() + " SOME ";
        print(*c.filler(), Prec::And, out);
        break;
    case ConceptKind::ForAll:
        out += c.role().to_string() + " ONLY ";
        print(*c.filler(), Prec::And, out);
        break;
    case ConceptKind::AtLeast:
        out += "MIN " + std::to_string(c.cardinality()) + " " + c.role().to_string() + " ";
        print(*c.filler(), Prec::And, out);
        break;
    case ConceptKind::AtMost:
        out += "MAX " + std::to_string(c.cardinality()) + " " + c.role().to_string() + " ";
        print(*c.filler(), Prec::And, out);
        break;
    case ConceptKind::Self:
        out += c.role().to_string() + " SELF";
        break;
    case ConceptKind::Nominal: {
        out += "ONEOF{";
        for (std::size_t i = 0; i < c.individuals().size(); ++i) {
            if (i) out += ", ";
            out += c.individuals()[i];
        }
        out += "}";
        break;
    }
    }
    if (parens) out += ")";
}

} // namespace

std::string to_string(const ConceptExpr& c) {
    std::string out;
    print(c, Prec::None, out);
    return out;
}

std::string to_string(const ConceptPtr& c) { return to_string(*c); }

} // namespace tkb
