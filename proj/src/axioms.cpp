#include "tkb/axioms.hpp"

#include <stdexcept>

namespace tkb {

namespace {

Axiom make(AxiomKind kind) {
    Axiom ax;
    ax.kind = kind;
    return ax;
}

} // namespace

Axiom Axiom::concept_inclusion(ConceptPtr sub, ConceptPtr sup) {
    auto ax = make(AxiomKind::ConceptInclusion);
    ax.c1 = std::move(sub);
    ax.c2 = std::move(sup);
    return ax;
}

Axiom Axiom::concept_equivalence(ConceptPtr lhs, ConceptPtr rhs) {
    auto ax = make(AxiomKind::ConceptEquivalence);
    ax.c1 = std::move(lhs);
    ax.c2 = std::move(rhs);
    return ax;
}

Axiom Axiom::role_domain(RoleExpr r, ConceptPtr c) {
    auto ax = make(AxiomKind::RoleDomain);
    ax.r1 = std::move(r);
    ax.c1 = std::move(c);
    return ax;
}

Axiom Axiom::role_range(RoleExpr r, ConceptPtr c) {
    auto ax = make(AxiomKind::RoleRange);
    ax.r1 = std::move(r);
    ax.c1 = std::move(c);
    return ax;
}

Axiom Axiom::concept_assertion(ConceptPtr c, std::string individual) {
    auto ax = make(AxiomKind::ConceptAssertion);
    ax.c1 = std::move(c);
    ax.i1 = std::move(individual);
    return ax;
}

Axiom Axiom::role_assertion(RoleExpr r, std::string subject, std::string object) {
    auto ax = make(AxiomKind::RoleAssertion);
    if (r.is_inverse()) { // (a,b):INV(r) is (b,a):r
        ax.r1 = r.inverse();
        ax.i1 = std::move(object);
        ax.i2 = std::move(subject);
    } else {
        ax.r1 = std::move(r);
        ax.i1 = std::move(subject);
        ax.i2 = std::move(object);
    }
    return ax;
}

Axiom Axiom::negated_role_assertion(RoleExpr r, std::string subject, std::string object) {
    auto ax = make(AxiomKind::NegatedRoleAssertion);
    if (r.is_inverse()) {
        ax.r1 = r.inverse();
        ax.i1 = std::move(object);
        ax.i2 = std::move(subject);
    } else {
        ax.r1 = std::move(r);
        ax.i1 = std::move(subject);
        ax.i2 = std::move(object);
    }
    return ax;
}

Axiom Axiom::same_individual(std::string a, std::string b) {
    auto ax = make(AxiomKind::SameIndividual);
    ax.i1 = std::move(a);
    ax.i2 = std::move(b);
    return ax;
}

Axiom Axiom::different_individuals(std::string a, std::string b) {
    auto ax = make(AxiomKind::DifferentIndividuals);
    ax.i1 = std::move(a);
    ax.i2 = std::move(b);
    return ax;
}

Axiom Axiom::role_inclusion(RoleExpr sub, RoleExpr sup) {
    auto ax = make(AxiomKind::RoleInclusion);
    ax.r1 = std::move(sub);
    ax.r2 = std::move(sup);
    return ax;
}

Axiom Axiom::role_equivalence(RoleExpr lhs, RoleExpr rhs) {
    auto ax = make(AxiomKind::RoleEquivalence);
    ax.r1 = std::move(lhs);
    ax.r2 = std::move(rhs);
    return ax;
}

Axiom Axiom::complex_role_inclusion(std::vector<RoleExpr> chain, RoleExpr sup) {
    if (chain.size() < 2) throw std::invalid_argument("role chain needs length >= 2");
    // r o r <= r is transitivity in chain clothing.
    if (chain.size() == 2 && chain[0] == sup && chain[1] == sup) {
        return transitive_role(sup);
    }
    auto ax = make(AxiomKind::ComplexRoleInclusion);
    ax.chain = std::move(chain);
    ax.r2 = std::move(sup);
    return ax;
}

Axiom Axiom::transitive_role(RoleExpr r) {
    auto ax = make(AxiomKind::TransitiveRole);
    ax.r1 = r.is_inverse() ? r.inverse() : std::move(r); // Trans(r-) is Trans(r)
    return ax;
}

Axiom Axiom::disjoint_roles(RoleExpr r, RoleExpr s) {
    auto ax = make(AxiomKind::DisjointRoles);
    ax.r1 = std::move(r);
    ax.r2 = std::move(s);
    return ax;
}

Axiom Axiom::asymmetric_role(RoleExpr r) {
    auto ax = make(AxiomKind::AsymmetricRole);
    ax.r1 = std::move(r);
    return ax;
}

Axiom Axiom::reflexive_role(RoleExpr r) {
    auto ax = make(AxiomKind::ReflexiveRole);
    ax.r1 = std::move(r);
    return ax;
}

Axiom Axiom::irreflexive_role(RoleExpr r) {
    auto ax = make(AxiomKind::IrreflexiveRole);
    ax.r1 = std::move(r);
    return ax;
}

bool Axiom::is_tbox() const {
    switch (kind) {
    case AxiomKind::ConceptInclusion:
    case AxiomKind::ConceptEquivalence:
    case AxiomKind::RoleDomain:
    case AxiomKind::RoleRange:
        return true;
    default:
        return false;
    }
}

bool Axiom::is_abox() const {
    switch (kind) {
    case AxiomKind::ConceptAssertion:
    case AxiomKind::RoleAssertion:
    case AxiomKind::NegatedRoleAssertion:
    case AxiomKind::SameIndividual:
    case AxiomKind::DifferentIndividuals:
        return true;
    default:
        return false;
    }
}

bool Axiom::is_rbox() const { return !is_tbox() && !is_abox(); }

namespace {

int cmp_str(const std::string& a, const std::string& b) {
    int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int cmp_role(const RoleExpr& a, const RoleExpr& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    return cmp_str(a.name, b.name);
}

} // namespace

int compare(const Axiom& a, const Axiom& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (int c = compare(a.c1, b.c1)) return c;
    if (int c = compare(a.c2, b.c2)) return c;
    if (int c = cmp_role(a.r1, b.r1)) return c;
    if (int c = cmp_role(a.r2, b.r2)) return c;
    if (a.chain.size() != b.chain.size()) return a.chain.size() < b.chain.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.chain.size(); ++i) {
        if (int c = cmp_role(a.chain[i], b.chain[i])) return c;
    }
    if (int c = cmp_str(a.i1, b.i1)) return c;
    return cmp_str(a.i2, b.i2);
}

std::string to_string(const Axiom& ax) {
    switch (ax.kind) {
    case AxiomKind::ConceptInclusion:
        return to_string(ax.c1) + " SUBCLASS " + to_string(ax.c2) + ".";
    case AxiomKind::ConceptEquivalence:
        return to_string(ax.c1) + " EQUIV " + to_string(ax.c2) + ".";
    case AxiomKind::RoleDomain:
        return ax.r1.to_string() + " DOMAIN " + to_string(ax.c1) + ".";
    case AxiomKind::RoleRange:
        return ax.r1.to_string() + " RANGE " + to_string(ax.c1) + ".";
    case AxiomKind::ConceptAssertion:
        return ax.i1 + " : " + to_string(ax.c1) + ".";
    case AxiomKind::RoleAssertion:
        return ax.i1 + " " + ax.r1.to_string() + " " + ax.i2 + ".";
    case AxiomKind::NegatedRoleAssertion:
        return ax.i1 + " NOT " + ax.r1.to_string() + " " + ax.i2 + ".";
    case AxiomKind::SameIndividual:
        return ax.i1 + " SAME " + ax.i2 + ".";
    case AxiomKind::DifferentIndividuals:
        return ax.i1 + " DIFF " + ax.i2 + ".";
    case AxiomKind::RoleInclusion:
        return ax.r1.to_string() + " SUBROLE " + ax.r2.to_string() + ".";
    case AxiomKind::RoleEquivalence:
        return ax.r1.to_string() + " EQUIVROLE " + ax.r2.to_string() + ".";
    case AxiomKind::ComplexRoleInclusion: {
        std::string out;
        for (std::size_t i = 0; i < ax.chain.size(); ++i) {
            if (i) out += " o ";
            out += ax.chain[i].to_string();
        }
        return out + " SUBROLE " + ax.r2.to_string() + ".";
    }
    case AxiomKind::TransitiveRole:
        return "TRANS " + ax.r1.to_string() + ".";
    case AxiomKind::DisjointRoles:
        return "DIS " + ax.r1.to_string() + " " + ax.r2.to_string() + ".";
    case AxiomKind::AsymmetricRole:
        return "ASY " + ax.r1.to_string() + ".";
    case AxiomKind::ReflexiveRole:
        return "REF " + ax.r1.to_string() + ".";
    case AxiomKind::IrreflexiveRole:
        return "IRR " + ax.r1.to_string() + ".";
    }
    return "";
}

Atom Atom::concept_atom(std::string predicate, Term t) {
    Atom a;
    a.kind = Kind::Concept;
    a.predicate = std::move(predicate);
    a.terms = {std::move(t)};
    return a;
}

Atom Atom::role_atom(std::string predicate, Term s, Term o) {
    Atom a;
    a.kind = Kind::Role;
    a.predicate = std::move(predicate);
    a.terms = {std::move(s), std::move(o)};
    return a;
}

Atom Atom::non_dl_atom(std::string predicate, std::vector<Term> terms) {
    if (terms.empty() || terms.size() > 2) throw std::invalid_argument("atom arity must be 1 or 2");
    Atom a;
    a.kind = Kind::NonDl;
    a.predicate = std::move(predicate);
    a.terms = std::move(terms);
    return a;
}

std::string Atom::to_string() const {
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ", ";
        if (terms[i].is_variable()) out += "?";
        out += terms[i].name;
    }
    return out + ")";
}

std::string DlSafeRule::to_string() const {
    std::string out = head.to_string() + " <-";
    for (std::size_t i = 0; i < body.size(); ++i) {
        out += (i ? ", " : " ") + body[i].to_string();
    }
    return out + ".";
}

} // namespace tkb
