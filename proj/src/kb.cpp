#include "tkb/kb.hpp"

#include <algorithm>

#include "tkb/errors.hpp"

namespace tkb {

namespace {

void collect_concept_names(const ConceptPtr& c, Signature& sig) {
    if (!c) return;
    switch (c->kind()) {
    case ConceptKind::Atomic:
        sig.concepts.insert(c->name());
        break;
    case ConceptKind::Not:
        collect_concept_names(c->child(), sig);
        break;
    case ConceptKind::And:
    case ConceptKind::Or:
        for (const auto& a : c->args()) collect_concept_names(a, sig);
        break;
    case ConceptKind::Exists:
    case ConceptKind::ForAll:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
        if (!c->role().is_universal()) sig.roles.insert(c->role().name);
        collect_concept_names(c->filler(), sig);
        break;
    case ConceptKind::Self:
        if (!c->role().is_universal()) sig.roles.insert(c->role().name);
        break;
    case ConceptKind::Nominal:
        for (const auto& i : c->individuals()) sig.individuals.insert(i);
        break;
    default:
        break;
    }
}

void collect_role(const RoleExpr& r, Signature& sig) {
    if (!r.is_universal()) sig.roles.insert(r.name);
}

void collect_axiom(const Axiom& ax, Signature& sig) {
    collect_concept_names(ax.c1, sig);
    collect_concept_names(ax.c2, sig);
    for (const auto& r : ax.chain) collect_role(r, sig);
    switch (ax.kind) {
    case AxiomKind::ConceptInclusion:
    case AxiomKind::ConceptEquivalence:
        break;
    case AxiomKind::RoleDomain:
    case AxiomKind::RoleRange:
    case AxiomKind::TransitiveRole:
    case AxiomKind::AsymmetricRole:
    case AxiomKind::ReflexiveRole:
    case AxiomKind::IrreflexiveRole:
        collect_role(ax.r1, sig);
        break;
    case AxiomKind::ConceptAssertion:
        sig.individuals.insert(ax.i1);
        break;
    case AxiomKind::RoleAssertion:
    case AxiomKind::NegatedRoleAssertion:
        collect_role(ax.r1, sig);
        sig.individuals.insert(ax.i1);
        sig.individuals.insert(ax.i2);
        break;
    case AxiomKind::SameIndividual:
    case AxiomKind::DifferentIndividuals:
        sig.individuals.insert(ax.i1);
        sig.individuals.insert(ax.i2);
        break;
    case AxiomKind::RoleInclusion:
    case AxiomKind::RoleEquivalence:
    case AxiomKind::DisjointRoles:
        collect_role(ax.r1, sig);
        collect_role(ax.r2, sig);
        break;
    case AxiomKind::ComplexRoleInclusion:
        collect_role(ax.r2, sig);
        break;
    }
}

void check_disjoint(const std::set<std::string>& a, const std::set<std::string>& b,
                    const char* what_a, const char* what_b) {
    for (const auto& name : a) {
        if (b.count(name)) {
            throw Error("name collision: '" + name + "' used as both " + what_a + " and " +
                        what_b);
        }
    }
}

} // namespace

KnowledgeBase::KnowledgeBase(std::vector<Axiom> axioms, std::vector<DlSafeRule> rules) {
    for (auto& ax : axioms) {
        auto& box = ax.is_tbox() ? tbox_ : (ax.is_abox() ? abox_ : rbox_);
        if (std::find(box.begin(), box.end(), ax) == box.end()) box.push_back(std::move(ax));
    }

    for (const auto& box : {&tbox_, &abox_, &rbox_}) {
        for (const auto& ax : *box) collect_axiom(ax, signature_);
    }

    // Rule heads must be DL atoms, so an unknown head predicate declares a
    // concept or role by its arity. Every other atom classifies purely
    // against the signature; body-only predicates stay non-DL.
    for (const auto& rule : rules) {
        const Atom& head = rule.head;
        if (head.predicate == kGuardPredicate) {
            throw Error("'" + kGuardPredicate + "' is the reserved guard predicate");
        }
        if (signature_.concepts.count(head.predicate) || signature_.roles.count(head.predicate)) {
            continue;
        }
        if (head.terms.size() == 1) {
            signature_.concepts.insert(head.predicate);
        } else {
            signature_.roles.insert(head.predicate);
        }
    }

    auto classify = [&](Atom atom) {
        const bool is_concept = signature_.concepts.count(atom.predicate) > 0;
        const bool is_role = signature_.roles.count(atom.predicate) > 0;
        if (is_concept) {
            if (atom.terms.size() != 1) {
                throw Error("arity error: concept '" + atom.predicate + "' used with " +
                            std::to_string(atom.terms.size()) + " arguments");
            }
            atom.kind = Atom::Kind::Concept;
        } else if (is_role) {
            if (atom.terms.size() != 2) {
                throw Error("arity error: role '" + atom.predicate + "' used with " +
                            std::to_string(atom.terms.size()) + " arguments");
            }
            atom.kind = Atom::Kind::Role;
        } else {
            atom.kind = Atom::Kind::NonDl;
            if (atom.predicate != kGuardPredicate) {
                signature_.non_dl_predicates.insert(atom.predicate);
            }
        }
        for (const auto& t : atom.terms) {
            if (!t.is_variable()) signature_.individuals.insert(t.name);
        }
        return atom;
    };
    for (auto& rule : rules) {
        DlSafeRule fixed;
        fixed.head = classify(rule.head);
        if (!fixed.head.is_dl()) {
            throw Error("rule head '" + rule.head.predicate + "' must be a concept or role atom");
        }
        for (auto& atom : rule.body) fixed.body.push_back(classify(std::move(atom)));
        rules_.push_back(std::move(fixed));
    }

    for (const char* reserved : {"O"}) {
        if (signature_.concepts.count(reserved) || signature_.roles.count(reserved) ||
            signature_.individuals.count(reserved)) {
            throw Error(std::string("'") + reserved + "' is reserved for the rule guard predicate");
        }
    }
    check_disjoint(signature_.concepts, signature_.roles, "concept", "role");
    check_disjoint(signature_.concepts, signature_.individuals, "concept", "individual");
    check_disjoint(signature_.roles, signature_.individuals, "role", "individual");
    check_disjoint(signature_.non_dl_predicates, signature_.concepts, "non-DL predicate", "concept");
    check_disjoint(signature_.non_dl_predicates, signature_.roles, "non-DL predicate", "role");
    check_disjoint(signature_.non_dl_predicates, signature_.individuals, "non-DL predicate",
                   "individual");
}

std::vector<Axiom> KnowledgeBase::all_axioms() const {
    std::vector<Axiom> out;
    out.reserve(tbox_.size() + abox_.size() + rbox_.size());
    out.insert(out.end(), tbox_.begin(), tbox_.end());
    out.insert(out.end(), abox_.begin(), abox_.end());
    out.insert(out.end(), rbox_.begin(), rbox_.end());
    return out;
}

bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    auto as_set = [](const std::vector<Axiom>& v) { return std::set<Axiom>(v.begin(), v.end()); };
    return as_set(a.tbox_) == as_set(b.tbox_) && as_set(a.abox_) == as_set(b.abox_) &&
           as_set(a.rbox_) == as_set(b.rbox_) && a.rules_ == b.rules_;
}

Signature signature_of(const KnowledgeBase& kb) {
    Signature sig;
    for (const auto& ax : kb.all_axioms()) collect_axiom(ax, sig);
    for (const auto& rule : kb.rules()) {
        auto collect_atom = [&](const Atom& atom) {
            switch (atom.kind) {
            case Atom::Kind::Concept: sig.concepts.insert(atom.predicate); break;
            case Atom::Kind::Role: sig.roles.insert(atom.predicate); break;
            case Atom::Kind::NonDl:
                if (atom.predicate != kGuardPredicate) sig.non_dl_predicates.insert(atom.predicate);
                break;
            }
            for (const auto& t : atom.terms) {
                if (!t.is_variable()) sig.individuals.insert(t.name);
            }
        };
        collect_atom(rule.head);
        for (const auto& atom : rule.body) collect_atom(atom);
    }
    return sig;
}

} // namespace tkb
