#include "tkb/normalize.hpp"

#include <algorithm>
#include <functional>

#include "tkb/errors.hpp"

namespace tkb {

namespace {

ConceptPtr nnf_impl(const ConceptPtr& c, bool negated);

ConceptPtr nnf_args(const std::vector<ConceptPtr>& args, bool negated, bool conj) {
    std::vector<ConceptPtr> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(nnf_impl(a, negated));
    return conj ? conjunction(std::move(out)) : disjunction(std::move(out));
}

ConceptPtr nnf_impl(const ConceptPtr& c, bool negated) {
    switch (c->kind()) {
    case ConceptKind::Atomic:
        return negated ? negation(c) : c;
    case ConceptKind::Top:
        return negated ? bottom() : top();
    case ConceptKind::Bottom:
        return negated ? top() : bottom();
    case ConceptKind::Not:
        return nnf_impl(c->child(), !negated);
    case ConceptKind::And:
        // De Morgan: the conjunction flips to a disjunction under negation.
        return nnf_args(c->args(), negated, !negated);
    case ConceptKind::Or:
        return nnf_args(c->args(), negated, negated);
    case ConceptKind::Exists:
        return negated ? forall(c->role(), nnf_impl(c->filler(), true))
                       : exists(c->role(), nnf_impl(c->filler(), false));
    case ConceptKind::ForAll:
        return negated ? exists(c->role(), nnf_impl(c->filler(), true))
                       : forall(c->role(), nnf_impl(c->filler(), false));
    case ConceptKind::AtLeast:
        if (negated) {
            if (c->cardinality() == 0) return bottom(); // nothing falsifies ">= 0"
            return at_most(c->cardinality() - 1, c->role(), nnf_impl(c->filler(), false));
        }
        return at_least(c->cardinality(), c->role(), nnf_impl(c->filler(), false));
    case ConceptKind::AtMost:
        if (negated) {
            return at_least(c->cardinality() + 1, c->role(), nnf_impl(c->filler(), false));
        }
        return at_most(c->cardinality(), c->role(), nnf_impl(c->filler(), false));
    case ConceptKind::Self:
    case ConceptKind::Nominal:
        return negated ? negation(c) : c;
    }
    return c;
}

} // namespace

ConceptPtr nnf(const ConceptPtr& c) { return nnf_impl(c, false); }

ConceptPtr nnf_complement(const ConceptPtr& c) { return nnf_impl(c, true); }

namespace {

// Every named role of the signature plus its inverse.
std::vector<RoleExpr> role_universe(const KnowledgeBase& kb) {
    std::vector<RoleExpr> out;
    for (const auto& name : kb.signature().roles) {
        out.push_back(RoleExpr::named(name));
        out.push_back(RoleExpr::inverse_of(name));
    }
    return out;
}

} // namespace

RoleClosure role_closure(const KnowledgeBase& kb) {
    RoleClosure closure;
    const auto universe = role_universe(kb);
    for (const auto& r : universe) closure.supers[r].insert(r);

    auto add_pair = [&](const RoleExpr& sub, const RoleExpr& sup) {
        if (sub.is_universal() || sup.is_universal()) return;
        closure.supers[sub].insert(sup);
        closure.supers[sub.inverse()].insert(sup.inverse());
    };
    for (const auto& ax : kb.rbox()) {
        if (ax.kind == AxiomKind::RoleInclusion) {
            add_pair(ax.r1, ax.r2);
        } else if (ax.kind == AxiomKind::RoleEquivalence) {
            add_pair(ax.r1, ax.r2);
            add_pair(ax.r2, ax.r1);
        }
    }

    // Transitive closure of the subsumption relation.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [sub, sups] : closure.supers) {
            std::set<RoleExpr> grow = sups;
            for (const auto& mid : sups) {
                auto it = closure.supers.find(mid);
                if (it == closure.supers.end()) continue;
                grow.insert(it->second.begin(), it->second.end());
            }
            if (grow.size() != sups.size()) {
                sups = std::move(grow);
                changed = true;
            }
        }
    }

    // A declared transitive role is transitive in both orientations, and a
    // chain r o r <= r is transitivity in disguise.
    auto mark_transitive = [&](const RoleExpr& r) {
        if (r.is_universal()) return;
        closure.transitive.insert(r);
        closure.transitive.insert(r.inverse());
    };
    for (const auto& ax : kb.rbox()) {
        if (ax.kind == AxiomKind::TransitiveRole) mark_transitive(ax.r1);
        if (ax.kind == AxiomKind::ComplexRoleInclusion && ax.chain.size() == 2 &&
            ax.chain[0] == ax.r2 && ax.chain[1] == ax.r2) {
            mark_transitive(ax.r2);
        }
    }

    // Non-simple: any superrole of a composition (a chain of length >= 2 or a
    // transitive role), in either orientation.
    std::set<RoleExpr> non_simple;
    auto mark_non_simple_up = [&](const RoleExpr& base) {
        for (const auto& r : universe) {
            if (closure.subsumed(base, r)) {
                non_simple.insert(r);
                non_simple.insert(r.inverse());
            }
        }
    };
    for (const auto& ax : kb.rbox()) {
        if (ax.kind == AxiomKind::ComplexRoleInclusion && !ax.r2.is_universal()) {
            mark_non_simple_up(ax.r2);
        }
    }
    for (const auto& t : closure.transitive) mark_non_simple_up(t);
    for (const auto& r : universe) {
        if (!non_simple.count(r)) closure.simple.insert(r);
    }
    return closure;
}

namespace {

// Chains with an inverse superrole normalize by inverting both sides:
// R1 o ... o Rn <= INV(s) becomes INV(Rn) o ... o INV(R1) <= s.
void orient_chain(std::vector<RoleExpr>& chain, RoleExpr& sup) {
    if (!sup.is_inverse()) return;
    sup = sup.inverse();
    std::reverse(chain.begin(), chain.end());
    for (auto& r : chain) r = r.inverse();
}

} // namespace

RegularityResult check_regularity(const std::vector<Axiom>& rbox) {
    RegularityResult result;
    // Precedence constraints "lhs < rhs" with the axiom that demanded each.
    std::map<std::string, std::map<std::string, std::string>> below; // rhs -> lhs -> axiom
    std::set<std::string> names;

    for (const auto& ax : rbox) {
        if (ax.kind != AxiomKind::ComplexRoleInclusion) continue;
        std::vector<RoleExpr> chain = ax.chain;
        RoleExpr sup = ax.r2;
        if (sup.is_universal()) {
            result.offending.push_back(to_string(ax) + " (universal superrole)");
            return result;
        }
        orient_chain(chain, sup);
        const std::string& head = sup.name;
        names.insert(head);

        const bool transitivity_form =
            chain.size() == 2 && chain[0] == sup && chain[1] == sup;
        if (transitivity_form) continue;

        // Orders compare underlying names; an inverse occurrence of the
        // superrole counts as the superrole itself.
        auto is_head = [&](const RoleExpr& r) { return !r.is_universal() && r.name == head; };
        std::size_t begin = 0, end = chain.size();
        if (is_head(chain.front()) && is_head(chain.back())) {
            result.offending.push_back(to_string(ax) + " (superrole at both chain ends)");
            return result;
        }
        if (is_head(chain.front())) begin = 1;
        else if (is_head(chain.back())) end = chain.size() - 1;
        for (std::size_t i = begin; i < end; ++i) {
            if (chain[i].is_universal()) continue;
            if (is_head(chain[i])) {
                result.offending.push_back(to_string(ax) + " (superrole inside the chain)");
                return result;
            }
            names.insert(chain[i].name);
            below[head].emplace(chain[i].name, to_string(ax));
        }
    }

    // A witnessing strict order exists iff the constraint digraph is acyclic;
    // roles are visited in lexicographic order so the witness is stable.
    std::map<std::string, int> state; // 0 unvisited, 1 on stack, 2 done
    std::map<std::string, int> rank;
    std::vector<std::string> stack;
    bool cyclic = false;

    std::function<int(const std::string&)> visit = [&](const std::string& name) -> int {
        if (cyclic) return 0;
        if (state[name] == 2) return rank[name];
        if (state[name] == 1) { // constraint cycle: report the axioms on it
            cyclic = true;
            auto it = std::find(stack.begin(), stack.end(), name);
            for (auto j = it; j != stack.end() && std::next(j) != stack.end(); ++j) {
                result.offending.push_back(below[*j][*std::next(j)]);
            }
            if (it != stack.end()) result.offending.push_back(below[stack.back()][name]);
            return 0;
        }
        state[name] = 1;
        stack.push_back(name);
        int r = 0;
        auto it = below.find(name);
        if (it != below.end()) {
            for (const auto& [lhs, axiom] : it->second) {
                (void)axiom;
                r = std::max(r, visit(lhs) + 1);
                if (cyclic) return 0;
            }
        }
        stack.pop_back();
        state[name] = 2;
        rank[name] = r;
        return r;
    };
    for (const auto& name : names) {
        visit(name);
        if (cyclic) return result;
    }
    result.regular = true;
    result.precedence = std::move(rank);
    return result;
}

namespace {

// x, y, z, x3, x4, ... used for the chain-rule variables.
std::string chain_variable(std::size_t i) {
    static const char* first[] = {"x", "y", "z"};
    if (i < 3) return first[i];
    return "x" + std::to_string(i);
}

Atom role_body_atom(const RoleExpr& r, Term from, Term to) {
    if (r.is_universal()) {
        throw UnsupportedConstructError("universal role cannot occur in a compiled chain");
    }
    if (r.is_inverse()) return Atom::role_atom(r.name, std::move(to), std::move(from));
    return Atom::role_atom(r.name, std::move(from), std::move(to));
}

void append_guards(DlSafeRule& rule) {
    std::vector<std::string> vars;
    auto note = [&](const Atom& atom) {
        for (const auto& t : atom.terms) {
            if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end()) {
                vars.push_back(t.name);
            }
        }
    };
    for (const auto& a : rule.body) note(a);
    note(rule.head);
    for (const auto& v : vars) {
        rule.body.push_back(Atom::non_dl_atom(kGuardPredicate, {Term::variable(v)}));
    }
}

} // namespace

std::vector<DlSafeRule> compile_chains_to_rules(const KnowledgeBase& kb) {
    std::vector<DlSafeRule> rules;
    for (const auto& ax : kb.rbox()) {
        switch (ax.kind) {
        case AxiomKind::ComplexRoleInclusion: {
            std::vector<RoleExpr> chain = ax.chain;
            RoleExpr sup = ax.r2;
            orient_chain(chain, sup);
            DlSafeRule rule;
            rule.head = role_body_atom(sup, Term::variable(chain_variable(0)),
                                       Term::variable(chain_variable(chain.size())));
            for (std::size_t i = 0; i < chain.size(); ++i) {
                rule.body.push_back(role_body_atom(chain[i], Term::variable(chain_variable(i)),
                                                   Term::variable(chain_variable(i + 1))));
            }
            for (std::size_t i = 0; i <= chain.size(); ++i) { // guards in chain order
                rule.body.push_back(
                    Atom::non_dl_atom(kGuardPredicate, {Term::variable(chain_variable(i))}));
            }
            rules.push_back(std::move(rule));
            break;
        }
        case AxiomKind::TransitiveRole: {
            RoleExpr r = ax.r1.is_inverse() ? ax.r1.inverse() : ax.r1;
            if (r.is_universal()) {
                throw UnsupportedConstructError("universal role cannot be declared transitive");
            }
            DlSafeRule rule;
            rule.head = Atom::role_atom(r.name, Term::variable("x"), Term::variable("z"));
            rule.body.push_back(Atom::role_atom(r.name, Term::variable("x"), Term::variable("y")));
            rule.body.push_back(Atom::role_atom(r.name, Term::variable("y"), Term::variable("z")));
            append_guards(rule);
            rules.push_back(std::move(rule));
            break;
        }
        case AxiomKind::RoleInclusion:
        case AxiomKind::RoleEquivalence: {
            auto emit = [&](const RoleExpr& sub, const RoleExpr& sup) {
                DlSafeRule rule;
                rule.head = role_body_atom(sup, Term::variable("x"), Term::variable("y"));
                rule.body.push_back(role_body_atom(sub, Term::variable("x"), Term::variable("y")));
                append_guards(rule);
                rules.push_back(std::move(rule));
            };
            emit(ax.r1, ax.r2);
            if (ax.kind == AxiomKind::RoleEquivalence) emit(ax.r2, ax.r1);
            break;
        }
        default:
            break;
        }
    }
    return rules;
}

std::vector<ConceptPtr> gci_disjunctions(const std::vector<Axiom>& tbox) {
    std::vector<ConceptPtr> out;
    auto add = [&](const ConceptPtr& sub, const ConceptPtr& sup) {
        out.push_back(disjunction({nnf_complement(sub), nnf(sup)}));
    };
    for (const auto& ax : tbox) {
        switch (ax.kind) {
        case AxiomKind::ConceptInclusion:
            add(ax.c1, ax.c2);
            break;
        case AxiomKind::ConceptEquivalence:
            add(ax.c1, ax.c2);
            add(ax.c2, ax.c1);
            break;
        case AxiomKind::RoleDomain:
            add(exists(ax.r1, top()), ax.c1);
            break;
        case AxiomKind::RoleRange:
            add(top(), forall(ax.r1, ax.c1));
            break;
        default:
            break;
        }
    }
    return out;
}

} // namespace tkb
