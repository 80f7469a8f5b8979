#include "tkb/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <vector>

#include "tkb/errors.hpp"
#include "tkb/normalize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tkb {

namespace {

// Kleene three-valued logic: -1 false, 0 unknown, +1 true.
using Tri = int;

Tri tri_not(Tri t) { return -t; }
Tri tri_and(Tri a, Tri b) { return std::min(a, b); }
Tri tri_or(Tri a, Tri b) { return std::max(a, b); }

// Search state: a partial interpretation plus name indexes.
struct Space {
    int d = 1;
    std::vector<std::string> concept_names; // sorted
    std::vector<std::string> role_names;    // sorted
    std::vector<std::string> ind_names;     // sorted
    std::map<std::string, int> concept_idx, role_idx, ind_idx;

    std::vector<Tri> concept_bits; // [c * d + e]
    std::vector<Tri> role_bits;    // [r * d * d + i * d + j]
    std::vector<int> ind_elem;     // -1 unassigned

    explicit Space(const KnowledgeBase& kb, int domain) : d(domain) {
        const auto& sig = kb.signature();
        concept_names.assign(sig.concepts.begin(), sig.concepts.end());
        role_names.assign(sig.roles.begin(), sig.roles.end());
        ind_names.assign(sig.individuals.begin(), sig.individuals.end());
        for (std::size_t i = 0; i < concept_names.size(); ++i) concept_idx[concept_names[i]] = i;
        for (std::size_t i = 0; i < role_names.size(); ++i) role_idx[role_names[i]] = i;
        for (std::size_t i = 0; i < ind_names.size(); ++i) ind_idx[ind_names[i]] = i;
        concept_bits.assign(concept_names.size() * d, 0);
        role_bits.assign(role_names.size() * d * d, 0);
        ind_elem.assign(ind_names.size(), -1);
    }

    Tri concept_bit(int c, int e) const { return concept_bits[c * d + e]; }
    Tri role_bit(int r, int i, int j) const { return role_bits[r * d * d + i * d + j]; }

    Tri role_pair(const RoleExpr& role, int i, int j) const {
        if (role.is_universal()) return 1;
        auto it = role_idx.find(role.name);
        if (it == role_idx.end()) return -1; // unknown role: empty extension
        return role.is_inverse() ? role_bit(it->second, j, i) : role_bit(it->second, i, j);
    }

    Tri concept_at(const ConceptPtr& c, int e) const {
        switch (c->kind()) {
        case ConceptKind::Atomic: {
            auto it = concept_idx.find(c->name());
            return it == concept_idx.end() ? -1 : concept_bit(it->second, e);
        }
        case ConceptKind::Top: return 1;
        case ConceptKind::Bottom: return -1;
        case ConceptKind::Not: return tri_not(concept_at(c->child(), e));
        case ConceptKind::And: {
            Tri acc = 1;
            for (const auto& a : c->args()) {
                acc = tri_and(acc, concept_at(a, e));
                if (acc == -1) break;
            }
            return acc;
        }
        case ConceptKind::Or: {
            Tri acc = -1;
            for (const auto& a : c->args()) {
                acc = tri_or(acc, concept_at(a, e));
                if (acc == 1) break;
            }
            return acc;
        }
        case ConceptKind::Exists: {
            Tri acc = -1;
            for (int f = 0; f < d; ++f) {
                acc = tri_or(acc, tri_and(role_pair(c->role(), e, f), concept_at(c->filler(), f)));
                if (acc == 1) break;
            }
            return acc;
        }
        case ConceptKind::ForAll: {
            Tri acc = 1;
            for (int f = 0; f < d; ++f) {
                acc = tri_and(acc, tri_or(tri_not(role_pair(c->role(), e, f)),
                                          concept_at(c->filler(), f)));
                if (acc == -1) break;
            }
            return acc;
        }
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: {
            int definite = 0, possible = 0;
            for (int f = 0; f < d; ++f) {
                Tri t = tri_and(role_pair(c->role(), e, f), concept_at(c->filler(), f));
                if (t == 1) ++definite;
                if (t >= 0) ++possible;
            }
            const int n = static_cast<int>(c->cardinality());
            if (c->kind() == ConceptKind::AtLeast) {
                if (definite >= n) return 1;
                if (possible < n) return -1;
                return 0;
            }
            if (definite > n) return -1;
            if (possible <= n) return 1;
            return 0;
        }
        case ConceptKind::Self:
            return role_pair(c->role(), e, e);
        case ConceptKind::Nominal: {
            bool any_unassigned = false;
            for (const auto& name : c->individuals()) {
                auto it = ind_idx.find(name);
                const int elem = it == ind_idx.end() ? -1 : ind_elem[it->second];
                if (elem == e) return 1;
                if (elem < 0) any_unassigned = true;
            }
            return any_unassigned ? 0 : -1;
        }
        }
        return 0;
    }

    Tri individual_at(const std::string& name) const {
        auto it = ind_idx.find(name);
        return it == ind_idx.end() ? -1 : ind_elem[it->second];
    }

    // Three-valued truth of one axiom over the partial interpretation.
    Tri axiom_tri(const Axiom& ax) const {
        switch (ax.kind) {
        case AxiomKind::ConceptInclusion: {
            Tri acc = 1;
            for (int e = 0; e < d && acc > -1; ++e) {
                acc = tri_and(acc, tri_or(tri_not(concept_at(ax.c1, e)), concept_at(ax.c2, e)));
            }
            return acc;
        }
        case AxiomKind::ConceptEquivalence: {
            Tri acc = 1;
            for (int e = 0; e < d && acc > -1; ++e) {
                Tri a = concept_at(ax.c1, e), b = concept_at(ax.c2, e);
                acc = tri_and(acc, tri_and(tri_or(tri_not(a), b), tri_or(tri_not(b), a)));
            }
            return acc;
        }
        case AxiomKind::RoleDomain:
        case AxiomKind::RoleRange: {
            Tri acc = 1;
            for (int i = 0; i < d && acc > -1; ++i) {
                for (int j = 0; j < d && acc > -1; ++j) {
                    const int target = ax.kind == AxiomKind::RoleDomain ? i : j;
                    acc = tri_and(acc, tri_or(tri_not(role_pair(ax.r1, i, j)),
                                              concept_at(ax.c1, target)));
                }
            }
            return acc;
        }
        case AxiomKind::ConceptAssertion: {
            int e = individual_at(ax.i1);
            return e < 0 ? 0 : concept_at(ax.c1, e);
        }
        case AxiomKind::RoleAssertion:
        case AxiomKind::NegatedRoleAssertion: {
            int a = individual_at(ax.i1), b = individual_at(ax.i2);
            if (a < 0 || b < 0) return 0;
            Tri t = role_pair(ax.r1, a, b);
            return ax.kind == AxiomKind::RoleAssertion ? t : tri_not(t);
        }
        case AxiomKind::SameIndividual:
        case AxiomKind::DifferentIndividuals: {
            int a = individual_at(ax.i1), b = individual_at(ax.i2);
            if (a < 0 || b < 0) return 0;
            Tri same = a == b ? 1 : -1;
            return ax.kind == AxiomKind::SameIndividual ? same : tri_not(same);
        }
        case AxiomKind::RoleInclusion:
        case AxiomKind::RoleEquivalence: {
            Tri acc = 1;
            for (int i = 0; i < d && acc > -1; ++i) {
                for (int j = 0; j < d && acc > -1; ++j) {
                    Tri a = role_pair(ax.r1, i, j), b = role_pair(ax.r2, i, j);
                    acc = tri_and(acc, tri_or(tri_not(a), b));
                    if (ax.kind == AxiomKind::RoleEquivalence) {
                        acc = tri_and(acc, tri_or(tri_not(b), a));
                    }
                }
            }
            return acc;
        }
        case AxiomKind::ComplexRoleInclusion: {
            // Three-valued relation composition, then containment in r2.
            std::vector<Tri> comp(d * d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) comp[i * d + j] = role_pair(ax.chain[0], i, j);
            }
            for (std::size_t k = 1; k < ax.chain.size(); ++k) {
                std::vector<Tri> next(d * d, -1);
                for (int i = 0; i < d; ++i) {
                    for (int j = 0; j < d; ++j) {
                        Tri acc = -1;
                        for (int m = 0; m < d; ++m) {
                            acc = tri_or(acc, tri_and(comp[i * d + m],
                                                      role_pair(ax.chain[k], m, j)));
                            if (acc == 1) break;
                        }
                        next[i * d + j] = acc;
                    }
                }
                comp = std::move(next);
            }
            Tri acc = 1;
            for (int i = 0; i < d && acc > -1; ++i) {
                for (int j = 0; j < d && acc > -1; ++j) {
                    acc = tri_and(acc, tri_or(tri_not(comp[i * d + j]), role_pair(ax.r2, i, j)));
                }
            }
            return acc;
        }
        case AxiomKind::TransitiveRole: {
            Tri acc = 1;
            for (int i = 0; i < d && acc > -1; ++i) {
                for (int m = 0; m < d && acc > -1; ++m) {
                    for (int j = 0; j < d && acc > -1; ++j) {
                        Tri step = tri_and(role_pair(ax.r1, i, m), role_pair(ax.r1, m, j));
                        acc = tri_and(acc, tri_or(tri_not(step), role_pair(ax.r1, i, j)));
                    }
                }
            }
            return acc;
        }
        case AxiomKind::DisjointRoles: {
            Tri acc = 1;
            for (int i = 0; i < d && acc > -1; ++i) {
                for (int j = 0; j < d && acc > -1; ++j) {
                    acc = tri_and(acc, tri_not(tri_and(role_pair(ax.r1, i, j),
                                                       role_pair(ax.r2, i, j))));
                }
            }
            return acc;
        }
        case AxiomKind::AsymmetricRole: {
            Tri acc = 1;
            for (int i = 0; i < d && acc > -1; ++i) {
                for (int j = 0; j < d && acc > -1; ++j) {
                    acc = tri_and(acc, tri_not(tri_and(role_pair(ax.r1, i, j),
                                                       role_pair(ax.r1, j, i))));
                }
            }
            return acc;
        }
        case AxiomKind::ReflexiveRole:
        case AxiomKind::IrreflexiveRole: {
            Tri acc = 1;
            for (int e = 0; e < d && acc > -1; ++e) {
                Tri loop = role_pair(ax.r1, e, e);
                acc = tri_and(acc, ax.kind == AxiomKind::ReflexiveRole ? loop : tri_not(loop));
            }
            return acc;
        }
        }
        return 0;
    }

    Tri atom_tri(const Atom& atom, const std::vector<int>& binding,
                 const std::vector<std::string>& vars) const {
        auto term_elem = [&](const Term& t) -> int {
            if (t.is_variable()) {
                auto it = std::find(vars.begin(), vars.end(), t.name);
                return binding[it - vars.begin()];
            }
            return individual_at(t.name);
        };
        switch (atom.kind) {
        case Atom::Kind::Concept: {
            int e = term_elem(atom.terms[0]);
            auto it = concept_idx.find(atom.predicate);
            if (e < 0) return 0;
            return it == concept_idx.end() ? -1 : concept_bit(it->second, e);
        }
        case Atom::Kind::Role: {
            int a = term_elem(atom.terms[0]), b = term_elem(atom.terms[1]);
            if (a < 0 || b < 0) return 0;
            return role_pair(RoleExpr::named(atom.predicate), a, b);
        }
        case Atom::Kind::NonDl:
            // Guard atoms hold for named individuals (the binding domain);
            // other non-DL predicates have empty extensions.
            return atom.predicate == kGuardPredicate ? 1 : -1;
        }
        return 0;
    }

    // DL-safe rule: for every binding of variables to named individuals,
    // body implies head.
    Tri rule_tri(const DlSafeRule& rule) const {
        std::vector<std::string> vars;
        auto note = [&](const Atom& a) {
            for (const auto& t : a.terms) {
                if (t.is_variable() &&
                    std::find(vars.begin(), vars.end(), t.name) == vars.end()) {
                    vars.push_back(t.name);
                }
            }
        };
        note(rule.head);
        for (const auto& a : rule.body) note(a);

        const std::size_t n_inds = ind_names.size();
        if (!vars.empty() && n_inds == 0) return 1; // no bindings to check

        std::vector<int> choice(vars.size(), 0);
        Tri acc = 1;
        while (true) {
            std::vector<int> binding(vars.size());
            for (std::size_t v = 0; v < vars.size(); ++v) binding[v] = ind_elem[choice[v]];
            Tri body = 1;
            for (const auto& a : rule.body) {
                body = tri_and(body, atom_tri(a, binding, vars));
                if (body == -1) break;
            }
            acc = tri_and(acc, tri_or(tri_not(body), atom_tri(rule.head, binding, vars)));
            if (acc == -1) return -1;
            std::size_t v = 0;
            for (; v < vars.size(); ++v) {
                if (++choice[v] < static_cast<int>(n_inds)) break;
                choice[v] = 0;
            }
            if (v == vars.size()) break;
        }
        return acc;
    }

    Interpretation snapshot() const {
        Interpretation interp;
        interp.domain_size = d;
        for (std::size_t c = 0; c < concept_names.size(); ++c) {
            std::uint32_t mask = 0;
            for (int e = 0; e < d; ++e) {
                if (concept_bit(c, e) == 1) mask |= 1u << e;
            }
            interp.concepts[concept_names[c]] = mask;
        }
        for (std::size_t r = 0; r < role_names.size(); ++r) {
            std::uint64_t mask = 0;
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    if (role_bit(r, i, j) == 1) mask |= std::uint64_t(1) << (i * d + j);
                }
            }
            interp.roles[role_names[r]] = mask;
        }
        for (std::size_t i = 0; i < ind_names.size(); ++i) {
            interp.individuals[ind_names[i]] = ind_elem[i];
        }
        return interp;
    }
};

struct Decision {
    enum class Kind : std::uint8_t { Individual, ConceptBit, RoleBit } kind;
    int index;    // individual index, or flat bit index
    int choices;  // d for individuals, 2 for bits
};

// Decision order: individual assignments first, then all concept membership
// bits element by element, then role bits in growing-submatrix blocks. The
// concepts-before-roles split lets concept-level refutations fire before any
// role enumeration; the submatrix blocks keep role-coupled constraints among
// the first elements decidable early.
std::vector<Decision> decision_order(const Space& space) {
    std::vector<Decision> order;
    for (std::size_t i = 0; i < space.ind_names.size(); ++i) {
        order.push_back({Decision::Kind::Individual, static_cast<int>(i), space.d});
    }
    const int d = space.d;
    const int concepts = static_cast<int>(space.concept_names.size());
    const int roles = static_cast<int>(space.role_names.size());
    for (int e = 0; e < d; ++e) {
        for (int c = 0; c < concepts; ++c) {
            order.push_back({Decision::Kind::ConceptBit, c * d + e, 2});
        }
    }
    for (int e = 0; e < d; ++e) {
        for (int r = 0; r < roles; ++r) {
            for (int i = 0; i < e; ++i) {
                order.push_back({Decision::Kind::RoleBit, r * d * d + i * d + e, 2});
            }
            for (int j = 0; j <= e; ++j) {
                order.push_back({Decision::Kind::RoleBit, r * d * d + e * d + j, 2});
            }
        }
    }
    return order;
}

// Canonical individual placement: the first individual maps to element 0 and
// each later one to at most one past the largest element used so far. Every
// interpretation is isomorphic to one of this shape, so the restriction is
// harmless for satisfiability and removes a factorial amount of symmetry.
bool canonical_individual(const Space& space, int index, int value) {
    int max_used = -1;
    for (int i = 0; i < index; ++i) max_used = std::max(max_used, space.ind_elem[i]);
    return value <= max_used + 1;
}

void apply_decision(Space& space, const Decision& dec, int value) {
    switch (dec.kind) {
    case Decision::Kind::Individual: space.ind_elem[dec.index] = value; break;
    case Decision::Kind::ConceptBit: space.concept_bits[dec.index] = value ? 1 : -1; break;
    case Decision::Kind::RoleBit: space.role_bits[dec.index] = value ? 1 : -1; break;
    }
}

void undo_decision(Space& space, const Decision& dec) {
    switch (dec.kind) {
    case Decision::Kind::Individual: space.ind_elem[dec.index] = -1; break;
    case Decision::Kind::ConceptBit: space.concept_bits[dec.index] = 0; break;
    case Decision::Kind::RoleBit: space.role_bits[dec.index] = 0; break;
    }
}

// Which concept/role indexes one axiom or rule can read.
struct Cone {
    std::vector<char> concepts, roles;
};

// Where one axiom or rule reads a predicate in positive polarity, i.e. where
// making a bit true can help satisfy it. Role support is row/column-granular
// when the reading subject is a named individual.
struct Support {
    struct RoleSup {
        bool all = false;
        std::vector<int> row_inds; // individual indexes whose row is read
        std::vector<int> col_inds;
    };
    std::vector<char> concepts;
    std::vector<RoleSup> roles;
};

struct Searcher {
    const KnowledgeBase& kb;
    Space space;
    std::vector<Decision> order;
    std::vector<const Axiom*> axioms;
    std::vector<const DlSafeRule*> rules;
    std::vector<Cone> cones; // aligned with axioms then rules
    std::uint64_t steps = 0;
    std::uint64_t step_limit = 0;
    bool truncated = false;
    bool cone_restricted = true;

    Searcher(const KnowledgeBase& kb, int d, std::uint64_t limit)
        : kb(kb), space(kb, d), order(decision_order(space)), step_limit(limit) {
        // Conjunctive concept assertions split into one assertion per
        // conjunct (after NNF): same semantics, finer-grained settling.
        for (const Axiom& ax : kb.all_axioms()) {
            if (ax.kind == AxiomKind::ConceptAssertion) {
                const ConceptPtr normal = nnf(ax.c1);
                if (normal->kind() == ConceptKind::And) {
                    for (const auto& arg : normal->args()) {
                        all_axioms.push_back(Axiom::concept_assertion(arg, ax.i1));
                    }
                    continue;
                }
                all_axioms.push_back(Axiom::concept_assertion(normal, ax.i1));
                continue;
            }
            all_axioms.push_back(ax);
        }
        for (const auto& ax : all_axioms) axioms.push_back(&ax);
        for (const auto& rule : kb.rules()) rules.push_back(&rule);
        build_cones();
        build_supports();
        build_forced_specs();
        find_statically_unsupported();
    }

    std::vector<Axiom> all_axioms;

    // Assertions whose truth pins a single bit once individuals are placed:
    // atomic (possibly negated) concept assertions and (negated) role
    // assertions. Planting them up front spares the search from rediscovering
    // the ABox by enumeration.
    struct ForcedSpec {
        bool is_role = false;
        int pred_index = -1;
        int ind1 = -1, ind2 = -1;
        Tri value = 1;
    };
    std::vector<ForcedSpec> forced_specs;
    std::size_t ind_decisions = 0;

    void build_forced_specs() {
        ind_decisions = space.ind_names.size();
        for (const Axiom& ax : all_axioms) {
            switch (ax.kind) {
            case AxiomKind::ConceptAssertion: {
                const ConceptPtr* c = &ax.c1;
                Tri value = 1;
                if ((*c)->kind() == ConceptKind::Not) {
                    c = &(*c)->child();
                    value = -1;
                }
                if ((*c)->kind() != ConceptKind::Atomic) break;
                auto it = space.concept_idx.find((*c)->name());
                if (it == space.concept_idx.end()) break;
                forced_specs.push_back(
                    {false, it->second, space.ind_idx.at(ax.i1), -1, value});
                break;
            }
            case AxiomKind::RoleAssertion:
            case AxiomKind::NegatedRoleAssertion: {
                if (ax.r1.is_universal()) break;
                auto it = space.role_idx.find(ax.r1.name);
                if (it == space.role_idx.end()) break;
                forced_specs.push_back({true, it->second, space.ind_idx.at(ax.i1),
                                        space.ind_idx.at(ax.i2),
                                        ax.kind == AxiomKind::RoleAssertion ? 1 : -1});
                break;
            }
            default:
                break;
            }
        }
    }

    // Predicates with no positive reader anywhere can be emptied up front:
    // a model stays a model when their extensions are cleared.
    std::vector<char> statically_unsupported_concepts, statically_unsupported_roles;

    void find_statically_unsupported() {
        statically_unsupported_concepts.assign(space.concept_names.size(), 1);
        statically_unsupported_roles.assign(space.role_names.size(), 1);
        for (const auto& sup : supports) {
            for (std::size_t c = 0; c < sup.concepts.size(); ++c) {
                if (sup.concepts[c]) statically_unsupported_concepts[c] = 0;
            }
            for (std::size_t r = 0; r < sup.roles.size(); ++r) {
                if (sup.roles[r].all || !sup.roles[r].row_inds.empty() ||
                    !sup.roles[r].col_inds.empty()) {
                    statically_unsupported_roles[r] = 0;
                }
            }
        }
    }

    // Plants the forced bits; returns false on a direct contradiction.
    // Cells touched are appended to `undo` for rollback.
    bool apply_forced(std::vector<int>& undo_concepts, std::vector<int>& undo_roles) {
        const int d = space.d;
        if (cone_restricted) {
            for (std::size_t c = 0; c < statically_unsupported_concepts.size(); ++c) {
                if (!statically_unsupported_concepts[c]) continue;
                for (int e = 0; e < d; ++e) {
                    const int flat = static_cast<int>(c) * d + e;
                    if (space.concept_bits[flat] == 0) {
                        space.concept_bits[flat] = -1;
                        undo_concepts.push_back(flat);
                    }
                }
            }
            for (std::size_t r = 0; r < statically_unsupported_roles.size(); ++r) {
                if (!statically_unsupported_roles[r]) continue;
                for (int p = 0; p < d * d; ++p) {
                    const int flat = static_cast<int>(r) * d * d + p;
                    if (space.role_bits[flat] == 0) {
                        space.role_bits[flat] = -1;
                        undo_roles.push_back(flat);
                    }
                }
            }
        }
        for (const auto& spec : forced_specs) {
            const int e1 = space.ind_elem[spec.ind1];
            if (e1 < 0) return true; // individuals not fully placed yet
            int flat;
            Tri* cell;
            if (spec.is_role) {
                const int e2 = space.ind_elem[spec.ind2];
                if (e2 < 0) return true;
                flat = spec.pred_index * d * d + e1 * d + e2;
                cell = &space.role_bits[flat];
            } else {
                flat = spec.pred_index * d + e1;
                cell = &space.concept_bits[flat];
            }
            if (*cell == 0) {
                *cell = spec.value;
                (spec.is_role ? undo_roles : undo_concepts).push_back(flat);
            } else if (*cell != spec.value) {
                return false;
            }
        }
        return true;
    }

    void undo_forced(const std::vector<int>& undo_concepts, const std::vector<int>& undo_roles) {
        for (int flat : undo_concepts) space.concept_bits[flat] = 0;
        for (int flat : undo_roles) space.role_bits[flat] = 0;
    }

    bool decision_assigned(const Decision& dec) const {
        switch (dec.kind) {
        case Decision::Kind::Individual: return space.ind_elem[dec.index] >= 0;
        case Decision::Kind::ConceptBit: return space.concept_bits[dec.index] != 0;
        case Decision::Kind::RoleBit: return space.role_bits[dec.index] != 0;
        }
        return false;
    }

    void note_concept(Cone& cone, const ConceptPtr& c) const {
        if (!c) return;
        switch (c->kind()) {
        case ConceptKind::Atomic: {
            auto it = space.concept_idx.find(c->name());
            if (it != space.concept_idx.end()) cone.concepts[it->second] = 1;
            break;
        }
        case ConceptKind::Not:
            note_concept(cone, c->child());
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            for (const auto& a : c->args()) note_concept(cone, a);
            break;
        case ConceptKind::Exists:
        case ConceptKind::ForAll:
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost:
        case ConceptKind::Self:
            note_role(cone, c->role());
            if (c->filler()) note_concept(cone, c->filler());
            break;
        default:
            break;
        }
    }

    void note_role(Cone& cone, const RoleExpr& r) const {
        if (r.is_universal()) return;
        auto it = space.role_idx.find(r.name);
        if (it != space.role_idx.end()) cone.roles[it->second] = 1;
    }

    void build_cones() {
        cones.reserve(axioms.size() + rules.size());
        for (const Axiom* ax : axioms) {
            Cone cone{std::vector<char>(space.concept_names.size(), 0),
                      std::vector<char>(space.role_names.size(), 0)};
            note_concept(cone, ax->c1);
            note_concept(cone, ax->c2);
            note_role(cone, ax->r1);
            note_role(cone, ax->r2);
            for (const auto& r : ax->chain) note_role(cone, r);
            cones.push_back(std::move(cone));
        }
        for (const DlSafeRule* rule : rules) {
            Cone cone{std::vector<char>(space.concept_names.size(), 0),
                      std::vector<char>(space.role_names.size(), 0)};
            auto note_atom = [&](const Atom& atom) {
                if (atom.kind == Atom::Kind::Concept) {
                    auto it = space.concept_idx.find(atom.predicate);
                    if (it != space.concept_idx.end()) cone.concepts[it->second] = 1;
                } else if (atom.kind == Atom::Kind::Role) {
                    auto it = space.role_idx.find(atom.predicate);
                    if (it != space.role_idx.end()) cone.roles[it->second] = 1;
                }
            };
            note_atom(rule->head);
            for (const auto& atom : rule->body) note_atom(atom);
            cones.push_back(std::move(cone));
        }
    }

    // A decision is relevant while some undecided axiom can read it. Bits
    // outside every pending cone are fixed to zero: decided axioms keep
    // their value under any extension, so such bits cannot matter.
    bool relevant(const Decision& dec, const std::vector<bool>& settled) const {
        if (!cone_restricted || dec.kind == Decision::Kind::Individual) return true;
        for (std::size_t i = 0; i < cones.size(); ++i) {
            if (settled[i]) continue;
            if (dec.kind == Decision::Kind::ConceptBit) {
                if (cones[i].concepts[dec.index / space.d]) return true;
            } else {
                if (cones[i].roles[dec.index / (space.d * space.d)]) return true;
            }
        }
        return false;
    }

    // The pure-literal rule: a bit only branches to one when some undecided
    // axiom reads it positively. A bit with negative-only readers can never
    // falsify anything by staying zero, so if a model sets it, the same
    // interpretation with the bit cleared is a model too.
    bool supportable(const Decision& dec, const std::vector<bool>& settled) const {
        if (!cone_restricted || dec.kind == Decision::Kind::Individual) return true;
        const int d = space.d;
        if (dec.kind == Decision::Kind::ConceptBit) {
            const int c = dec.index / d;
            for (std::size_t i = 0; i < supports.size(); ++i) {
                if (!settled[i] && supports[i].concepts[c]) return true;
            }
            return false;
        }
        const int r = dec.index / (d * d);
        const int row = (dec.index % (d * d)) / d;
        const int col = dec.index % d;
        for (std::size_t i = 0; i < supports.size(); ++i) {
            if (settled[i]) continue;
            const auto& sup = supports[i].roles[r];
            if (sup.all) return true;
            for (int k : sup.row_inds) {
                if (space.ind_elem[k] == row) return true;
            }
            for (int k : sup.col_inds) {
                if (space.ind_elem[k] == col) return true;
            }
        }
        return false;
    }

    std::vector<Support> supports; // aligned with axioms then rules

    // subject_ind: the individual index this subexpression is evaluated at,
    // or -1 when the subject ranges over arbitrary elements.
    void note_support(Support& sup, const ConceptPtr& c, bool positive, int subject_ind) const {
        if (!c) return;
        switch (c->kind()) {
        case ConceptKind::Atomic:
            if (positive) {
                auto it = space.concept_idx.find(c->name());
                if (it != space.concept_idx.end()) sup.concepts[it->second] = 1;
            }
            break;
        case ConceptKind::Not:
            note_support(sup, c->child(), !positive, subject_ind);
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            for (const auto& a : c->args()) note_support(sup, a, positive, subject_ind);
            break;
        case ConceptKind::Exists:
        case ConceptKind::ForAll:
        case ConceptKind::AtLeast:
        case ConceptKind::AtMost: {
            const bool universal_like =
                c->kind() == ConceptKind::ForAll || c->kind() == ConceptKind::AtMost;
            if (positive != universal_like) note_role_support(sup, c->role(), subject_ind);
            // the at-most filler flips polarity: "<= n" is a negated ">= n+1"
            const bool filler_positive =
                c->kind() == ConceptKind::AtMost ? !positive : positive;
            note_support(sup, c->filler(), filler_positive, -1);
            break;
        }
        case ConceptKind::Self:
            if (positive) note_role_support(sup, c->role(), subject_ind);
            break;
        default:
            break;
        }
    }

    void note_role_support(Support& sup, const RoleExpr& role, int subject_ind) const {
        if (role.is_universal()) return;
        auto it = space.role_idx.find(role.name);
        if (it == space.role_idx.end()) return;
        auto& entry = sup.roles[it->second];
        if (subject_ind < 0) {
            entry.all = true;
        } else if (role.is_inverse()) {
            entry.col_inds.push_back(subject_ind);
        } else {
            entry.row_inds.push_back(subject_ind);
        }
    }

    void build_supports() {
        supports.reserve(axioms.size() + rules.size());
        auto blank = [&] {
            Support sup;
            sup.concepts.assign(space.concept_names.size(), 0);
            sup.roles.assign(space.role_names.size(), {});
            return sup;
        };
        for (const Axiom* ax : axioms) {
            Support sup = blank();
            switch (ax->kind) {
            case AxiomKind::ConceptInclusion:
                note_support(sup, ax->c1, false, -1);
                note_support(sup, ax->c2, true, -1);
                break;
            case AxiomKind::ConceptEquivalence:
                note_support(sup, ax->c1, true, -1);
                note_support(sup, ax->c1, false, -1);
                note_support(sup, ax->c2, true, -1);
                note_support(sup, ax->c2, false, -1);
                break;
            case AxiomKind::RoleDomain:
            case AxiomKind::RoleRange:
                note_support(sup, ax->c1, true, -1);
                break;
            case AxiomKind::ConceptAssertion:
                note_support(sup, ax->c1, true, space.ind_idx.at(ax->i1));
                break;
            case AxiomKind::RoleAssertion:
                note_role_support(sup, ax->r1, -1);
                break;
            case AxiomKind::NegatedRoleAssertion:
            case AxiomKind::SameIndividual:
            case AxiomKind::DifferentIndividuals:
            case AxiomKind::DisjointRoles:
            case AxiomKind::AsymmetricRole:
            case AxiomKind::IrreflexiveRole:
                break;
            case AxiomKind::RoleInclusion:
            case AxiomKind::ComplexRoleInclusion:
                note_role_support(sup, ax->r2, -1);
                break;
            case AxiomKind::RoleEquivalence:
                note_role_support(sup, ax->r1, -1);
                note_role_support(sup, ax->r2, -1);
                break;
            case AxiomKind::TransitiveRole:
            case AxiomKind::ReflexiveRole:
                note_role_support(sup, ax->r1, -1);
                break;
            }
            supports.push_back(std::move(sup));
        }
        for (const DlSafeRule* rule : rules) {
            Support sup = blank();
            // only the head can demand a fact; body atoms are premises
            if (rule->head.kind == Atom::Kind::Concept) {
                auto it = space.concept_idx.find(rule->head.predicate);
                if (it != space.concept_idx.end()) sup.concepts[it->second] = 1;
            } else if (rule->head.kind == Atom::Kind::Role) {
                auto it = space.role_idx.find(rule->head.predicate);
                if (it != space.role_idx.end()) sup.roles[it->second].all = true;
            }
            supports.push_back(std::move(sup));
        }
    }

    // settled[i] caches axioms already proven true on this branch; Kleene
    // evaluation is monotone, so they stay true below.
    Tri recheck(std::vector<bool>& settled) {
        Tri worst = 1;
        for (std::size_t i = 0; i < axioms.size() + rules.size(); ++i) {
            if (settled[i]) continue;
            Tri t = i < axioms.size() ? space.axiom_tri(*axioms[i])
                                      : space.rule_tri(*rules[i - axioms.size()]);
            if (t == -1) return -1;
            if (t == 1) settled[i] = true;
            else worst = 0;
        }
        return worst;
    }

    // Depth-first over decisions [depth..end). Returns the first model found
    // or nullopt; sets `truncated` when the step limit cut the search short.
    std::optional<Interpretation> search(std::size_t depth, std::vector<bool> settled,
                                         const std::function<bool()>* cancelled) {
        if (truncated) return std::nullopt;
        if (cancelled && (*cancelled)()) {
            truncated = true; // treated as cut short; caller ignores the result
            return std::nullopt;
        }
        if (depth == ind_decisions && (cone_restricted || !forced_specs.empty())) {
            // crossing from individual placement into bit assignments
            std::vector<int> undo_concepts, undo_roles;
            std::optional<Interpretation> result;
            if (apply_forced(undo_concepts, undo_roles)) {
                std::vector<bool> child = settled;
                if (recheck(child) != -1) {
                    result = search_bits(depth, std::move(child), cancelled);
                }
            }
            undo_forced(undo_concepts, undo_roles);
            return result;
        }
        return search_bits(depth, std::move(settled), cancelled);
    }

    std::optional<Interpretation> search_bits(std::size_t depth, std::vector<bool> settled,
                                              const std::function<bool()>* cancelled) {
        if (truncated) return std::nullopt;
        if (depth == order.size()) {
            return space.snapshot();
        }
        const Decision& dec = order[depth];
        if (decision_assigned(dec)) { // planted by an assertion
            return search(depth + 1, std::move(settled), cancelled);
        }
        if (!relevant(dec, settled) || !supportable(dec, settled)) {
            if (++steps > step_limit) {
                truncated = true;
                return std::nullopt;
            }
            apply_decision(space, dec, 0);
            std::vector<bool> child = settled;
            std::optional<Interpretation> found;
            if (recheck(child) != -1) {
                found = search(depth + 1, std::move(child), cancelled);
            }
            undo_decision(space, dec);
            return found;
        }
        for (int value = 0; value < dec.choices; ++value) {
            if (dec.kind == Decision::Kind::Individual &&
                !canonical_individual(space, dec.index, value)) {
                continue;
            }
            if (++steps > step_limit) {
                truncated = true;
                return std::nullopt;
            }
            apply_decision(space, dec, value);
            std::vector<bool> child = settled;
            Tri t = recheck(child);
            if (t != -1) {
                auto found = search(depth + 1, std::move(child), cancelled);
                if (found || truncated) {
                    undo_decision(space, dec);
                    return found;
                }
            }
            undo_decision(space, dec);
        }
        return std::nullopt;
    }
};

// Subspace prefixes: mixed-radix counters over the first `prefix_len`
// decisions. The prefix length is derived only from the space shape, never
// from the thread count, so results are machine-independent.
std::size_t choose_prefix_len(const std::vector<Decision>& order, std::uint64_t& count) {
    count = 1;
    std::size_t len = 0;
    while (len < order.size() && count < 64) {
        count *= order[len].choices;
        ++len;
        if (count > 512) break;
    }
    return len;
}

enum class SubspaceOutcome : std::uint8_t { Exhausted, Model, Truncated };

struct SubspaceResult {
    SubspaceOutcome outcome = SubspaceOutcome::Exhausted;
    std::optional<Interpretation> model;
};

SubspaceResult run_subspace(const KnowledgeBase& kb, int d, std::uint64_t quota,
                            const std::vector<Decision>& order, std::size_t prefix_len,
                            std::uint64_t subspace_index,
                            const std::function<bool()>* cancelled) {
    Searcher searcher(kb, d, quota);
    std::vector<bool> settled(searcher.axioms.size() + searcher.rules.size(), false);

    // Decode and apply the prefix; a refuted, non-canonical or
    // assertion-contradicting prefix exhausts the subspace.
    std::uint64_t rest = subspace_index;
    for (std::size_t i = 0; i < prefix_len; ++i) {
        if (i == searcher.ind_decisions &&
            (searcher.cone_restricted || !searcher.forced_specs.empty())) {
            std::vector<int> fc, fr; // owned by the searcher's lifetime
            if (!searcher.apply_forced(fc, fr)) return {};
            if (searcher.recheck(settled) == -1) return {};
        }
        const Decision& dec = order[i];
        // Most significant digit first so subspace order == enumeration order.
        std::uint64_t radix = 1;
        for (std::size_t j = i + 1; j < prefix_len; ++j) radix *= order[j].choices;
        int value = static_cast<int>(rest / radix);
        rest %= radix;
        if (searcher.decision_assigned(dec)) {
            const Tri cur = dec.kind == Decision::Kind::ConceptBit
                                ? searcher.space.concept_bits[dec.index]
                                : searcher.space.role_bits[dec.index];
            if (cur != (value ? 1 : -1)) return {}; // disagrees with an assertion
            continue;
        }
        if (dec.kind == Decision::Kind::Individual &&
            !canonical_individual(searcher.space, dec.index, value)) {
            return {};
        }
        ++searcher.steps;
        apply_decision(searcher.space, dec, value);
        if (searcher.recheck(settled) == -1) return {};
    }

    auto model = searcher.search(prefix_len, std::move(settled), cancelled);
    if (model) return {SubspaceOutcome::Model, std::move(model)};
    if (searcher.truncated) return {SubspaceOutcome::Truncated, std::nullopt};
    return {};
}

} // namespace

std::optional<Interpretation> find_model(const KnowledgeBase& kb, int max_domain,
                                         const OracleOptions& options) {
    if (max_domain < 1) throw Error("max_domain must be >= 1");
    if (max_domain > kMaxOracleDomain) {
        throw Error("domain bound " + std::to_string(max_domain) + " exceeds the oracle cap of " +
                    std::to_string(kMaxOracleDomain));
    }
    for (int d = 1; d <= max_domain; ++d) {
        Space probe(kb, d);
        auto order = decision_order(probe);
        std::uint64_t subspace_count = 1;
        const std::size_t prefix_len = choose_prefix_len(order, subspace_count);
        const std::uint64_t quota = std::max<std::uint64_t>(
            options.budget / std::max<std::uint64_t>(subspace_count, 1), 1);

        std::vector<SubspaceResult> results(subspace_count);
        std::atomic<std::uint64_t> stop_at{subspace_count};

#ifdef _OPENMP
        const bool parallel = options.parallel;
#else
        const bool parallel = false;
#endif
        if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
            for (long long s = 0; s < static_cast<long long>(subspace_count); ++s) {
                const auto index = static_cast<std::uint64_t>(s);
                if (index > stop_at.load(std::memory_order_relaxed)) continue;
                std::function<bool()> cancelled = [&stop_at, index] {
                    return index > stop_at.load(std::memory_order_relaxed);
                };
                results[index] = run_subspace(kb, d, quota, order, prefix_len, index, &cancelled);
                if (results[index].outcome != SubspaceOutcome::Exhausted) {
                    std::uint64_t expected = stop_at.load(std::memory_order_relaxed);
                    while (index < expected &&
                           !stop_at.compare_exchange_weak(expected, index)) {
                    }
                }
            }
#endif
        } else {
            for (std::uint64_t s = 0; s < subspace_count; ++s) {
                results[s] = run_subspace(kb, d, quota, order, prefix_len, s, nullptr);
                if (results[s].outcome != SubspaceOutcome::Exhausted) break;
            }
        }

        for (std::uint64_t s = 0; s < subspace_count; ++s) {
            if (results[s].outcome == SubspaceOutcome::Model) return results[s].model;
            if (results[s].outcome == SubspaceOutcome::Truncated) {
                throw BudgetExceededError(d, "model search budget exceeded at domain size " +
                                                 std::to_string(d));
            }
        }
    }
    return std::nullopt;
}

void for_each_model(const KnowledgeBase& kb, int max_domain,
                    const std::function<bool(const Interpretation&)>& callback,
                    const OracleOptions& options) {
    if (max_domain < 1) throw Error("max_domain must be >= 1");
    if (max_domain > kMaxOracleDomain) {
        throw Error("domain bound exceeds the oracle cap of " + std::to_string(kMaxOracleDomain));
    }
    for (int d = 1; d <= max_domain; ++d) {
        Searcher searcher(kb, d, options.budget);
        searcher.cone_restricted = false; // full enumeration, no bit skipping
        std::vector<bool> settled(searcher.axioms.size() + searcher.rules.size(), false);

        bool stop = false;
        // Iterative deepening is unnecessary here: recurse, but keep walking
        // after each model instead of returning it.
        std::function<void(std::size_t, std::vector<bool>)> walk =
            [&](std::size_t depth, std::vector<bool> settled_here) {
                if (stop || searcher.truncated) return;
                if (depth == searcher.order.size()) {
                    if (!callback(searcher.space.snapshot())) stop = true;
                    return;
                }
                const Decision& dec = searcher.order[depth];
                for (int value = 0; value < dec.choices && !stop; ++value) {
                    if (dec.kind == Decision::Kind::Individual &&
                        !canonical_individual(searcher.space, dec.index, value)) {
                        continue;
                    }
                    if (++searcher.steps > searcher.step_limit) {
                        searcher.truncated = true;
                        return;
                    }
                    apply_decision(searcher.space, dec, value);
                    std::vector<bool> child = settled_here;
                    if (searcher.recheck(child) != -1) walk(depth + 1, std::move(child));
                    undo_decision(searcher.space, dec);
                }
            };
        walk(0, std::move(settled));
        if (searcher.truncated) {
            throw BudgetExceededError(d, "model enumeration budget exceeded at domain size " +
                                             std::to_string(d));
        }
        if (stop) return;
    }
}

namespace {

Space complete_space(const Interpretation& interp) {
    Space space(KnowledgeBase(), interp.domain_size);
    const int d = interp.domain_size;
    for (const auto& [name, mask] : interp.concepts) {
        space.concept_idx[name] = space.concept_names.size();
        space.concept_names.push_back(name);
    }
    for (const auto& [name, mask] : interp.roles) {
        space.role_idx[name] = space.role_names.size();
        space.role_names.push_back(name);
    }
    for (const auto& [name, elem] : interp.individuals) {
        space.ind_idx[name] = space.ind_names.size();
        space.ind_names.push_back(name);
    }
    space.concept_bits.assign(space.concept_names.size() * d, -1);
    space.role_bits.assign(space.role_names.size() * d * d, -1);
    space.ind_elem.assign(space.ind_names.size(), -1);
    for (std::size_t ci = 0; ci < space.concept_names.size(); ++ci) {
        for (int e = 0; e < d; ++e) {
            if (interp.in_concept(space.concept_names[ci], e)) space.concept_bits[ci * d + e] = 1;
        }
    }
    for (std::size_t ri = 0; ri < space.role_names.size(); ++ri) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (interp.in_role(space.role_names[ri], i, j)) {
                    space.role_bits[ri * d * d + i * d + j] = 1;
                }
            }
        }
    }
    for (std::size_t ii = 0; ii < space.ind_names.size(); ++ii) {
        space.ind_elem[ii] = interp.individuals.at(space.ind_names[ii]);
    }
    return space;
}

} // namespace

bool satisfies(const Interpretation& interp, const ConceptPtr& c, int element) {
    return complete_space(interp).concept_at(c, element) == 1;
}

bool satisfies(const Interpretation& interp, const Axiom& ax) {
    return complete_space(interp).axiom_tri(ax) == 1;
}

bool satisfies_rule(const Interpretation& interp, const DlSafeRule& rule) {
    return complete_space(interp).rule_tri(rule) == 1;
}

bool is_model(const Interpretation& interp, const KnowledgeBase& kb) {
    Space space = complete_space(interp);
    for (const auto& ax : kb.all_axioms()) {
        if (space.axiom_tri(ax) != 1) return false;
    }
    for (const auto& rule : kb.rules()) {
        if (space.rule_tri(rule) != 1) return false;
    }
    return true;
}

std::string Interpretation::to_table() const {
    std::string out = "domain size " + std::to_string(domain_size) + "\n";
    if (!individuals.empty()) {
        out += "individuals:";
        for (const auto& [name, elem] : individuals) {
            out += " " + name + "=e" + std::to_string(elem);
        }
        out += "\n";
    }
    for (const auto& [name, mask] : concepts) {
        out += "concept " + name + ":";
        bool empty = true;
        for (int e = 0; e < domain_size; ++e) {
            if ((mask >> e) & 1u) {
                out += " e" + std::to_string(e);
                empty = false;
            }
        }
        if (empty) out += " -";
        out += "\n";
    }
    for (const auto& [name, mask] : roles) {
        out += "role " + name + ":";
        bool empty = true;
        for (int i = 0; i < domain_size; ++i) {
            for (int j = 0; j < domain_size; ++j) {
                if ((mask >> (i * domain_size + j)) & 1u) {
                    out += " (e" + std::to_string(i) + ",e" + std::to_string(j) + ")";
                    empty = false;
                }
            }
        }
        if (empty) out += " -";
        out += "\n";
    }
    return out;
}

} // namespace tkb
