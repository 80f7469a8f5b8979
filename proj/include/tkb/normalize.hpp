// Preprocessing for the reasoning engines: negation normal form, the
// reflexive-transitive role-subsumption closure, RIA regularity checking,
// compilation of role chains and hierarchy axioms into rules, and GCI
// internalization.

#ifndef TKB_NORMALIZE_HPP
#define TKB_NORMALIZE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tkb/kb.hpp"

namespace tkb {

// Pushes negation down to atomic concepts, nominals and Self restrictions.
// Idempotent and model-preserving.
ConceptPtr nnf(const ConceptPtr& c);

// nnf of the complement; the tableau's clash/pruning companion to nnf.
ConceptPtr nnf_complement(const ConceptPtr& c);

struct RoleClosure {
    // r |-> all s with r subsumed-by* s (reflexive, transitive, closed under
    // inversion symmetry). Keys cover every signature role and its inverse.
    std::map<RoleExpr, std::set<RoleExpr>> supers;
    std::set<RoleExpr> transitive; // closed under inversion
    std::set<RoleExpr> simple;     // not implied by any composition

    bool subsumed(const RoleExpr& sub, const RoleExpr& sup) const {
        auto it = supers.find(sub);
        return it != supers.end() && it->second.count(sup) > 0;
    }
    bool is_transitive(const RoleExpr& r) const { return transitive.count(r) > 0; }
    bool is_simple(const RoleExpr& r) const { return simple.count(r) > 0; }
};

RoleClosure role_closure(const KnowledgeBase& kb);

struct RegularityResult {
    bool regular = false;
    // Witnessing strict order as precedence ranks over role names; only
    // meaningful when regular. Roles sharing a rank are incomparable.
    std::map<std::string, int> precedence;
    // On failure: a cycle of constraints "r < s" rendered per offending axiom.
    std::vector<std::string> offending;
};

// Checks Def-4-style regularity of the complex role inclusions: every chain
// must fit one of the admissible shapes with strictly smaller side roles, and
// the induced precedence constraints must be acyclic.
RegularityResult check_regularity(const std::vector<Axiom>& rbox);

// Translates complex role inclusions, transitivity and the role hierarchy
// into guarded DL-safe rules over named individuals.
std::vector<DlSafeRule> compile_chains_to_rules(const KnowledgeBase& kb);

// nnf(not C or D) per concept inclusion, both directions per equivalence;
// domain/range axioms desugar to their inclusion form first.
std::vector<ConceptPtr> gci_disjunctions(const std::vector<Axiom>& tbox);

} // namespace tkb

#endif // TKB_NORMALIZE_HPP
