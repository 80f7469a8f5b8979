// High-level reasoning services: entailment, classification, realization.

#ifndef TKB_REASONER_HPP
#define TKB_REASONER_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tkb/kb.hpp"
#include "tkb/tableau.hpp"

namespace tkb {

// Names of the synthetic top and bottom hierarchy classes. These are grammar
// keywords, so they can never collide with user concept names.
inline const std::string kTopClass = "TOP";
inline const std::string kBottomClass = "BOTTOM";

struct ConceptHierarchy {
    struct Node {
        std::vector<std::string> members; // equivalence class, sorted
    };
    std::vector<Node> nodes;                 // node 0 is the top class
    std::vector<std::pair<int, int>> edges;  // (parent, child), transitively reduced
    bool inconsistent = false;               // degenerate: every name equals bottom

    int node_of(const std::string& concept_name) const;
    // True iff sub's class is below (or equal to) sup's class in the DAG,
    // i.e. sub is subsumed by sup.
    bool below(const std::string& sub, const std::string& sup) const;

    std::string to_text() const; // indented tree, lexicographic sibling order
    // The transitive reduction as SUBCLASS statements (one per line).
    std::string to_dl_text() const;
};

// Entailment of a single axiom. Supports ConceptInclusion, ConceptAssertion
// and RoleAssertion; other kinds raise UnsupportedConstructError.
bool entails(const KnowledgeBase& kb, const Axiom& ax, const TableauOptions& options = {});

// Pairwise-subsumption classification with told-subsumer seeding. On an
// inconsistent KB returns the flagged degenerate hierarchy.
ConceptHierarchy classify(const KnowledgeBase& kb, const TableauOptions& options = {});

// Most-specific entailed concept names per individual.
std::map<std::string, std::set<std::string>> realize(const KnowledgeBase& kb,
                                                     const TableauOptions& options = {});

} // namespace tkb

#endif // TKB_REASONER_HPP
