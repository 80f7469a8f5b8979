// Tableau-based satisfiability engine.
//
// Builds a completion graph from the ABox, then saturates it with the
// expansion rules under chronological backtracking. Scanning is oldest-node
// first; within a node the rules run in priority order: clash detection,
// conjunction, nominal merging, at-most merging, disjunction, existential,
// at-least, value propagation, transitive value propagation, the choose
// rule, local reflexivity, and declared reflexivity.
//
// The disjunction rule does constraint propagation before it branches: a
// disjunct whose complement sits in the label is dead, an unsatisfied
// disjunction with no live disjunct is a clash, a single live disjunct is
// added deterministically, and only a genuine choice opens a branch.
//
// Termination comes from pairwise blocking on anonymous nodes. Complex role
// inclusions are not propagated here (they are materialized over named
// individuals by the rule engine); transitivity is handled natively.

#ifndef TKB_TABLEAU_HPP
#define TKB_TABLEAU_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tkb/kb.hpp"

namespace tkb {

struct TableauOptions {
    std::size_t max_nodes = 100000; // total node creations before giving up
};

enum class TableauOutcome : std::uint8_t { Satisfiable, Unsatisfiable, Inconclusive };

// Finite model description extracted from a saturated completion graph.
struct TableauModel {
    struct Node {
        std::size_t id = 0;
        bool named = false;
        std::vector<std::string> individuals; // merged individual names
        std::vector<std::string> label;       // concept expressions, sorted
    };
    struct Edge {
        std::size_t from = 0, to = 0;
        std::vector<std::string> roles;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    std::string to_text() const;
};

struct TableauVerdict {
    TableauOutcome outcome = TableauOutcome::Inconclusive;
    bool satisfiable() const { return outcome == TableauOutcome::Satisfiable; }

    std::optional<TableauModel> model;    // present iff satisfiable
    std::vector<std::string> clash_trace; // present iff unsatisfiable
    std::vector<std::string> trace;       // full chronological rule application log
    std::size_t backtracks = 0;           // abandoned branch alternatives
    std::size_t nodes_created = 0;

    // Set when the input combines nominals, inverse roles and number
    // restrictions; such inputs may need the NI rule this engine omits.
    bool possibly_incomplete = false;
    std::string incompleteness_note;
};

// Satisfiability of the KB's ABox+TBox+RBox (rules and chains excluded;
// transitivity included). Requires validate(kb) without error diagnostics.
TableauVerdict is_consistent(const KnowledgeBase& kb, const TableauOptions& options = {});

// Satisfiability of kb extended with c(x) for a fresh individual x.
TableauVerdict is_satisfiable_concept(const KnowledgeBase& kb, const ConceptPtr& c,
                                      const TableauOptions& options = {});

// True iff sub is subsumed by sup under kb: kb + (sub and not sup)(x) is
// unsatisfiable. Throws ResourceLimitError when the tableau is inconclusive.
bool subsumes(const KnowledgeBase& kb, const ConceptPtr& sup, const ConceptPtr& sub,
              const TableauOptions& options = {});

} // namespace tkb

#endif // TKB_TABLEAU_HPP
