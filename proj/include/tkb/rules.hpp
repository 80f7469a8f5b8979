// DL-safe rule engine: safety transformation, single-rule application and
// fixpoint materialization over named individuals.
//
// Facts are kept over representative individuals (SameIndividual classes
// collapse to the lexicographically smallest member). Two evaluation modes:
// asserted mode reads DL body atoms from the explicit + derived fact set;
// entailment mode additionally proves concept atoms with the tableau against
// the knowledge base extended by the facts derived so far.

#ifndef TKB_RULES_HPP
#define TKB_RULES_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tkb/kb.hpp"

namespace tkb {

enum class SafetyMode : std::uint8_t { Auto, Strict };
enum class MaterializeMode : std::uint8_t { Asserted, Entailment };

struct GroundFact {
    enum class Kind : std::uint8_t { Concept, Role };
    Kind kind = Kind::Concept;
    std::string predicate;
    std::string subject;
    std::string object; // empty for concept facts

    static GroundFact concept_fact(std::string predicate, std::string individual) {
        return {Kind::Concept, std::move(predicate), std::move(individual), {}};
    }
    static GroundFact role_fact(std::string predicate, std::string subject, std::string object) {
        return {Kind::Role, std::move(predicate), std::move(subject), std::move(object)};
    }

    // DL-text statement, e.g. "a : Actor." or "a won d."
    std::string to_statement() const {
        if (kind == Kind::Concept) return subject + " : " + predicate + ".";
        return subject + " " + predicate + " " + object + ".";
    }

    friend bool operator==(const GroundFact& a, const GroundFact& b) {
        return a.kind == b.kind && a.predicate == b.predicate && a.subject == b.subject &&
               a.object == b.object;
    }
    friend bool operator<(const GroundFact& a, const GroundFact& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        if (a.subject != b.subject) return a.subject < b.subject;
        return a.object < b.object;
    }
};

struct Provenance {
    std::string origin; // "asserted", "entailed", or the rule's statement text
    std::vector<std::pair<std::string, std::string>> bindings; // variable -> individual
};

struct FactStore {
    std::set<GroundFact> facts;
    std::map<GroundFact, std::vector<Provenance>> provenance;
    bool incomplete = false; // set when a timeout cut the fixpoint short

    bool contains(const GroundFact& f) const { return facts.count(f) > 0; }
    // True if the fact was inserted (not already present); provenance is
    // recorded either way.
    bool insert(const GroundFact& f, Provenance prov);

    // One '.'-terminated DL statement per fact, sorted.
    std::string to_dl_text() const;
    // "# fact <- origin [bindings]" comment lines, sorted by fact.
    std::string provenance_report() const;
};

// SameIndividual representative of each individual (union-find collapsed to
// the lexicographically smallest name).
std::map<std::string, std::string> individual_representatives(const KnowledgeBase& kb);

// Appends O(?v) guards for unguarded variables (auto) or rejects the rule
// naming the first offending variable (strict).
DlSafeRule make_safe(const DlSafeRule& rule, SafetyMode mode);

// One application of a rule against the KB's asserted ABox plus the store:
// returns the ground head facts not yet present.
std::set<GroundFact> apply_rule(const DlSafeRule& rule, const KnowledgeBase& kb,
                                const FactStore& store);

struct MaterializeOptions {
    MaterializeMode mode = MaterializeMode::Asserted;
    SafetyMode safety = SafetyMode::Auto;
    double timeout_seconds = 0; // 0: no limit
    std::size_t tableau_max_nodes = 100000;
};

// Fixpoint over kb.rules() plus the rules compiled from the RBox. Entailment
// mode refuses inconsistent KBs (InconsistentKbError).
FactStore materialize(const KnowledgeBase& kb, const MaterializeOptions& options = {});

} // namespace tkb

#endif // TKB_RULES_HPP
