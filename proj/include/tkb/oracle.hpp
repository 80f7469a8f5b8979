// Brute-force finite-model finder over the standard DL semantics.
//
// This module is the semantic reference the reasoning engines are tested
// against. It evaluates the unrestricted semantics: role chains everywhere,
// the universal role, and rule satisfaction over named individuals.
//
// find_model searches domain sizes 1..max_domain in order. Within a size,
// interpretations are enumerated depth-first over a fixed decision order
// (individual assignments in lexicographic name order, then concept
// membership bits and role pair bits element by element, zero before one)
// with three-valued pruning of already-falsified axioms. The first model in
// this order is the one returned. The space is split into deterministic
// prefix subspaces so workers can search in parallel; the result never
// depends on the thread count.
//
// Domain sizes are capped at 8 so a role extension fits a 64-bit pair mask.

#ifndef TKB_ORACLE_HPP
#define TKB_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "tkb/kb.hpp"

namespace tkb {

struct Interpretation {
    int domain_size = 1;
    std::map<std::string, std::uint32_t> concepts; // bit e: element e in the extension
    std::map<std::string, std::uint64_t> roles;    // bit i*d+j: pair (i, j)
    std::map<std::string, int> individuals;

    bool in_concept(const std::string& name, int e) const {
        auto it = concepts.find(name);
        return it != concepts.end() && ((it->second >> e) & 1u);
    }
    bool in_role(const std::string& name, int i, int j) const {
        auto it = roles.find(name);
        return it != roles.end() && ((it->second >> (i * domain_size + j)) & 1u);
    }

    // Text table: element rows x concept columns, then role pair lists.
    std::string to_table() const;
};

struct OracleOptions {
    std::uint64_t budget = 10'000'000; // search steps before giving up
    bool parallel = true;              // partition subspaces across OpenMP threads
};

constexpr int kMaxOracleDomain = 8;

// Truth of one axiom / rule / whole KB under a complete interpretation.
bool satisfies(const Interpretation& interp, const Axiom& ax);
bool satisfies(const Interpretation& interp, const ConceptPtr& c, int element);
bool satisfies_rule(const Interpretation& interp, const DlSafeRule& rule);
bool is_model(const Interpretation& interp, const KnowledgeBase& kb);

// First model in enumeration order, or nullopt if none within the bound.
// Throws BudgetExceededError when the search was cut short, so a "no model"
// answer is always a certificate.
std::optional<Interpretation> find_model(const KnowledgeBase& kb, int max_domain,
                                         const OracleOptions& options = {});

// Enumerates every model with domain size <= max_domain in enumeration
// order, one representative per canonical individual placement (individuals
// occupy a prefix of the domain); the callback returns false to stop early.
// Serial; same budget discipline.
void for_each_model(const KnowledgeBase& kb, int max_domain,
                    const std::function<bool(const Interpretation&)>& callback,
                    const OracleOptions& options = {});

} // namespace tkb

#endif // TKB_ORACLE_HPP
