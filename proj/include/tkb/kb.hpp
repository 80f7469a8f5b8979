// KnowledgeBase: immutable container of TBox/ABox/RBox axioms, DL-safe rules
// and the cached signature.
//
// Construction sorts axioms into their boxes (input order preserved per box,
// exact structural duplicates dropped), classifies rule atoms against the
// signature, and enforces the name-space discipline: concept, role,
// individual and non-DL predicate names are pairwise disjoint, and "O" is
// reserved for the built-in rule guard.

#ifndef TKB_KB_HPP
#define TKB_KB_HPP

#include <set>
#include <string>
#include <vector>

#include "tkb/axioms.hpp"

namespace tkb {

struct Signature {
    std::set<std::string> concepts;
    std::set<std::string> roles;
    std::set<std::string> individuals;
    std::set<std::string> non_dl_predicates;

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.concepts == b.concepts && a.roles == b.roles &&
               a.individuals == b.individuals && a.non_dl_predicates == b.non_dl_predicates;
    }
};

struct Diagnostic {
    enum class Severity : std::uint8_t { Error, Warning };
    Severity severity = Severity::Error;
    std::string code;    // stable machine-readable tag, e.g. "non-simple-role"
    std::string message;

    std::string to_string() const {
        return std::string(severity == Severity::Error ? "error" : "warning") + " [" + code +
               "] " + message;
    }
};

class KnowledgeBase {
public:
    KnowledgeBase() = default;
    KnowledgeBase(std::vector<Axiom> axioms, std::vector<DlSafeRule> rules);

    const std::vector<Axiom>& tbox() const { return tbox_; }
    const std::vector<Axiom>& abox() const { return abox_; }
    const std::vector<Axiom>& rbox() const { return rbox_; }
    const std::vector<DlSafeRule>& rules() const { return rules_; }
    const Signature& signature() const { return signature_; }

    bool empty() const { return tbox_.empty() && abox_.empty() && rbox_.empty() && rules_.empty(); }

    // All axioms in box order (tbox, abox, rbox), each in input order.
    std::vector<Axiom> all_axioms() const;

    // Set equality per box plus rule-list equality.
    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b);

private:
    std::vector<Axiom> tbox_;
    std::vector<Axiom> abox_;
    std::vector<Axiom> rbox_;
    std::vector<DlSafeRule> rules_;
    Signature signature_;
};

// Recomputes the signature from scratch; equals kb.signature() by construction.
Signature signature_of(const KnowledgeBase& kb);

// Admissibility diagnostics: RIA regularity, simple-role discipline, universal
// role usage, and (in strict mode) DL-safety of the rules. Empty means the KB
// is admissible for reasoning.
std::vector<Diagnostic> validate(const KnowledgeBase& kb, bool strict_rules = false);

} // namespace tkb

#endif // TKB_KB_HPP
