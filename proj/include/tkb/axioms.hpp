// Axioms, rule atoms and DL-safe rules.
//
// Axiom is a single tagged struct rather than a class hierarchy; the factory
// functions establish the per-kind field conventions documented next to the
// enum. Role assertions normalize inverse roles away at construction:
// (a,b):INV(r) is stored as (b,a):r.

#ifndef TKB_AXIOMS_HPP
#define TKB_AXIOMS_HPP

#include <string>
#include <vector>

#include "tkb/ast.hpp"

namespace tkb {

enum class AxiomKind : std::uint8_t {
    ConceptInclusion,     // c1 SUBCLASS c2
    ConceptEquivalence,   // c1 EQUIV c2
    RoleDomain,           // r1 DOMAIN c1
    RoleRange,            // r1 RANGE c1
    ConceptAssertion,     // i1 : c1
    RoleAssertion,        // i1 r1 i2
    NegatedRoleAssertion, // i1 NOT r1 i2
    SameIndividual,       // i1 SAME i2
    DifferentIndividuals, // i1 DIFF i2
    RoleInclusion,        // r1 SUBROLE r2
    RoleEquivalence,      // r1 EQUIVROLE r2
    ComplexRoleInclusion, // chain SUBROLE r2, |chain| >= 2
    TransitiveRole,       // TRANS r1
    DisjointRoles,        // DIS r1 r2
    AsymmetricRole,       // ASY r1
    ReflexiveRole,        // REF r1
    IrreflexiveRole,      // IRR r1
};

struct Axiom {
    AxiomKind kind = AxiomKind::ConceptInclusion;
    ConceptPtr c1, c2;
    RoleExpr r1, r2;
    std::vector<RoleExpr> chain;
    std::string i1, i2;

    static Axiom concept_inclusion(ConceptPtr sub, ConceptPtr sup);
    static Axiom concept_equivalence(ConceptPtr lhs, ConceptPtr rhs);
    static Axiom role_domain(RoleExpr r, ConceptPtr c);
    static Axiom role_range(RoleExpr r, ConceptPtr c);
    static Axiom concept_assertion(ConceptPtr c, std::string individual);
    static Axiom role_assertion(RoleExpr r, std::string subject, std::string object);
    static Axiom negated_role_assertion(RoleExpr r, std::string subject, std::string object);
    static Axiom same_individual(std::string a, std::string b);
    static Axiom different_individuals(std::string a, std::string b);
    static Axiom role_inclusion(RoleExpr sub, RoleExpr sup);
    static Axiom role_equivalence(RoleExpr lhs, RoleExpr rhs);
    static Axiom complex_role_inclusion(std::vector<RoleExpr> chain, RoleExpr sup);
    static Axiom transitive_role(RoleExpr r);
    static Axiom disjoint_roles(RoleExpr r, RoleExpr s);
    static Axiom asymmetric_role(RoleExpr r);
    static Axiom reflexive_role(RoleExpr r);
    static Axiom irreflexive_role(RoleExpr r);

    bool is_tbox() const;
    bool is_abox() const;
    bool is_rbox() const;
};

int compare(const Axiom& a, const Axiom& b);
inline bool operator==(const Axiom& a, const Axiom& b) { return compare(a, b) == 0; }
inline bool operator<(const Axiom& a, const Axiom& b) { return compare(a, b) < 0; }

// Renders the axiom as one '.'-terminated DL-text statement (no newline).
std::string to_string(const Axiom& ax);

// --- rules -----------------------------------------------------------------

struct Term {
    enum class Kind : std::uint8_t { Variable, Constant };
    Kind kind = Kind::Constant;
    std::string name;

    static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_variable() const { return kind == Kind::Variable; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.name < b.name;
    }
};

struct Atom {
    enum class Kind : std::uint8_t { Concept, Role, NonDl };
    Kind kind = Kind::NonDl;
    std::string predicate;
    std::vector<Term> terms; // 1 for Concept, 2 for Role, 1..2 for NonDl

    static Atom concept_atom(std::string predicate, Term t);
    static Atom role_atom(std::string predicate, Term s, Term o);
    static Atom non_dl_atom(std::string predicate, std::vector<Term> terms);

    bool is_dl() const { return kind != Kind::NonDl; }
    std::string to_string() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.kind == b.kind && a.predicate == b.predicate && a.terms == b.terms;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return a.terms < b.terms;
    }
};

// The built-in guard predicate: O(a) holds for every named individual.
inline const std::string kGuardPredicate = "O";

struct DlSafeRule {
    Atom head;
    std::vector<Atom> body;

    std::string to_string() const; // "head <- b1, b2." DL-text statement

    friend bool operator==(const DlSafeRule& a, const DlSafeRule& b) {
        return a.head == b.head && a.body == b.body;
    }
    friend bool operator<(const DlSafeRule& a, const DlSafeRule& b) {
        if (!(a.head == b.head)) return a.head < b.head;
        return a.body < b.body;
    }
};

} // namespace tkb

#endif // TKB_AXIOMS_HPP
