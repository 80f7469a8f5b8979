// Seeded random knowledge-base generators for the property and differential
// suites. Everything is driven by std::mt19937_64 with explicit seeds, so
// every run sees the same corpus.

#ifndef TKB_TESTS_GENERATORS_HPP
#define TKB_TESTS_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "tkb/kb.hpp"
#include "tkb/normalize.hpp"

namespace tkb::testgen {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    int below(int n) { return static_cast<int>(engine() % static_cast<std::uint64_t>(n)); }
    bool chance(int percent) { return below(100) < percent; }
    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(static_cast<int>(items.size()))];
    }
};

inline const std::vector<std::string> kConceptNames = {"A", "B", "C"};
inline const std::vector<std::string> kRoleNames = {"r", "s"};
inline const std::vector<std::string> kIndividuals = {"a", "b"};

// ALC concept over the tiny signature: booleans plus unqualified-by-name
// existential/value restrictions, no inverses, no numbers, no nominals.
inline ConceptPtr random_alc_concept(Rng& rng, int depth) {
    if (depth == 0) {
        switch (rng.below(6)) {
        case 0: return top();
        case 1: return bottom();
        default: return atomic(rng.pick(kConceptNames));
        }
    }
    switch (rng.below(10)) {
    case 0:
    case 1:
    case 2: return atomic(rng.pick(kConceptNames));
    case 3: return negation(random_alc_concept(rng, depth - 1));
    case 4:
    case 5:
        return conjunction({random_alc_concept(rng, depth - 1),
                            random_alc_concept(rng, depth - 1)});
    case 6:
    case 7:
        return disjunction({random_alc_concept(rng, depth - 1),
                            random_alc_concept(rng, depth - 1)});
    case 8:
        return exists(RoleExpr::named(rng.pick(kRoleNames)), random_alc_concept(rng, depth - 1));
    default:
        return forall(RoleExpr::named(rng.pick(kRoleNames)), random_alc_concept(rng, depth - 1));
    }
}

// Small ALC KB: a few GCIs plus assertions over at most two individuals.
inline KnowledgeBase random_alc_kb(Rng& rng) {
    std::vector<Axiom> axioms;
    const int gcis = rng.below(3);
    for (int i = 0; i < gcis; ++i) {
        axioms.push_back(Axiom::concept_inclusion(random_alc_concept(rng, 2),
                                                  random_alc_concept(rng, 2)));
    }
    const int assertions = 1 + rng.below(2);
    for (int i = 0; i < assertions; ++i) {
        axioms.push_back(Axiom::concept_assertion(random_alc_concept(rng, 3),
                                                  rng.pick(kIndividuals)));
    }
    const int role_assertions = rng.below(3);
    for (int i = 0; i < role_assertions; ++i) {
        axioms.push_back(Axiom::role_assertion(RoleExpr::named(rng.pick(kRoleNames)),
                                               rng.pick(kIndividuals), rng.pick(kIndividuals)));
    }
    return KnowledgeBase(std::move(axioms), {});
}

// Role expression for the full fragment; role s stays simple so number
// restrictions remain admissible when r is transitive.
inline RoleExpr random_simple_role(Rng& rng) {
    RoleExpr role = RoleExpr::named("s");
    return rng.chance(30) ? role.inverse() : role;
}

inline RoleExpr random_any_role(Rng& rng) {
    RoleExpr role = RoleExpr::named(rng.pick(kRoleNames));
    return rng.chance(30) ? role.inverse() : role;
}

inline ConceptPtr random_full_concept(Rng& rng, int depth) {
    if (depth == 0) return atomic(rng.pick(kConceptNames));
    switch (rng.below(12)) {
    case 0:
    case 1: return atomic(rng.pick(kConceptNames));
    case 2: return negation(random_full_concept(rng, depth - 1));
    case 3:
    case 4:
        return conjunction({random_full_concept(rng, depth - 1),
                            random_full_concept(rng, depth - 1)});
    case 5:
    case 6:
        return disjunction({random_full_concept(rng, depth - 1),
                            random_full_concept(rng, depth - 1)});
    case 7: return exists(random_any_role(rng), random_full_concept(rng, depth - 1));
    case 8: return forall(random_any_role(rng), random_full_concept(rng, depth - 1));
    case 9:
        return at_least(static_cast<std::uint32_t>(1 + rng.below(2)), random_simple_role(rng),
                        random_full_concept(rng, depth - 1));
    default:
        return at_most(static_cast<std::uint32_t>(rng.below(2)), random_simple_role(rng),
                       random_full_concept(rng, depth - 1));
    }
}

// SHIQ-flavoured KB: inverses, number restrictions, transitivity and
// disjointness. Resamples internally until validate() is clean.
inline KnowledgeBase random_full_kb(Rng& rng) {
    for (;;) {
        std::vector<Axiom> axioms;
        const int gcis = rng.below(3);
        for (int i = 0; i < gcis; ++i) {
            axioms.push_back(Axiom::concept_inclusion(random_full_concept(rng, 2),
                                                      random_full_concept(rng, 2)));
        }
        if (rng.chance(40)) axioms.push_back(Axiom::transitive_role(RoleExpr::named("r")));
        if (rng.chance(25)) {
            axioms.push_back(Axiom::role_inclusion(RoleExpr::named("s"), RoleExpr::named("r")));
        }
        const int assertions = 1 + rng.below(2);
        for (int i = 0; i < assertions; ++i) {
            axioms.push_back(Axiom::concept_assertion(random_full_concept(rng, 3),
                                                      rng.pick(kIndividuals)));
        }
        const int role_assertions = rng.below(3);
        for (int i = 0; i < role_assertions; ++i) {
            axioms.push_back(Axiom::role_assertion(RoleExpr::named(rng.pick(kRoleNames)),
                                                   rng.pick(kIndividuals),
                                                   rng.pick(kIndividuals)));
        }
        if (rng.chance(20)) {
            axioms.push_back(Axiom::different_individuals("a", "b"));
        }
        KnowledgeBase kb(std::move(axioms), {});
        if (validate(kb).empty()) return kb;
    }
}

// Broad generator for parser/serializer round trips: every statement form.
inline KnowledgeBase random_syntax_kb(Rng& rng) {
    std::vector<Axiom> axioms;
    std::vector<DlSafeRule> rules;
    const std::vector<std::string> inds = {"a", "b", "c"};
    auto any_concept = [&](int depth) {
        if (rng.chance(15)) return nominal({rng.pick(inds)});
        if (rng.chance(10)) return self_restriction(random_simple_role(rng));
        return random_full_concept(rng, depth);
    };
    const int n = 2 + rng.below(5);
    for (int i = 0; i < n; ++i) {
        switch (rng.below(12)) {
        case 0: axioms.push_back(Axiom::concept_inclusion(any_concept(2), any_concept(2))); break;
        case 1: axioms.push_back(Axiom::concept_equivalence(any_concept(1), any_concept(1))); break;
        case 2: axioms.push_back(Axiom::role_domain(random_any_role(rng), any_concept(1))); break;
        case 3: axioms.push_back(Axiom::role_range(random_any_role(rng), any_concept(1))); break;
        case 4: axioms.push_back(Axiom::concept_assertion(any_concept(2), rng.pick(inds))); break;
        case 5:
            axioms.push_back(Axiom::role_assertion(random_any_role(rng), rng.pick(inds),
                                                   rng.pick(inds)));
            break;
        case 6:
            axioms.push_back(Axiom::negated_role_assertion(RoleExpr::named("s"), rng.pick(inds),
                                                           rng.pick(inds)));
            break;
        case 7: axioms.push_back(Axiom::same_individual(rng.pick(inds), rng.pick(inds))); break;
        case 8:
            axioms.push_back(Axiom::different_individuals(rng.pick(inds), rng.pick(inds)));
            break;
        case 9:
            axioms.push_back(Axiom::role_inclusion(random_any_role(rng), random_any_role(rng)));
            break;
        case 10:
            axioms.push_back(Axiom::complex_role_inclusion(
                {random_any_role(rng), random_any_role(rng)}, RoleExpr::named("t")));
            break;
        default:
            axioms.push_back(Axiom::disjoint_roles(RoleExpr::named("s"), RoleExpr::named("q")));
            break;
        }
    }
    if (rng.chance(50)) {
        DlSafeRule rule;
        rule.head = Atom::concept_atom("A", Term::variable("x"));
        rule.body.push_back(Atom::role_atom("r", Term::variable("x"), Term::variable("y")));
        if (rng.chance(50)) {
            rule.body.push_back(Atom::non_dl_atom(kGuardPredicate, {Term::variable("x")}));
            rule.body.push_back(Atom::non_dl_atom(kGuardPredicate, {Term::variable("y")}));
        }
        rules.push_back(std::move(rule));
    }
    return KnowledgeBase(std::move(axioms), std::move(rules));
}

} // namespace tkb::testgen

#endif // TKB_TESTS_GENERATORS_HPP
