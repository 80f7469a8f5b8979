// Acceptance suite. Each criterion prints one pass/fail line; the full run
// also drives every fixture through the command line binary.

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "support/generators.hpp"
#include "support/run_cli.hpp"
#include "tkb/errors.hpp"
#include "tkb/normalize.hpp"
#include "tkb/oracle.hpp"
#include "tkb/parser.hpp"
#include "tkb/reasoner.hpp"
#include "tkb/rules.hpp"
#include "tkb/tableau.hpp"
#include "tkb/turtle.hpp"

using namespace tkb;

namespace {

struct Criterion {
    int number;
    const char* description;
    bool ok = true;
    explicit Criterion(int number, const char* description)
        : number(number), description(description) {}
    ~Criterion() {
        std::printf("criterion %d %s: %s\n", number, ok ? "PASS" : "FAIL", description);
        std::fflush(stdout);
    }
};

#define ACC_CHECK(crit, ...)                                                                     \
    do {                                                                                         \
        const bool acc_ok_ = static_cast<bool>(__VA_ARGS__);                                     \
        (crit).ok = (crit).ok && acc_ok_;                                                        \
        CHECK_MESSAGE(acc_ok_, #__VA_ARGS__);                                                    \
    } while (0)

std::string fixture_path(const std::string& name) {
    return testcli::fixtures_dir() + "/" + name;
}

std::string slurp_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    REQUIRE_MESSAGE(in.good(), name);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

KnowledgeBase load_fixture(const std::string& name) { return parse_dl(slurp_fixture(name)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::set<GroundFact> derived_only(const KnowledgeBase& kb, const FactStore& store) {
    auto asserted = materialize(KnowledgeBase(kb.abox(), {}));
    std::set<GroundFact> out;
    for (const auto& f : store.facts) {
        if (!asserted.facts.count(f)) out.insert(f);
    }
    return out;
}

} // namespace

TEST_CASE("criterion 1: consistency walkthrough") {
    Criterion crit(1, "active-actor ontology is satisfiable after exactly one backtrack");
    auto kb = load_fixture("actors.dl");
    ACC_CHECK(crit, validate(kb).empty());

    const auto start = std::chrono::steady_clock::now();
    auto verdict = is_consistent(kb);
    const double elapsed = seconds_since(start);

    ACC_CHECK(crit, verdict.outcome == TableauOutcome::Satisfiable);
    ACC_CHECK(crit, verdict.model.has_value());
    ACC_CHECK(crit, verdict.backtracks == 1);
    std::size_t backtrack_lines = 0;
    for (const auto& line : verdict.trace) {
        if (line.rfind("backtrack", 0) == 0) ++backtrack_lines;
    }
    ACC_CHECK(crit, backtrack_lines == 1);
    ACC_CHECK(crit, elapsed < 1.0);
}

TEST_CASE("criterion 2: DL-safe award rule") {
    Criterion crit(2, "award rule derives the winner only; strict mode names the variable");
    auto kb = load_fixture("award_winners.dl");

    const auto start = std::chrono::steady_clock::now();
    auto store = materialize(kb); // asserted mode, auto guarding
    const double elapsed = seconds_since(start);

    ACC_CHECK(crit, store.contains(GroundFact::concept_fact("AwardWinnerActor", "a")));
    ACC_CHECK(crit, !store.contains(GroundFact::concept_fact("AwardWinnerActor", "b")));
    ACC_CHECK(crit, !store.contains(GroundFact::concept_fact("AwardWinnerActor", "c")));
    std::size_t winners = 0;
    for (const auto& f : store.facts) {
        winners += f.kind == GroundFact::Kind::Concept && f.predicate == "AwardWinnerActor";
    }
    ACC_CHECK(crit, winners == 1);

    bool named_variable = false;
    try {
        MaterializeOptions strict;
        strict.safety = SafetyMode::Strict;
        materialize(kb, strict);
    } catch (const UnsafeRuleError& e) {
        named_variable = e.variable == "x";
    }
    ACC_CHECK(crit, named_variable);

    auto cli = testcli::run_cli("materialize " + fixture_path("award_winners.dl") +
                                " --strict-rules");
    ACC_CHECK(crit, cli.exit_code == 2);
    ACC_CHECK(crit, cli.err.find("?x") != std::string::npos);
    ACC_CHECK(crit, elapsed < 1.0);
}

TEST_CASE("criterion 3: chain and rule materialization") {
    Criterion crit(3, "series fixture derives exactly the six co-star/series facts");
    auto kb = load_fixture("series.dl");
    ACC_CHECK(crit, validate(kb).empty());

    const auto start = std::chrono::steady_clock::now();
    auto store = materialize(kb);
    const double elapsed = seconds_since(start);

    const std::set<GroundFact> expected = {
        GroundFact::role_fact("co-starredWith", "a", "d"),
        GroundFact::role_fact("co-starredWith", "b", "d"),
        GroundFact::role_fact("co-starredWith", "c", "d"),
        GroundFact::role_fact("starredIn", "a", "s"),
        GroundFact::role_fact("starredIn", "b", "s"),
        GroundFact::role_fact("starredIn", "c", "s"),
    };
    auto fresh = derived_only(kb, store);
    ACC_CHECK(crit, fresh == expected);

    auto cli = testcli::run_cli("materialize " + fixture_path("series.dl") + " --mode asserted");
    ACC_CHECK(crit, cli.exit_code == 0);
    for (const auto& fact : expected) {
        ACC_CHECK(crit, cli.out.find(fact.to_statement()) != std::string::npos);
    }
    ACC_CHECK(crit, elapsed < 1.0);
}

TEST_CASE("criterion 4: translation table golden files") {
    Criterion crit(4, "all twelve DL<->Turtle rows are byte-exact and parse back");
    const char* rows[] = {
        "same_as",           "different_from",    "subclass_of",
        "class_assertion",   "role_assertion",    "inverse_role_assertion",
        "subproperty_of",    "equivalent_class",  "same_individual_unicode",
        "property_chain",    "disjoint_properties", "transitive_property",
    };
    int count = 0;
    for (const char* row : rows) {
        CAPTURE(row);
        ++count;
        auto kb = parse_dl(slurp_fixture(std::string("goldens/") + row + ".dl"));
        const std::string golden = slurp_fixture(std::string("goldens/") + row + ".ttl");
        ACC_CHECK(crit, to_turtle_text(kb) == golden);
        auto back = from_turtle(golden);
        ACC_CHECK(crit, back.diagnostics.empty());
        ACC_CHECK(crit, back.kb == kb);
    }
    ACC_CHECK(crit, count == 12);
    // the unicode row really is the unicode individual
    ACC_CHECK(crit, slurp_fixture("goldens/same_individual_unicode.ttl").find("房仕龍") !=
                        std::string::npos);
}

TEST_CASE("criterion 5: differential soundness on the ALC corpus") {
    Criterion crit(5, "tableau verdicts equal oracle verdicts on 500 random ALC KBs");
    const auto start = std::chrono::steady_clock::now();
    int disagreements = 0, sat = 0, unsat = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        testgen::Rng rng(100000 + seed);
        auto kb = testgen::random_alc_kb(rng);
        auto verdict = is_consistent(kb);
        REQUIRE(verdict.outcome != TableauOutcome::Inconclusive);
        std::optional<Interpretation> model;
        try {
            model = find_model(kb, 8);
        } catch (const BudgetExceededError&) {
            ++disagreements;
            CHECK_MESSAGE(false, "oracle budget exceeded: ", serialize_dl(kb));
            continue;
        }
        (verdict.satisfiable() ? sat : unsat) += 1;
        if (verdict.satisfiable() != model.has_value()) {
            ++disagreements;
            CHECK_MESSAGE(false, "disagreement on seed ", seed, "\n", serialize_dl(kb));
        }
    }
    const double elapsed = seconds_since(start);
    ACC_CHECK(crit, disagreements == 0);
    ACC_CHECK(crit, sat > 0);
    ACC_CHECK(crit, unsat > 0);
    ACC_CHECK(crit, elapsed < 300.0);
    MESSAGE("corpus: ", sat, " satisfiable, ", unsat, " unsatisfiable, ", elapsed, "s");
}

TEST_CASE("criterion 6: one-directional check on the full fragment") {
    Criterion crit(6, "every oracle model on 200 random full-fragment KBs is tableau-sat");
    int violations = 0, with_model = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testgen::Rng rng(200000 + seed);
        auto kb = testgen::random_full_kb(rng);
        std::optional<Interpretation> model;
        try {
            model = find_model(kb, 6);
        } catch (const BudgetExceededError&) {
            continue; // no model certificate, nothing to compare
        }
        if (!model) continue;
        ++with_model;
        auto verdict = is_consistent(kb);
        if (!verdict.satisfiable()) {
            ++violations;
            CHECK_MESSAGE(false, "oracle found a model but the tableau says no: seed ", seed,
                          "\n", serialize_dl(kb));
        }
    }
    ACC_CHECK(crit, violations == 0);
    ACC_CHECK(crit, with_model >= 100);
    MESSAGE("models found for ", with_model, " of 200 KBs");
}

TEST_CASE("criterion 7: property suites") {
    Criterion crit(7, "normalization, closure, regularity, materialization and round trips");

    // nnf idempotence and the duality cases
    ACC_CHECK(crit, structurally_equal(nnf(parse_concept("NOT (C AND D)")),
                                       parse_concept("NOT C OR NOT D")));
    ACC_CHECK(crit, structurally_equal(nnf(parse_concept("NOT (r SOME C)")),
                                       parse_concept("r ONLY NOT C")));
    ACC_CHECK(crit, structurally_equal(nnf(parse_concept("NOT (MAX 2 r C)")),
                                       parse_concept("MIN 3 r C")));
    {
        testgen::Rng rng(7001);
        for (int i = 0; i < 100; ++i) {
            auto c = testgen::random_full_concept(rng, 3);
            ACC_CHECK(crit, structurally_equal(nnf(c), nnf(nnf(c))));
        }
    }

    // role closure is a fixpoint
    {
        auto kb = parse_dl("r SUBROLE s.\ns SUBROLE t.\nu EQUIVROLE r.\na r b.");
        auto closure = role_closure(kb);
        bool fixpoint = true;
        for (const auto& [sub, sups] : closure.supers) {
            for (const auto& mid : sups) {
                for (const auto& sup : closure.supers.at(mid)) {
                    fixpoint = fixpoint && closure.subsumed(sub, sup);
                }
            }
        }
        ACC_CHECK(crit, fixpoint);
    }

    // regularity accepts the published RBox forms and rejects the cycle
    ACC_CHECK(crit, check_regularity(load_fixture("film_rbox.dl").rbox()).regular);
    ACC_CHECK(crit,
              !check_regularity(parse_dl("r o s SUBROLE r.\ns o r SUBROLE s.").rbox()).regular);

    // materialization: idempotence, monotonicity, named individuals only
    {
        auto kb = load_fixture("series.dl");
        auto store = materialize(kb);
        std::vector<Axiom> axioms = kb.all_axioms();
        for (const auto& f : store.facts) {
            if (f.kind == GroundFact::Kind::Concept) {
                axioms.push_back(Axiom::concept_assertion(atomic(f.predicate), f.subject));
            } else {
                axioms.push_back(
                    Axiom::role_assertion(RoleExpr::named(f.predicate), f.subject, f.object));
            }
        }
        KnowledgeBase extended(axioms, kb.rules());
        ACC_CHECK(crit, materialize(extended).facts == store.facts);

        axioms.push_back(Axiom::role_assertion(RoleExpr::named("starredIn"), "d", "m"));
        auto grown = materialize(KnowledgeBase(axioms, kb.rules()));
        bool monotone = true;
        for (const auto& f : store.facts) monotone = monotone && grown.facts.count(f) > 0;
        ACC_CHECK(crit, monotone);

        bool named_only = true;
        for (const auto& f : grown.facts) {
            named_only = named_only && kb.signature().individuals.count(f.subject) > 0;
        }
        ACC_CHECK(crit, named_only);
    }

    // classify/subsumes reachability coherence
    {
        testgen::Rng rng(7002);
        bool coherent = true;
        for (int i = 0; i < 6; ++i) {
            auto kb = testgen::random_alc_kb(rng);
            if (!is_consistent(kb).satisfiable()) continue;
            auto hierarchy = classify(kb);
            for (const auto& a : kb.signature().concepts) {
                for (const auto& b : kb.signature().concepts) {
                    coherent = coherent &&
                               hierarchy.below(a, b) == subsumes(kb, atomic(b), atomic(a));
                }
            }
        }
        ACC_CHECK(crit, coherent);
    }

    // parse/serialize and .dl <-> .ttl round trips
    {
        testgen::Rng rng(7003);
        bool round_trips = true;
        for (int i = 0; i < 60; ++i) {
            auto kb = testgen::random_syntax_kb(rng);
            round_trips = round_trips && parse_dl(serialize_dl(kb)) == kb;
            auto back = from_turtle(to_turtle_text(kb));
            round_trips = round_trips && back.kb == KnowledgeBase(kb.all_axioms(), {});
        }
        ACC_CHECK(crit, round_trips);
    }
}

TEST_CASE("criterion 8: byte-identical CLI runs") {
    Criterion crit(8, "repeated CLI runs over every fixture are byte-identical");
    const char* fixtures[] = {"actors.dl",    "award_winners.dl", "series.dl", "film_tbox.dl",
                              "film_abox.dl", "film_rbox.dl",     "empty.dl"};
    int invocations = 0;
    for (const char* fixture : fixtures) {
        const std::string path = fixture_path(fixture);
        const std::string commands[] = {
            "validate " + path,
            "check " + path + " --trace",
            "classify " + path,
            "realize " + path,
            "materialize " + path + " --mode asserted --trace",
            "materialize " + path + " --mode entailment",
            "oracle " + path + " --oracle-bound 2",
        };
        for (const auto& command : commands) {
            CAPTURE(command);
            auto first = testcli::run_cli(command);
            auto second = testcli::run_cli(command);
            ++invocations;
            ACC_CHECK(crit, first.exit_code == second.exit_code);
            ACC_CHECK(crit, first.out == second.out);
            ACC_CHECK(crit, first.err == second.err);
        }
        // file-level convert round trip: a.dl -> b.ttl -> c.dl, c equals a
        const std::string ttl = "/tmp/tkb_accept_" + std::string(fixture) + ".ttl";
        const std::string dl2 = "/tmp/tkb_accept_" + std::string(fixture) + ".dl";
        auto conv1 = testcli::run_cli("convert " + path + " " + ttl);
        auto conv2 = testcli::run_cli("convert " + ttl + " " + dl2);
        ACC_CHECK(crit, conv1.exit_code == 0);
        ACC_CHECK(crit, conv2.exit_code == 0);
        auto original = parse_dl(slurp_fixture(fixture));
        auto converted = parse_dl(testcli::slurp(dl2));
        ACC_CHECK(crit, KnowledgeBase(original.all_axioms(), {}) == converted);
    }
    ACC_CHECK(crit, invocations == 49);
}
