#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/generators.hpp"
#include "support/run_cli.hpp"
#include "tkb/errors.hpp"
#include "tkb/oracle.hpp"
#include "tkb/parser.hpp"
#include "tkb/tableau.hpp"

using namespace tkb;

namespace {

KnowledgeBase load_fixture(const std::string& name) {
    const std::string path = testcli::fixtures_dir() + "/" + name;
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dl(buffer.str());
}

} // namespace

TEST_CASE("the active-actor ontology is satisfiable after one backtrack") {
    auto kb = load_fixture("actors.dl");
    auto verdict = is_consistent(kb);
    CHECK(verdict.outcome == TableauOutcome::Satisfiable);
    REQUIRE(verdict.model.has_value());
    CHECK(verdict.backtracks == 1);
    CHECK_FALSE(verdict.clash_trace.size());
    std::size_t backtrack_lines = 0;
    for (const auto& line : verdict.trace) {
        if (line.rfind("backtrack", 0) == 0) ++backtrack_lines;
    }
    CHECK(backtrack_lines == 1);
}

TEST_CASE("an atomic contradiction is a clash") {
    auto verdict = is_consistent(parse_dl("a : C AND NOT C."));
    CHECK(verdict.outcome == TableauOutcome::Unsatisfiable);
    REQUIRE_FALSE(verdict.clash_trace.empty());
    CHECK(verdict.clash_trace.back().rfind("clash atomic", 0) == 0);
    CHECK_FALSE(verdict.model.has_value());
}

TEST_CASE("disjoint roles clash on a shared edge") {
    auto verdict = is_consistent(
        parse_dl("DIS parentOf childOf.\na parentOf b.\na childOf b."));
    CHECK(verdict.outcome == TableauOutcome::Unsatisfiable);
    REQUIRE_FALSE(verdict.clash_trace.empty());
    CHECK(verdict.clash_trace.back().find("disjoint-roles") != std::string::npos);
}

TEST_CASE("satisfiability of simple concepts") {
    KnowledgeBase empty;
    CHECK(is_satisfiable_concept(empty, top()).satisfiable());
    CHECK_FALSE(is_satisfiable_concept(empty, bottom()).satisfiable());
    auto kb = load_fixture("film_tbox.dl");
    CHECK(is_satisfiable_concept(kb, parse_concept("Movie AND liveAction")).satisfiable());
}

TEST_CASE("subsumption over the film TBox") {
    auto kb = load_fixture("film_tbox.dl");
    CHECK(subsumes(kb, atomic("Movie"), atomic("liveAction")));
    CHECK_FALSE(subsumes(kb, atomic("liveAction"), atomic("Movie")));
    CHECK(subsumes(kb, atomic("Lector"), atomic("Narrator")));
    CHECK(subsumes(kb, atomic("Narrator"), atomic("Lector")));
    CHECK(subsumes(kb, top(), atomic("Movie")));
}

TEST_CASE("cyclic existentials terminate through blocking") {
    auto verdict = is_consistent(parse_dl("A SUBCLASS r SOME A.\na : A."));
    CHECK(verdict.outcome == TableauOutcome::Satisfiable);
    CHECK(verdict.nodes_created < 10);
}

TEST_CASE("transitive roles propagate value restrictions") {
    auto kb = parse_dl("TRANS r.\na r b.\nb r c.\na : r ONLY C.\nc : NOT C.");
    CHECK(is_consistent(kb).outcome == TableauOutcome::Unsatisfiable);
    auto fine = parse_dl("a r b.\nb r c.\na : r ONLY C.\nc : NOT C.");
    CHECK(is_consistent(fine).outcome == TableauOutcome::Satisfiable); // r not transitive
}

TEST_CASE("role hierarchy feeds value restrictions") {
    auto kb = parse_dl("acts SUBROLE lives.\na acts b.\na : lives ONLY C.\nb : NOT C.");
    CHECK(is_consistent(kb).outcome == TableauOutcome::Unsatisfiable);
}

TEST_CASE("at-most restrictions merge or clash") {
    auto merge = parse_dl("a r b.\na r c.\na : MAX 1 r TOP.");
    CHECK(is_consistent(merge).outcome == TableauOutcome::Satisfiable);

    auto clash = parse_dl("a r b.\na r c.\nb DIFF c.\na : MAX 1 r TOP.");
    auto verdict = is_consistent(clash);
    CHECK(verdict.outcome == TableauOutcome::Unsatisfiable);

    auto counted = parse_dl("a : (MIN 2 r C) AND (MAX 1 r C).");
    CHECK(is_consistent(counted).outcome == TableauOutcome::Unsatisfiable);

    auto fits = parse_dl("a : (MIN 2 r C) AND (MAX 2 r C).");
    CHECK(is_consistent(fits).outcome == TableauOutcome::Satisfiable);
}

TEST_CASE("the choose rule decides filler membership for counting") {
    // b and c are r-neighbors with unknown C-status; MAX 1 r C must still
    // hold once one of them is forced into C.
    auto kb = parse_dl("a r b.\na r c.\nb DIFF c.\nb : C.\nc : C.\na : MAX 1 r C.");
    CHECK(is_consistent(kb).outcome == TableauOutcome::Unsatisfiable);
    auto ok = parse_dl("a r b.\na r c.\nb DIFF c.\nb : C.\na : MAX 1 r C.");
    CHECK(is_consistent(ok).outcome == TableauOutcome::Satisfiable);
}

TEST_CASE("inverse roles propagate backwards") {
    auto kb = parse_dl("a r b.\nb : INV(r) ONLY C.\na : NOT C.");
    CHECK(is_consistent(kb).outcome == TableauOutcome::Unsatisfiable);
}

TEST_CASE("self restrictions interact with irreflexivity and asymmetry") {
    CHECK(is_consistent(parse_dl("a : r SELF.")).outcome == TableauOutcome::Satisfiable);
    CHECK(is_consistent(parse_dl("IRR r.\na : r SELF.")).outcome ==
          TableauOutcome::Unsatisfiable);
    CHECK(is_consistent(parse_dl("ASY r.\na r b.\nb r a.")).outcome ==
          TableauOutcome::Unsatisfiable);
    CHECK(is_consistent(parse_dl("ASY r.\na r b.")).outcome == TableauOutcome::Satisfiable);
    CHECK(is_consistent(parse_dl("a : NOT (r SELF).\na r a.")).outcome ==
          TableauOutcome::Unsatisfiable);
}

TEST_CASE("reflexive roles add loops everywhere") {
    auto kb = parse_dl("REF r.\na : r ONLY C.\na : NOT C.");
    CHECK(is_consistent(kb).outcome == TableauOutcome::Unsatisfiable);
}

TEST_CASE("negated role assertions forbid matching edges") {
    CHECK(is_consistent(parse_dl("a NOT r b.\na r b.")).outcome ==
          TableauOutcome::Unsatisfiable);
    // a subrole edge implies the forbidden role
    CHECK(is_consistent(parse_dl("s SUBROLE r.\na NOT r b.\na s b.")).outcome ==
          TableauOutcome::Unsatisfiable);
    CHECK(is_consistent(parse_dl("a NOT r b.\na : r SOME TOP.")).outcome ==
          TableauOutcome::Satisfiable);
}

TEST_CASE("nominals merge with their named node") {
    auto kb = parse_dl("b : ONEOF{a}.\nb : D.\na : C.\nb : NOT C.");
    CHECK(is_consistent(kb).outcome == TableauOutcome::Unsatisfiable);
    auto ok = parse_dl("b : ONEOF{a}.\nb : D.\na : C.");
    auto verdict = is_consistent(ok);
    CHECK(verdict.outcome == TableauOutcome::Satisfiable);
    // multi-member nominals branch
    auto multi = parse_dl("x : ONEOF{a, b}.\na : C.\nb : C.\nx : NOT C.");
    CHECK(is_consistent(multi).outcome == TableauOutcome::Unsatisfiable);
    auto pick = parse_dl("x : ONEOF{a, b}.\na : C.\nx : NOT C.");
    CHECK(is_consistent(pick).outcome == TableauOutcome::Satisfiable);
}

TEST_CASE("same and different individuals interact") {
    CHECK(is_consistent(parse_dl("a SAME b.\na DIFF b.")).outcome ==
          TableauOutcome::Unsatisfiable);
    CHECK(is_consistent(parse_dl("a SAME b.\nb : C.\na : NOT C.")).outcome ==
          TableauOutcome::Unsatisfiable);
}

TEST_CASE("verdicts and traces are deterministic") {
    auto kb = load_fixture("actors.dl");
    auto v1 = is_consistent(kb);
    auto v2 = is_consistent(kb);
    CHECK(v1.outcome == v2.outcome);
    CHECK(v1.trace == v2.trace);
    CHECK(v1.backtracks == v2.backtracks);
    REQUIRE(v1.model.has_value());
    CHECK(v1.model->to_text() == v2.model->to_text());
}

TEST_CASE("the node cap yields an inconclusive status, never a verdict") {
    TableauOptions tiny;
    tiny.max_nodes = 2;
    auto verdict = is_consistent(
        parse_dl("A SUBCLASS r SOME B.\nB SUBCLASS s SOME A.\na : A.\nb : A.\nc : A."), tiny);
    CHECK(verdict.outcome == TableauOutcome::Inconclusive);
    CHECK_FALSE(verdict.model.has_value());
    CHECK(verdict.clash_trace.empty());
}

TEST_CASE("nominal-inverse-number combinations are flagged possibly incomplete") {
    auto kb = parse_dl("A SUBCLASS ONEOF{a}.\nB SUBCLASS MAX 1 INV(r) A.\nx : B.");
    auto verdict = is_consistent(kb);
    CHECK(verdict.possibly_incomplete);
    CHECK_FALSE(verdict.incompleteness_note.empty());
    auto plain = is_consistent(parse_dl("a : A."));
    CHECK_FALSE(plain.possibly_incomplete);
}

TEST_CASE("the universal role is rejected by reasoning") {
    CHECK_THROWS_AS(is_consistent(parse_dl("a : UNIVERSAL SOME C.")),
                    UnsupportedConstructError);
}

TEST_CASE("tableau agrees with the oracle on a quick ALC sample") {
    testgen::Rng rng(2024);
    for (int i = 0; i < 60; ++i) {
        auto kb = testgen::random_alc_kb(rng);
        auto verdict = is_consistent(kb);
        REQUIRE(verdict.outcome != TableauOutcome::Inconclusive);
        auto model = find_model(kb, 6);
        CHECK_MESSAGE(verdict.satisfiable() == model.has_value(), serialize_dl(kb));
    }
}
