#include <doctest.h>

#include "support/generators.hpp"
#include "tkb/errors.hpp"
#include "tkb/parser.hpp"

using namespace tkb;

TEST_CASE("equivalence statement parses") {
    auto kb = parse_dl("Narrator EQUIV Lector.");
    REQUIRE(kb.tbox().size() == 1);
    CHECK(kb.tbox()[0] ==
          Axiom::concept_equivalence(atomic("Narrator"), atomic("Lector")));
}

TEST_CASE("empty input yields an empty knowledge base") {
    auto kb = parse_dl("");
    CHECK(kb.empty());
    CHECK(kb.signature().concepts.empty());
    CHECK(kb.signature().roles.empty());
    CHECK(kb.signature().individuals.empty());
    CHECK(kb.signature().non_dl_predicates.empty());
}

TEST_CASE("role chain statement parses to a complex inclusion") {
    auto kb = parse_dl("partOf o starredIn SUBROLE co-starredWith.");
    REQUIRE(kb.rbox().size() == 1);
    CHECK(kb.rbox()[0] ==
          Axiom::complex_role_inclusion(
              {RoleExpr::named("partOf"), RoleExpr::named("starredIn")},
              RoleExpr::named("co-starredWith")));
}

TEST_CASE("signature collects names per category") {
    auto kb = parse_dl("Zambezia : computerAnimation.\n"
                       "Unforgiven directedBy ClintEastwood.\n"
                       "房仕龍 SAME JackieChan.\n"
                       "RobinWilliams DIFF RobbieWilliams.\n");
    const std::set<std::string> expected = {"Zambezia",       "Unforgiven",    "ClintEastwood",
                                            "房仕龍",         "JackieChan",    "RobinWilliams",
                                            "RobbieWilliams"};
    CHECK(kb.signature().individuals == expected);
    CHECK(signature_of(kb) == kb.signature());

    auto small = parse_dl("a won d.");
    CHECK(small.signature().roles == std::set<std::string>{"won"});
    CHECK(small.signature().individuals == std::set<std::string>{"a", "d"});
}

TEST_CASE("rule statements parse with classification against the axioms") {
    auto kb = parse_dl("AwardWinnerActor EQUIV won SOME Award.\n"
                       "a won d.\n"
                       "AwardWinnerActor(?x) <- won(?x, ?y).\n");
    REQUIRE(kb.rules().size() == 1);
    const auto& rule = kb.rules()[0];
    CHECK(rule.head.kind == Atom::Kind::Concept);
    REQUIRE(rule.body.size() == 1);
    CHECK(rule.body[0].kind == Atom::Kind::Role);
    CHECK(rule.body[0].predicate == "won");
}

TEST_CASE("body-only predicates classify as non-DL") {
    auto kb = parse_dl("A(?x) <- touched(?x).");
    REQUIRE(kb.rules().size() == 1);
    CHECK(kb.rules()[0].head.kind == Atom::Kind::Concept); // declared by the unary head
    CHECK(kb.rules()[0].body[0].kind == Atom::Kind::NonDl);
    CHECK(kb.signature().non_dl_predicates == std::set<std::string>{"touched"});
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_dl("liveAction SUBCLASS Movie.\nNarrator EQUIV .\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 16);
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
}

TEST_CASE("a name cannot be both concept and role") {
    CHECK_THROWS_WITH_AS(parse_dl("a : Movie.\nx Movie y.\n"),
                         doctest::Contains("name collision"), Error);
}

TEST_CASE("concept predicates reject wrong arity") {
    CHECK_THROWS_WITH_AS(parse_dl("a : Movie.\nMovie(?x, ?y) <- .\n"),
                         doctest::Contains("arity"), Error);
}

TEST_CASE("cardinalities above 2^31-1 are parse errors") {
    CHECK_THROWS_AS(parse_dl("X SUBCLASS MIN 2147483648 r TOP."), ParseError);
    auto kb = parse_dl("X SUBCLASS MIN 2147483647 r TOP.");
    CHECK(kb.tbox().size() == 1);
}

TEST_CASE("the guard predicate name is reserved") {
    CHECK_THROWS_WITH_AS(parse_dl("a : O."), doctest::Contains("reserved"), Error);
}

TEST_CASE("parse of serialize is the identity on random knowledge bases") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        testgen::Rng rng(9000 + seed);
        auto kb = testgen::random_syntax_kb(rng);
        auto round = parse_dl(serialize_dl(kb));
        CHECK_MESSAGE(round == kb, "seed ", seed, "\n", serialize_dl(kb));
    }
}

TEST_CASE("statements normalize at construction") {
    auto kb = parse_dl("a : A AND A AND TOP.");
    REQUIRE(kb.abox().size() == 1);
    CHECK(structurally_equal(kb.abox()[0].c1, atomic("A")));

    auto chain = parse_dl("basedOn o basedOn SUBROLE basedOn.");
    REQUIRE(chain.rbox().size() == 1);
    CHECK(chain.rbox()[0].kind == AxiomKind::TransitiveRole);
}

TEST_CASE("comments and unicode identifiers lex correctly") {
    auto kb = parse_dl("# a comment line\n房仕龍 : Actor. # trailing\n");
    REQUIRE(kb.abox().size() == 1);
    CHECK(kb.abox()[0].i1 == "房仕龍");
}
