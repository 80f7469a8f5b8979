#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/generators.hpp"
#include "support/run_cli.hpp"
#include "tkb/errors.hpp"
#include "tkb/parser.hpp"
#include "tkb/reasoner.hpp"

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

TEST_CASE("entails reproduces the derived series facts") {
    auto kb = load_fixture("series.dl");
    for (const char* who : {"a", "b", "c"}) {
        CHECK(entails(kb, Axiom::role_assertion(RoleExpr::named("starredIn"), who, "s")));
        CHECK(entails(kb,
                      Axiom::role_assertion(RoleExpr::named("co-starredWith"), who, "d")));
    }
    CHECK_FALSE(entails(kb, Axiom::role_assertion(RoleExpr::named("starredIn"), "d", "m")));
    CHECK_FALSE(
        entails(kb, Axiom::role_assertion(RoleExpr::named("co-starredWith"), "d", "d")));
}

TEST_CASE("every concept includes itself") {
    auto kb = load_fixture("film_tbox.dl");
    CHECK(entails(kb, Axiom::concept_inclusion(atomic("Movie"), atomic("Movie"))));
    CHECK(entails(KnowledgeBase(), Axiom::concept_inclusion(parse_concept("r SOME (A AND B)"),
                                                            parse_concept("r SOME (A AND B)"))));
}

TEST_CASE("the existential definition entails the award winner") {
    auto kb = load_fixture("award_winners.dl");
    CHECK(entails(kb, Axiom::concept_assertion(atomic("AwardWinnerActor"), "a")));
    CHECK_FALSE(entails(kb, Axiom::concept_assertion(atomic("AwardWinnerActor"), "b")));
    CHECK(entails(kb, Axiom::concept_assertion(atomic("Actor"), "a")));
}

TEST_CASE("unsupported axiom kinds are rejected by entails") {
    CHECK_THROWS_AS(entails(KnowledgeBase(), Axiom::transitive_role(RoleExpr::named("r"))),
                    UnsupportedConstructError);
}

TEST_CASE("classification of the film TBox") {
    auto hierarchy = classify(load_fixture("film_tbox.dl"));
    CHECK_FALSE(hierarchy.inconsistent);
    CHECK(hierarchy.below("liveAction", "Movie"));
    CHECK_FALSE(hierarchy.below("Movie", "liveAction"));
    CHECK(hierarchy.node_of("Narrator") == hierarchy.node_of("Lector"));
    CHECK(hierarchy.below("Movie", kTopClass));
    CHECK(hierarchy.below(kBottomClass, "liveAction"));
    CHECK(hierarchy.to_text() == "TOP\n"
                                 "  Lector = Narrator\n"
                                 "    BOTTOM\n"
                                 "  Movie\n"
                                 "    liveAction\n"
                                 "      BOTTOM\n");
}

TEST_CASE("an empty TBox classifies names directly under top") {
    auto hierarchy = classify(parse_dl("a : A.\nb : B."));
    CHECK(hierarchy.below("A", kTopClass));
    CHECK(hierarchy.below("B", kTopClass));
    CHECK_FALSE(hierarchy.below("A", "B"));
    CHECK_FALSE(hierarchy.below("B", "A"));
}

TEST_CASE("unsatisfiable concepts land in the bottom class") {
    auto hierarchy = classify(parse_dl("C SUBCLASS BOTTOM.\nD SUBCLASS C."));
    CHECK(hierarchy.node_of("C") == hierarchy.node_of(kBottomClass));
    CHECK(hierarchy.node_of("D") == hierarchy.node_of(kBottomClass));
}

TEST_CASE("inconsistent knowledge bases classify to the flagged degenerate hierarchy") {
    auto hierarchy = classify(parse_dl("a : C AND NOT C.\nb : D."));
    CHECK(hierarchy.inconsistent);
    CHECK(hierarchy.node_of("C") == hierarchy.node_of(kBottomClass));
    CHECK(hierarchy.node_of("D") == hierarchy.node_of(kBottomClass));
    CHECK(hierarchy.below("C", kTopClass));
}

TEST_CASE("hierarchy reachability coincides with subsumption") {
    testgen::Rng rng(31337);
    int pairs = 0;
    for (int i = 0; i < 12; ++i) {
        auto kb = testgen::random_alc_kb(rng);
        if (!is_consistent(kb).satisfiable()) continue;
        auto hierarchy = classify(kb);
        for (const auto& a : kb.signature().concepts) {
            for (const auto& b : kb.signature().concepts) {
                ++pairs;
                CHECK_MESSAGE(hierarchy.below(a, b) == subsumes(kb, atomic(b), atomic(a)),
                              serialize_dl(kb), " pair ", a, " ", b);
            }
        }
    }
    CHECK(pairs > 0);
}

TEST_CASE("classification is invariant under axiom order") {
    auto forward = classify(parse_dl("A SUBCLASS B.\nB SUBCLASS C.\nD EQUIV C.\na : A."));
    auto backward = classify(parse_dl("D EQUIV C.\nB SUBCLASS C.\nA SUBCLASS B.\na : A."));
    CHECK(forward.to_text() == backward.to_text());
}

TEST_CASE("realization returns the most specific memberships") {
    auto realized = realize(load_fixture("award_winners.dl"));
    // AwardWinnerActor and Actor are incomparable concepts here, so both are
    // most specific for a; the definition keeps them side by side.
    CHECK(realized.at("a") == std::set<std::string>{"Actor", "AwardWinnerActor"});
    CHECK(realized.at("b") == std::set<std::string>{"Actor"});
    CHECK(realized.at("c") == std::set<std::string>{"Actor"});
    CHECK(realized.at("d") == std::set<std::string>{"Award"});
}

TEST_CASE("realization drops entailed superconcepts") {
    auto realized = realize(parse_dl("liveAction SUBCLASS Movie.\nz : liveAction."));
    CHECK(realized.at("z") == std::set<std::string>{"liveAction"});
}

TEST_CASE("realization of an empty ABox is empty") {
    CHECK(realize(parse_dl("A SUBCLASS B.")).empty());
}

TEST_CASE("realization of the film ABox") {
    auto realized = realize(load_fixture("film_abox.dl"));
    CHECK(realized.at("Zambezia") == std::set<std::string>{"computerAnimation"});
    CHECK(realized.at("RobinWilliams").empty());
    // merged individuals share their class memberships
    CHECK(realized.count("房仕龍"));
    CHECK(realized.at("房仕龍") == realized.at("JackieChan"));
}

TEST_CASE("every realized membership is entailed") {
    testgen::Rng rng(99);
    for (int i = 0; i < 8; ++i) {
        auto kb = testgen::random_alc_kb(rng);
        if (!is_consistent(kb).satisfiable()) continue;
        for (const auto& [individual, concepts] : realize(kb)) {
            for (const auto& c : concepts) {
                CHECK(entails(kb, Axiom::concept_assertion(atomic(c), individual)));
            }
        }
    }
}

TEST_CASE("hierarchies export to DL text") {
    auto hierarchy = classify(load_fixture("film_tbox.dl"));
    auto text = hierarchy.to_dl_text();
    CHECK(text.find("liveAction SUBCLASS Movie.") != std::string::npos);
    CHECK(text.find("Movie SUBCLASS TOP.") != std::string::npos);
}
