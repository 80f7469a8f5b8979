#include <doctest.h>

#include "tkb/ast.hpp"
#include "tkb/parser.hpp"

using namespace tkb;

TEST_CASE("conjunction flattens, deduplicates and collapses") {
    auto a = atomic("A"), b = atomic("B");
    auto nested = conjunction({conjunction({a, b}), a});
    REQUIRE(nested->kind() == ConceptKind::And);
    CHECK(nested->args().size() == 2);
    CHECK(structurally_equal(nested->args()[0], a));
    CHECK(structurally_equal(nested->args()[1], b));

    CHECK(structurally_equal(conjunction({a, a}), a));
    CHECK(conjunction({})->kind() == ConceptKind::Top);
    CHECK(structurally_equal(conjunction({a, top()}), a));
    CHECK(conjunction({a, bottom()})->kind() == ConceptKind::Bottom);
}

TEST_CASE("disjunction mirrors conjunction normalization") {
    auto a = atomic("A"), b = atomic("B");
    auto flat = disjunction({a, disjunction({b, a})});
    REQUIRE(flat->kind() == ConceptKind::Or);
    CHECK(flat->args().size() == 2);
    CHECK(disjunction({})->kind() == ConceptKind::Bottom);
    CHECK(structurally_equal(disjunction({a, bottom()}), a));
    CHECK(disjunction({a, top()})->kind() == ConceptKind::Top);
}

TEST_CASE("role inversion is an involution") {
    auto r = RoleExpr::named("r");
    CHECK(r.inverse().inverse() == r);
    CHECK(r.inverse().is_inverse());
    CHECK(RoleExpr::universal().inverse() == RoleExpr::universal());
}

TEST_CASE("nominal sets are sorted, deduplicated and nonempty") {
    auto n = nominal({"b", "a", "b"});
    CHECK(n->individuals() == std::vector<std::string>{"a", "b"});
    CHECK_THROWS(nominal({}));
}

TEST_CASE("structural compare is a strict total order on samples") {
    std::vector<ConceptPtr> samples = {
        top(),
        bottom(),
        atomic("A"),
        atomic("B"),
        negation(atomic("A")),
        conjunction({atomic("A"), atomic("B")}),
        disjunction({atomic("A"), atomic("B")}),
        exists(RoleExpr::named("r"), atomic("A")),
        forall(RoleExpr::named("r"), atomic("A")),
        at_least(2, RoleExpr::named("r"), atomic("A")),
        at_most(1, RoleExpr::inverse_of("r"), top()),
        self_restriction(RoleExpr::named("r")),
        nominal({"a"}),
    };
    for (const auto& x : samples) {
        CHECK(compare(x, x) == 0);
        for (const auto& y : samples) {
            CHECK(compare(x, y) == -compare(y, x));
            if (&x != &y && compare(x, y) == 0) CHECK(structurally_equal(x, y));
        }
    }
}

TEST_CASE("printer output parses back to the same expression") {
    std::vector<ConceptPtr> samples = {
        negation(conjunction({atomic("C"), atomic("D")})),
        disjunction({conjunction({atomic("A"), atomic("B")}), atomic("C")}),
        conjunction({disjunction({atomic("A"), atomic("B")}), atomic("C")}),
        exists(RoleExpr::named("r"), conjunction({atomic("A"), atomic("B")})),
        forall(RoleExpr::inverse_of("r"), negation(atomic("A"))),
        at_most(0, RoleExpr::named("r"), nominal({"a", "b"})),
        negation(self_restriction(RoleExpr::named("r"))),
    };
    for (const auto& c : samples) {
        auto reparsed = parse_concept(to_string(c));
        CHECK_MESSAGE(structurally_equal(c, reparsed), to_string(c));
    }
}
