#include <doctest.h>

#include "fixtures.hpp"
#include "simfrac/scheme.hpp"

using namespace simfrac;

TEST_CASE("diagonal scheme validates") {
    auto report = validate(fixtures::diag2());
    CHECK(report.ok);
    CHECK(report.violations.empty());
}

TEST_CASE("non-injective phi is reported with a witness") {
    // phi(a) = phi(b) = A
    FiniteScheme s{SymbolSet{{"0"}}, PointSet{{"a", "b"}}, PointSet{{"A"}},
                   {0, 0}, {{0, 0}}};
    auto report = validate(s);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule == "phi-not-injective");
    CHECK(report.violations[0].witness.find("a") != std::string::npos);
    CHECK(report.violations[0].witness.find("b") != std::string::npos);
}

TEST_CASE("non-surjective pi is reported per missed point") {
    FiniteScheme s{SymbolSet{{"0"}}, PointSet{{"a"}}, PointSet{{"A", "B"}},
                   {1}, {{0}}};
    auto report = validate(s);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].rule == "pi-not-surjective");
    CHECK(report.violations[0].witness.find("B") != std::string::npos);
}

TEST_CASE("validate is pure") {
    auto s = fixtures::nfi();
    auto r1 = validate(s);
    auto r2 = validate(s);
    CHECK(r1.ok == r2.ok);
    CHECK(r1.violations.size() == r2.violations.size());
}

TEST_CASE("essential part of the diagonal scheme is everything") {
    auto s = fixtures::diag2();
    CHECK(essential_part(s) == std::vector<int>{0, 1});
}

TEST_CASE("essential part singles out the glued point") {
    auto s = fixtures::nfi();
    CHECK(essential_part(s) == std::vector<int>{s.x0.require("a")});
}

TEST_CASE("disjoint symbol images have empty essential part") {
    // pi(0,.) and pi(1,.) hit disjoint halves of X1
    FiniteScheme s{SymbolSet{{"0", "1"}}, PointSet{{"a", "b"}},
                   PointSet{{"A", "B", "C", "D"}}, {0, 2},
                   {{0, 1}, {2, 3}}};
    REQUIRE(validate(s).ok);
    CHECK(essential_part(s).empty());
}

TEST_CASE("diagonal schemes are discrete") {
    for (int k : {2, 3, 4}) {
        auto [discrete, witness] = is_discrete(fixtures::diagonal(k));
        CHECK(discrete);
        CHECK_FALSE(witness.has_value());
    }
}

TEST_CASE("the glued scheme is not discrete, witnessed by its cell") {
    auto s = fixtures::nfi();
    auto [discrete, witness] = is_discrete(s);
    REQUIRE_FALSE(discrete);
    REQUIRE(witness.has_value());
    CHECK(witness->symbol == s.Y.require("0"));
    CHECK(witness->point_a == s.x1.require("A"));
    CHECK(witness->point_b == s.x1.require("b0"));
}

TEST_CASE("singleton scheme is discrete") {
    FiniteScheme s{SymbolSet{{"0"}}, PointSet{{"p"}}, PointSet{{"p"}}, {0}, {{0}}};
    CHECK(std::get<0>(is_discrete(s)));
}

TEST_CASE("empty essential part does not imply discreteness") {
    // |Y| = 1 makes cross-symbol identifications impossible, yet the single
    // cell is all of X1 and meets phi(X0) twice.
    FiniteScheme s{SymbolSet{{"0"}}, PointSet{{"p", "q"}}, PointSet{{"P", "Q"}},
                   {0, 1}, {{0, 1}}};
    REQUIRE(validate(s).ok);
    CHECK(essential_part(s).empty());
    CHECK_FALSE(std::get<0>(is_discrete(s)));
}

TEST_CASE("structural errors throw instead of reporting") {
    CHECK_THROWS_AS(FiniteScheme(SymbolSet{{"0"}}, PointSet{{"a"}}, PointSet{{"A"}},
                                 {1}, {{0}}),
                    SchemeError); // phi image out of range
    CHECK_THROWS_AS(FiniteScheme(SymbolSet{{"0"}}, PointSet{{"a"}}, PointSet{{"A"}},
                                 {0}, {}),
                    SchemeError); // pi not total
}
