#include <random>
#include <set>

#include "doctest.h"
#include "knotcert/knotio.hpp"
#include "testutil.hpp"

using namespace knotcert;

namespace {
const char* kTrefoilPD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
const char* kFig8PD = "PD[X(8,4,1,3),X(6,1,7,2),X(4,8,5,7),X(2,5,3,6)]";
}  // namespace

TEST_CASE("parse_pd basics") {
    KnotDiagram d = parse_pd(kTrefoilPD);
    REQUIRE(d.crossings.size() == 3);
    CHECK(d.crossings[0] == Crossing{1, 4, 2, 5});
    CHECK(d.crossings[1] == Crossing{3, 6, 4, 1});
    CHECK(d.num_loops == 0);
    CHECK(validate(d).ok);

    KnotDiagram u = parse_pd("PD[] loops=1");
    CHECK(u.crossings.empty());
    CHECK(u.num_loops == 1);
    CHECK(validate(u).ok);

    KnotDiagram kink = parse_pd("PD[X(1,1,2,2)]");
    CHECK(validate(kink).ok);

    // whitespace-insensitive
    CHECK(parse_pd(" PD [ X(1,4,2,5) , X(3,6,4,1),X(5,2,6,3) ] ") == d);
}

TEST_CASE("parse_pd errors") {
    CHECK_THROWS_AS(parse_pd("QD[]"), SyntaxError);
    CHECK_THROWS_AS(parse_pd("PD[X(1,2,3)]"), SyntaxError);
    CHECK_THROWS_AS(parse_pd("PD[X(1,2,3,4)"), SyntaxError);
    CHECK_THROWS_AS(parse_pd("PD[] loops=x"), SyntaxError);
    CHECK_THROWS_AS(parse_pd("PD[X(1,4,2,5)] trailing"), SyntaxError);
    CHECK_THROWS_AS(parse_pd("PD[X(0,1,2,2)]"), LabelRangeError);
    // labels beyond 1..2n parse fine and are reported by validate
    ValidationReport r = validate(parse_pd("PD[X(1,4,2,7),X(3,6,4,1),X(5,2,6,3)]"));
    CHECK(!r.ok);
    bool has_range = false;
    for (const auto& i : r.issues) has_range |= (i.code == "label-range");
    CHECK(has_range);
}

TEST_CASE("validate reports problems without throwing") {
    // labels 1..4 appear once each, not twice
    KnotDiagram d = parse_pd("PD[X(1,2,3,4)]");
    ValidationReport r = validate(d);
    CHECK(!r.ok);
    REQUIRE(!r.issues.empty());
    CHECK(r.issues[0].code == "label-multiplicity");

    ValidationReport r2 = validate(parse_pd("PD[] loops=0"));
    CHECK(!r2.ok);
    CHECK(r2.issues[0].code == "empty-needs-loop");

    // valid multiplicities but broken under-strand continuation
    KnotDiagram d3;
    d3.crossings = {Crossing{1, 3, 2, 4}, Crossing{3, 1, 4, 2}};
    ValidationReport r3 = validate(d3);
    CHECK(!r3.ok);

    // loops beside crossings
    KnotDiagram d4 = parse_pd(kTrefoilPD);
    d4.num_loops = 1;
    CHECK(!validate(d4).ok);
}

TEST_CASE("validate accepts fixtures and rejects label mutations") {
    std::mt19937_64 rng(3);
    for (const auto& fx : testutil::prime_knot_table()) {
        KnotDiagram d = testutil::build_fixture(fx);
        REQUIRE(validate(d).ok);
        // single-field label mutations that change multiplicity must be caught
        for (int trial = 0; trial < 8; ++trial) {
            KnotDiagram m = d;
            std::size_t ci = rng() % m.crossings.size();
            std::uint32_t* slots[4] = {&m.crossings[ci].a, &m.crossings[ci].b, &m.crossings[ci].c,
                                       &m.crossings[ci].d};
            std::uint32_t* slot = slots[rng() % 4];
            std::uint32_t old = *slot;
            std::uint32_t neu = 1 + static_cast<std::uint32_t>(rng() % (2 * m.crossings.size()));
            if (neu == old) continue;
            *slot = neu;
            CHECK(!validate(m).ok);
        }
    }
}

TEST_CASE("render round-trips and canonical_bytes is stable") {
    KnotDiagram d = parse_pd(kTrefoilPD);
    CHECK(render(d) == kTrefoilPD);
    CHECK(parse_pd(render(d)) == d);
    CHECK(render(parse_pd("PD[] loops=1")) == "PD[] loops=1");

    // whitespace variants map to identical canonical bytes
    CHECK(canonical_bytes(parse_pd(" PD[ X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)] ")) ==
          canonical_bytes(d));
    // crossing order does not matter
    CHECK(canonical_bytes(parse_pd("PD[X(3,6,4,1),X(1,4,2,5),X(5,2,6,3)]")) ==
          canonical_bytes(d));
    // distinct knots get distinct bytes
    CHECK(canonical_bytes(parse_pd(kFig8PD)) != canonical_bytes(d));

    CHECK_THROWS_AS(canonical_bytes(parse_pd("PD[X(1,2,3,4)]")), InvalidDiagram);
}

TEST_CASE("canonical_bytes is injective on the fixture set") {
    std::set<std::string> seen;
    for (const auto& fx : testutil::prime_knot_table()) {
        auto bytes = canonical_bytes(testutil::build_fixture(fx));
        CHECK(seen.insert(bytes).second);
    }
}

TEST_CASE("round-trip parse(render(d)) == d across fixtures") {
    for (const auto& fx : testutil::prime_knot_table()) {
        KnotDiagram d = testutil::build_fixture(fx);
        CHECK(parse_pd(render(d)) == d);
    }
}

TEST_CASE("crossing signs") {
    KnotDiagram d = parse_pd(kTrefoilPD);
    // the standard table trefoil is the left-handed one: all negative
    for (std::size_t i = 0; i < 3; ++i) CHECK(crossing_sign(d, i) == -1);

    // braid closures: positive letters give positive crossings
    KnotDiagram t = parse_braid("strands=2 s1 s1 s1");
    for (std::size_t i = 0; i < 3; ++i) CHECK(crossing_sign(t, i) == +1);

    // cached sign matches recomputation
    for (std::size_t i = 0; i < 3; ++i) CHECK(t.crossings[i].sign == crossing_sign(t, i));
}

TEST_CASE("parse_braid basics") {
    KnotDiagram tre = parse_braid("strands=2 s1 s1 s1");
    CHECK(tre.crossings.size() == 3);
    CHECK(validate(tre).ok);

    KnotDiagram kink = parse_braid("strands=2 s1");
    CHECK(kink.crossings.size() == 1);
    CHECK(validate(kink).ok);

    KnotDiagram two = parse_braid("strands=3 s1 s2");
    CHECK(two.crossings.size() == 2);
    CHECK(validate(two).ok);

    KnotDiagram empty1 = parse_braid("strands=1");
    CHECK(empty1.crossings.empty());
    CHECK(empty1.num_loops == 1);
    CHECK(validate(empty1).ok);

    KnotDiagram neg = parse_braid("strands=3 s1 s2^-1 s1 s2^-1");
    CHECK(neg.crossings.size() == 4);
    CHECK(validate(neg).ok);
}

TEST_CASE("parse_braid errors") {
    CHECK_THROWS_AS(parse_braid("strands=2 s1 s1"), MultiComponentError);  // 2-component closure
    CHECK_THROWS_AS(parse_braid("strands=3 s1"), MultiComponentError);
    CHECK_THROWS_AS(parse_braid("strands=2"), MultiComponentError);
    CHECK_THROWS_AS(parse_braid("strands=2 s2"), SyntaxError);  // generator out of range
    CHECK_THROWS_AS(parse_braid("s1 s1 s1"), SyntaxError);      // missing header
    CHECK_THROWS_AS(parse_braid("strands=2 s1^2"), SyntaxError);
}
