#include <doctest.h>

#include <set>

#include "latorder/json_io.hpp"
#include "latorder/order_engine.hpp"
#include "test_util.hpp"

using namespace latorder;

namespace {

using FactPair = std::pair<std::string, std::string>;

std::set<FactPair> fact_pairs(const SaturationResult& r) {
    std::set<FactPair> out;
    for (const OrderFact& f : r.facts)
        out.insert({to_grid(r.class_set(f.lesser)),
                    to_grid(r.class_set(f.greater))});
    return out;
}

const LatticeSet kAtom{{0, 0}};
const LatticeSet kHDomino{{0, 0}, {1, 0}};
const LatticeSet kHTromino{{0, 0}, {1, 0}, {2, 0}};

}  // namespace

TEST_CASE("rule names round trip") {
    for (Rule r : kAllRules) {
        auto back = rule_from_name(rule_name(r));
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
    CHECK_FALSE(rule_from_name("VII").has_value());
}

TEST_CASE("atom below a domino via IIa") {
    const SaturationResult r = saturate(Universe::box(2, 1));
    CHECK(r.exhaustive);
    CHECK(r.has_fact(kAtom, kHDomino));
    CHECK_FALSE(r.has_fact(kHDomino, kAtom));
    REQUIRE(r.facts.size() == 1);
    CHECK(r.traces[0].rule == Rule::IIa);
    CHECK(verify_trace(r, 0));
}

TEST_CASE("domino below a line of three via IIIa") {
    const SaturationResult r = saturate(Universe::box(3, 1, {kHDomino}));
    CHECK(r.has_fact(kHDomino, kHTromino));
    const auto q = query(r, kHDomino, kHTromino);
    REQUIRE(q.verdict == QueryVerdict::Ordered);
    CHECK(r.traces[*q.fact].rule == Rule::IIIa);
    for (std::uint32_t i = 0; i < r.facts.size(); ++i) CHECK(verify_trace(r, i));
}

TEST_CASE("query verdicts") {
    const SaturationResult r = saturate(Universe::box(2, 1));
    CHECK(query(r, kAtom, kAtom).verdict == QueryVerdict::Equivalent);
    CHECK(query(r, kAtom, translate(kAtom, {7, -2})).verdict ==
          QueryVerdict::Equivalent);
    CHECK(query(r, kAtom, kHDomino).verdict == QueryVerdict::Ordered);
    CHECK(query(r, kHDomino, kAtom).verdict == QueryVerdict::Unknown);
    CHECK_THROWS_AS(query(r, LatticeSet{}, kAtom), std::invalid_argument);

    // Class-level invariance: only canonical forms matter.
    const auto a = query(r, translate(kAtom, {5, 5}),
                         translate(kHDomino, {-3, 2}));
    CHECK(a.verdict == QueryVerdict::Ordered);
}

TEST_CASE("derivation chains replay") {
    const SaturationResult r = saturate(Universe::box(3, 2));
    CHECK(r.exhaustive);
    for (std::uint32_t i = 0; i < r.facts.size(); ++i) {
        CHECK(verify_trace(r, i));
        CHECK(r.facts[i].lesser != r.facts[i].greater);
    }
    const auto q = query(r, kAtom, LatticeSet{{0, 0}, {1, 0}, {0, 1}});
    REQUIRE(q.verdict == QueryVerdict::Ordered);
    CHECK(!q.derivation.empty());
    CHECK(q.derivation.back() == *q.fact);
}

TEST_CASE("union property holds for every derived fact") {
    const SaturationResult r = saturate(Universe::box(3, 2));
    for (std::uint32_t i = 0; i < r.facts.size(); ++i) {
        const auto cover = check_union_property(r, i);
        CHECK(cover.holds);
        CHECK(!cover.shifts.empty());
    }
    const auto cover = check_union_property(kAtom, kHDomino);
    CHECK(cover.holds);
    CHECK(cover.shifts.size() == 2);
}

TEST_CASE("union property is necessary but not sufficient") {
    // The 5-point chain piece against two chained copies: coverable, yet no
    // order is derivable even by exhaustive saturation over subsets of d.
    const LatticeSet c{{0, 0}, {0, 1}, {1, 2}, {2, 0}, {2, 1}};
    const LatticeSet d = set_union(c, translate(c, {2, 0}));
    CHECK(check_union_property(c, d).holds);
    Universe u = Universe::subsets_of(d);
    u.seeds = {c};
    const SaturationResult r = saturate(u);
    CHECK(r.exhaustive);
    CHECK_FALSE(r.has_fact(c, d));
    CHECK(r.has_fact(kAtom, d));  // sanity: the closure is not empty
}

TEST_CASE("monotone fixpoint in box and rules") {
    const auto base = fact_pairs(saturate(Universe::box(2, 2)));
    const auto wider = fact_pairs(saturate(Universe::box(3, 2)));
    for (const FactPair& f : base) CHECK(wider.count(f) == 1);

    Universe no_five = Universe::box(3, 2);
    no_five.rules.disable(Rule::V);
    const auto fewer = fact_pairs(saturate(no_five));
    const auto all = fact_pairs(saturate(Universe::box(3, 2)));
    for (const FactPair& f : fewer) CHECK(all.count(f) == 1);
}

TEST_CASE("budget clipping is reported") {
    Universe u = Universe::box(3, 3);
    u.max_classes = 5;
    const SaturationResult r = saturate(u);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.class_count() <= 5);
}

TEST_CASE("early stop") {
    Universe u = Universe::box(3, 3);
    const SaturationResult r =
        saturate(u, std::make_pair(kAtom, kHDomino));
    CHECK(r.stopped_early);
    CHECK(r.has_fact(kAtom, kHDomino));
}

TEST_CASE("IIb is derivable from the other rules") {
    // A = {a2}, D = {a1, b1, a2}: with IIb disabled the fact still appears,
    // through IIa and the generalized rule V.
    const LatticeSet a{{0, 1}};
    const LatticeSet d{{0, 0}, {1, 0}, {0, 1}};
    RuleSet without = RuleSet::all();
    without.disable(Rule::IIb);
    CHECK(derivable(a, d, RuleSet::all()));
    CHECK(derivable(a, d, without));

    // With IIa disabled nothing at all is derivable.
    RuleSet no_iia = RuleSet::all();
    no_iia.disable(Rule::IIa);
    Universe u = Universe::subsets_of(d);
    u.rules = no_iia;
    CHECK(saturate(u).facts.empty());
}

TEST_CASE("strict rule V still carries the IIb example") {
    const LatticeSet a{{0, 1}};
    const LatticeSet d{{0, 0}, {1, 0}, {0, 1}};
    Universe u = Universe::subsets_of(d);
    u.rules.disable(Rule::IIb);
    u.strict_rule_v = true;
    const SaturationResult r = saturate(u);
    CHECK(r.has_fact(a, d));
}

TEST_CASE("small independence rows") {
    // The expensive rows run in the acceptance suite; here the cheap ones.
    const auto rows = independence_examples();
    for (const auto& row : rows)
        for (const auto& ex : row.examples) {
            CHECK(!ex.a.empty());
            CHECK(set_union(ex.a, ex.d) == ex.d);  // A is a subset of D
        }

    RuleSet no_iia = RuleSet::all();
    no_iia.disable(Rule::IIa);
    CHECK(derivable(rows[0].examples[0].a, rows[0].examples[0].d,
                    RuleSet::all()));
    CHECK_FALSE(derivable(rows[0].examples[0].a, rows[0].examples[0].d,
                          no_iia, false));

    // The domino-below-line-of-three fact survives disabling IIIa: the
    // single point is below the line of three by IIa and IIb, and rule IVa
    // then applies to the two domino placements. The original account of
    // this example as needing IIIa does not hold up; the acceptance suite
    // reports the discrepancy.
    RuleSet no_iiia = RuleSet::all();
    no_iiia.disable(Rule::IIIa);
    CHECK(derivable(kHDomino, kHTromino, RuleSet::all()));
    const bool without_iiia = derivable(kHDomino, kHTromino, no_iiia, false);
    CHECK(without_iiia);

    // And the rule used is IVa with the atom-below-line premise.
    Universe u = Universe::subsets_of(kHTromino);
    u.rules = no_iiia;
    const SaturationResult r = saturate(u);
    const auto q = query(r, kHDomino, kHTromino);
    REQUIRE(q.verdict == QueryVerdict::Ordered);
    CHECK(r.traces[*q.fact].rule == Rule::IVa);
    CHECK(verify_trace(r, *q.fact));
}

TEST_CASE("the IVb example is also derivable without IVb") {
    // The two overlapping unions A u A' and A u A'' each follow from IVa,
    // and they intersect in exactly A, so rule V finishes the job. Every
    // fact of the derivation replays soundly.
    const LatticeSet a{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    const LatticeSet d{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {1, 3},
                       {2, 0}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};
    Universe u = Universe::subsets_of(d);
    u.rules.disable(Rule::IVb);
    const SaturationResult r = saturate(u);
    const auto q = query(r, a, d);
    REQUIRE(q.verdict == QueryVerdict::Ordered);
    for (const std::uint32_t fi : q.derivation) CHECK(verify_trace(r, fi));
}

TEST_CASE("facts serialize and reload") {
    const SaturationResult r = saturate(Universe::box(3, 2));
    const json j = facts_to_json(r);
    const SaturationResult back = facts_from_json(j);
    CHECK(back.box_width == 3);
    CHECK(fact_pairs(back) == fact_pairs(r));
    for (std::uint32_t i = 0; i < back.facts.size(); ++i)
        CHECK(verify_trace(back, i));
    CHECK(query(back, kAtom, kHDomino).verdict == QueryVerdict::Ordered);
}
