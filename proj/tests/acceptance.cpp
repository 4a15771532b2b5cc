// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "latorder/crosscheck.hpp"
#include "latorder/entropy.hpp"
#include "latorder/json_io.hpp"
#include "latorder/lattice_set.hpp"
#include "latorder/octogon.hpp"
#include "latorder/order_engine.hpp"
#include "latorder/rng.hpp"
#include "test_util.hpp"

using namespace latorder;
using namespace latorder::testutil;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

const Boundary kFigure{4, 1, 2, 2, 1, 3, 1, 1};

// 1. Boundary closure on the reference tuple.
Outcome criterion_closure() {
    const int left1 = kFigure.u + kFigure.m + kFigure.n;
    const int right1 = kFigure.q + kFigure.r + kFigure.s;
    const int left2 = kFigure.n + kFigure.p + kFigure.q;
    const int right2 = kFigure.s + kFigure.t + kFigure.u;
    const bool pass = left1 == 6 && right1 == 6 && left2 == 5 && right2 == 5;
    return {pass, "u+m+n=" + std::to_string(left1) +
                      ", q+r+s=" + std::to_string(right1) +
                      ", n+p+q=" + std::to_string(left2) +
                      ", s+t+u=" + std::to_string(right2)};
}

// 2. Twelve molecules grouped 2+2+4+4 matching the four representatives.
Outcome criterion_molecules() {
    const auto& mols = molecules();
    int per_type[5] = {0, 0, 0, 0, 0};
    for (const Molecule& m : mols) per_type[m.type]++;
    bool pass = mols.size() == 12 && per_type[1] == 2 && per_type[2] == 2 &&
                per_type[3] == 4 && per_type[4] == 4;
    const LatticeSet reps[4] = {
        LatticeSet{{0, 0}, {0, 1}},
        LatticeSet{{0, 1}, {1, 0}},
        LatticeSet{{0, 0}, {0, 1}, {1, 0}},
        LatticeSet{{0, 0}, {1, 0}, {1, 1}, {2, 0}}};
    for (const Molecule& m : mols) {
        LatticeSet rotated = canonicalize(reps[m.type - 1]).set;
        bool matches = false;
        for (int rot = 0; rot < 4; ++rot) {
            if (equivalent(m.shape, rotated)) matches = true;
            rotated = rotate90(rotated);
        }
        pass = pass && matches;
    }
    return {pass, std::to_string(mols.size()) + " classes, types " +
                      std::to_string(per_type[1]) + "+" +
                      std::to_string(per_type[2]) + "+" +
                      std::to_string(per_type[3]) + "+" +
                      std::to_string(per_type[4])};
}

// 3. Convolution adds boundaries: 500 random pairs in a 20x20 box.
Outcome criterion_convolution() {
    Rng rng(0xC0FFEE);
    int checked = 0, mismatches = 0;
    while (checked < 500) {
        const Boundary ba = random_family_boundary(rng, 4, 20, 20);
        const Molecule& mol = molecules()[rng.below(molecules().size())];
        if ((is_ne_line(ba) && is_nw_line(mol.boundary)) ||
            (is_nw_line(ba) && is_ne_line(mol.boundary)))
            continue;  // orthogonal oblique lines: addition is undefined
        const LatticeSet a = fill_boundary({0, 0}, ba);
        const LatticeSet d = minkowski_sum(a, mol.shape);
        if (!(boundary_of(d) == boundary_add(ba, mol.boundary))) ++mismatches;
        ++checked;
    }
    return {mismatches == 0, "500 pairs, " + std::to_string(mismatches) +
                                 " mismatches"};
}

CrosscheckReport g_crosscheck;  // shared between criteria 4 and 6

// 4. Boundary comparison equals derivability, both directions, exhaustively.
Outcome criterion_crosscheck() {
    g_crosscheck = crosscheck_octogon_order(8.0, true);
    const bool pass = g_crosscheck.pair_count > 0 &&
                      g_crosscheck.agreements == g_crosscheck.pair_count;
    return {pass,
            std::to_string(g_crosscheck.boundary_count) + " boundaries, " +
                std::to_string(g_crosscheck.pair_count) + " pairs, " +
                std::to_string(g_crosscheck.agreements) +
                " agree; largest universe " +
                std::to_string(g_crosscheck.max_universe_classes) + " classes"};
}

// 5. Independence of the rules, with the IIb exception.
Outcome criterion_independence() {
    const auto rows = independence_suite();
    int ok = 0;
    std::string detail;
    for (const IndependenceRow& row : rows) {
        if (row.pass) ++ok;
        detail += std::string(rule_name(row.rule)) + ":" +
                  (row.pass ? "ok"
                   : !row.derivable_full
                       ? "FAIL(not derivable)"
                       : "FAIL(derivable without the rule)") +
                  " ";
    }
    return {ok == 8, std::to_string(ok) + "/8 expected verdicts (" + detail +
                         ")"};
}

// 6. Union property holds for every fact of criterion 4's saturations.
Outcome criterion_union_property() {
    const bool pass = g_crosscheck.total_facts > 0 &&
                      g_crosscheck.union_property_failures == 0;
    return {pass, std::to_string(g_crosscheck.total_facts) +
                      " facts audited, " +
                      std::to_string(g_crosscheck.union_property_failures) +
                      " failures"};
}

// 7. Strong subadditivity on 200 random triples.
Outcome criterion_ssa() {
    Rng rng(0x55A);
    double worst = 1.0;
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const Torus torus{rng.range(2, 4), rng.range(2, 5)};
        InteractionFamily family;
        const int n_bases = rng.range(1, 2);
        // Square sampling window, so rotated bases still fit the torus.
        const int side = std::min({torus.width, torus.height, 3});
        for (int b = 0; b < n_bases; ++b) {
            std::vector<Point> pts;
            const int size = rng.range(1, 3);
            while (static_cast<int>(pts.size()) < size) {
                const Point p{rng.range(0, side - 1), rng.range(0, side - 1)};
                bool dup = false;
                for (const Point& q : pts) dup = dup || q == p;
                if (!dup) pts.push_back(p);
            }
            family.bases.push_back(LatticeSet(pts));
        }
        family.rotations = rng.coin();
        family.reflections = rng.coin();
        const double beta = rng.uniform01() * 1.5;
        const auto random_region = [&] {
            std::vector<Point> pts;
            for (int n = rng.range(0, 6); n > 0; --n)
                pts.push_back(
                    {rng.range(0, torus.width - 2),
                     rng.range(0, torus.height - 2)});
            return Region{LatticeSet(pts)};
        };
        const Region a = random_region();
        const Region b = random_region();
        const double slack =
            strong_subadditivity_slack({torus, family, beta}, a, b);
        worst = std::min(worst, slack);
        if (slack < -1e-12) ++violations;
    }
    return {violations == 0, "200 triples, worst slack " +
                                 format_double(worst)};
}

// 8. Mean entropy decreases along every derived fact.
Outcome criterion_monotonicity() {
    const SaturationResult facts = saturate(Universe::box(3, 3));
    const AuditReport rep = monotonicity_audit(facts, 1000, 20260808);
    return {rep.violations == 0,
            std::to_string(rep.trials) + " trials over " +
                std::to_string(facts.facts.size()) + " facts, " +
                std::to_string(rep.violations) + " violations, worst slack " +
                format_double(rep.worst_slack)};
}

// 9. The appendix counterexamples by exact enumeration.
Outcome criterion_counterexamples() {
    const CounterexampleReport rep = counterexample_suite();
    std::string detail;
    for (const CounterexampleCase& cs : rep.cases)
        detail += cs.name + ":" + (cs.pass() ? "ok" : "FAIL") + " ";
    return {rep.all_pass, detail};
}

// 10. Second-order expansion: cubic-rate residual on the case-(a) sets.
Outcome criterion_second_order() {
    const Torus torus{5, 5};
    const InteractionFamily diag{
        {LatticeSet{{0, 0}, {1, 1}}, LatticeSet{{0, 1}, {1, 0}}},
        false,
        false};
    const Region b{LatticeSet{{0, 0}, {0, 1}, {1, 0}}};
    const Region d{LatticeSet{{0, 0}, {0, 1}, {1, 0}, {2, 0}}};
    std::string detail;
    bool pass = true;
    for (const auto& [name, region] : {std::pair<std::string, Region>{"B", b},
                                       {"D", d}}) {
        const auto rep = second_order_check(torus, diag, region,
                                            {0.08, 0.04, 0.02}, 25);
        const double ratio = rep.ratios.back();  // err(0.04)/err(0.02)
        pass = pass && ratio >= 4.0 && ratio <= 16.0;
        detail += name + ": err(0.04)/err(0.02)=" + format_double(ratio) + " ";
    }
    return {pass, detail + "(bracket [4,16])"};
}

// 11. Union property is not sufficient: the chain pair.
Outcome criterion_insufficiency() {
    const LatticeSet c{{0, 0}, {0, 1}, {1, 2}, {2, 0}, {2, 1}};
    const LatticeSet d = set_union(c, translate(c, {2, 0}));
    const UnionCover cover = check_union_property(c, d);

    Universe u = Universe::subsets_of(d);
    u.seeds = {c};
    const SaturationResult r = saturate(u);
    const bool no_order = !r.has_fact(c, d) && r.exhaustive;

    const Torus torus{6, 5};
    const InteractionFamily nn{{LatticeSet{{0, 0}, {0, 1}}}, true, false};
    const GibbsState g{torus, nn, 0.05};
    const auto s =
        marginal_entropies(g, {Region{c}, Region{d}}, 30);
    const double s_c = s[0] / measure(c);
    const double s_d = s[1] / measure(d);
    const bool entropy_flip = s_c + 1e-6 * 0.05 * 0.05 < s_d;

    const bool pass = cover.holds && no_order && entropy_flip;
    return {pass, std::string("cover:") + (cover.holds ? "yes" : "no") +
                      " (" + std::to_string(cover.shifts.size()) +
                      " translates), derived:" + (no_order ? "none" : "YES") +
                      ", s(C)=" + format_double(s_c) +
                      " < s(D)=" + format_double(s_d)};
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "boundary closure equations on the reference tuple",
         criterion_closure},
        {2, "twelve molecule classes grouped 2+2+4+4", criterion_molecules},
        {3, "convolution adds boundaries (500 random pairs)",
         criterion_convolution},
        {4, "boundary order equals engine order, exhaustively",
         criterion_crosscheck},
        {5, "rule independence suite", criterion_independence},
        {6, "union property holds for all derived facts",
         criterion_union_property},
        {7, "strong subadditivity (200 random triples)", criterion_ssa},
        {8, "mean-entropy monotonicity audit (1000 pairs)",
         criterion_monotonicity},
        {9, "appendix counterexamples by exact enumeration",
         criterion_counterexamples},
        {10, "second-order expansion residual rate", criterion_second_order},
        {11, "union property is necessary but not sufficient",
         criterion_insufficiency},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::printf("[%s] criterion %2d: %s — %s (%.1fs)\n",
                    outcome.pass ? "PASS" : "FAIL", c.number, c.title,
                    outcome.detail.c_str(), secs);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (failures == 0)
        std::printf("ALL 11 CRITERIA PASSED\n");
    else
        std::printf("%d CRITERIA FAILED\n", failures);
    return failures;
}
