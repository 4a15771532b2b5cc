// Copyright 2026 The latorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "latorder/octogon.hpp"
#include "latorder/order_engine.hpp"

namespace latorder {

/// Desk-scale verification that the boundary comparison decides the derived
/// order: over every pair of family members with circumference below the
/// cutoff, saturation (in a box sized to the greater set) derives A < D
/// exactly when the boundary of A is piecewise shorter.
struct CrosscheckReport {
    double max_len = 0;
    std::size_t boundary_count = 0;
    std::size_t pair_count = 0;
    std::size_t agreements = 0;
    std::size_t total_facts = 0;          // across all per-box saturations
    std::size_t max_universe_classes = 0;
    std::size_t union_property_failures = 0;  // audited when requested
    std::vector<std::string> mismatches;
    bool pass() const {
        return pair_count > 0 && agreements == pair_count &&
               union_property_failures == 0;
    }
};

inline CrosscheckReport crosscheck_octogon_order(double max_len,
                                                 bool audit_union = false) {
    CrosscheckReport rep;
    rep.max_len = max_len;
    const std::vector<Boundary> family = enumerate_boundaries(max_len);
    rep.boundary_count = family.size();

    std::vector<LatticeSet> sets;
    sets.reserve(family.size());
    for (const Boundary& b : family)
        sets.push_back(fill_boundary({0, 0}, b));

    // One exhaustive saturation per distinct bounding box; facts in a
    // smaller box are a subset of facts in a containing box, and any
    // derivation of A < D embeds into subsets of D, so checking the pair in
    // box(D) is exact.
    std::map<std::pair<int, int>, SaturationResult> by_box;
    for (const Boundary& b : family) {
        const std::pair<int, int> box{b.width(), b.height()};
        if (by_box.count(box)) continue;
        SaturationResult r =
            saturate(Universe::box(box.first, box.second));
        rep.max_universe_classes =
            std::max(rep.max_universe_classes, r.class_count());
        rep.total_facts += r.facts.size();
        if (audit_union)
            for (std::uint32_t i = 0;
                 i < static_cast<std::uint32_t>(r.facts.size()); ++i)
                if (!check_union_property(r, i).holds)
                    ++rep.union_property_failures;
        by_box.emplace(box, std::move(r));
    }

    for (std::size_t ai = 0; ai < family.size(); ++ai)
        for (std::size_t di = 0; di < family.size(); ++di) {
            if (ai == di) continue;
            ++rep.pair_count;
            const bool expected = piecewise_shorter(family[ai], family[di]);
            const SaturationResult& r =
                by_box.at({family[di].width(), family[di].height()});
            const bool derived = r.has_fact(sets[ai], sets[di]);
            if (derived == expected) {
                ++rep.agreements;
            } else if (rep.mismatches.size() < 20) {
                rep.mismatches.push_back(
                    "pair " + std::to_string(ai) + " vs " +
                    std::to_string(di) + ": boundary says " +
                    (expected ? "ordered" : "unordered") +
                    ", engine says " + (derived ? "ordered" : "unordered"));
            }
        }
    return rep;
}

}  // namespace latorder
