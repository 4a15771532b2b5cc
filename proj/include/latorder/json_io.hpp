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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "latorder/entropy.hpp"
#include "latorder/lattice_set.hpp"
#include "latorder/octogon.hpp"
#include "latorder/order_engine.hpp"

namespace latorder {

using nlohmann::json;

/// Shortest round-trip decimal form; deterministic across platforms.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- LatticeSet --------------------------------------------------------------

inline json set_to_json(const LatticeSet& s) {
    json pts = json::array();
    for (const Point& p : s.points()) pts.push_back({p.x, p.y});
    return json{{"points", pts}};
}

inline LatticeSet set_from_json(const json& j) {
    std::vector<Point> pts;
    for (const auto& p : j.at("points"))
        pts.push_back({p.at(0).get<std::int32_t>(),
                       p.at(1).get<std::int32_t>()});
    return LatticeSet(std::move(pts));
}

// --- Boundary ----------------------------------------------------------------

inline json boundary_to_json(const Octogon& o) {
    const Boundary& b = o.boundary;
    return json{{"b", {b.m, b.n, b.p, b.q, b.r, b.s, b.t, b.u}},
                {"anchor", {o.anchor.x, o.anchor.y}}};
}

inline Octogon boundary_from_json(const json& j) {
    const auto& arr = j.at("b");
    if (arr.size() != 8)
        throw std::invalid_argument("boundary json: need 8 components");
    Boundary b;
    for (int i = 0; i < 8; ++i) b[i] = arr.at(i).get<int>();
    Point anchor{0, 0};
    if (j.contains("anchor")) {
        anchor.x = j.at("anchor").at(0).get<std::int32_t>();
        anchor.y = j.at("anchor").at(1).get<std::int32_t>();
    }
    return Octogon::make(anchor, b);
}

// --- Saturation facts --------------------------------------------------------

inline json facts_to_json(const SaturationResult& r) {
    json out;
    out["box"] = {r.box_width, r.box_height};
    out["exhaustive"] = r.exhaustive;
    json facts = json::array();
    for (std::size_t i = 0; i < r.facts.size(); ++i) {
        const OrderFact& f = r.facts[i];
        const TraceRec& t = r.traces[i];
        json jf;
        jf["lesser"] = to_grid(r.class_set(f.lesser));
        jf["greater"] = to_grid(r.class_set(f.greater));
        jf["rule"] = rule_name(t.rule);
        json prem = json::array();
        if (t.premise1 >= 0) prem.push_back(t.premise1);
        if (t.premise2 >= 0) prem.push_back(t.premise2);
        jf["premises"] = prem;
        json wits = json::array();
        for (const std::uint64_t w : {t.wit_a, t.wit_b})
            if (w) {
                const auto wit = r.witness_set(w);
                wits.push_back(json{{"set", to_grid(wit.set)},
                                    {"shift", {wit.shift.dx, wit.shift.dy}}});
            }
        jf["witnesses"] = wits;
        facts.push_back(std::move(jf));
    }
    out["facts"] = std::move(facts);
    return out;
}

/// Rebuilds a queryable fact table (classes, facts, traces) from its JSON
/// form. Witness placements are restored into the original box frame.
inline SaturationResult facts_from_json(const json& j) {
    SaturationResult r;
    r.box_width = j.at("box").at(0).get<int>();
    r.box_height = j.at("box").at(1).get<int>();
    r.exhaustive = j.value("exhaustive", true);
    const auto intern = [&r](const LatticeSet& s) -> std::uint32_t {
        const std::uint64_t key = r.key_of(s);
        if (key == 0) throw std::invalid_argument("facts json: bad class set");
        auto it = r.class_index_.find(key);
        if (it != r.class_index_.end()) return it->second;
        const auto idx = static_cast<std::uint32_t>(r.class_keys_.size());
        r.class_keys_.push_back(key);
        r.class_index_.emplace(key, idx);
        return idx;
    };
    for (const auto& jf : j.at("facts")) {
        OrderFact f{intern(parse_grid(jf.at("lesser").get<std::string>())),
                    intern(parse_grid(jf.at("greater").get<std::string>()))};
        TraceRec t;
        const auto rule = rule_from_name(jf.at("rule").get<std::string>());
        if (!rule) throw std::invalid_argument("facts json: unknown rule");
        t.rule = *rule;
        const auto& prem = jf.at("premises");
        if (prem.size() > 0) t.premise1 = prem.at(0).get<std::int32_t>();
        if (prem.size() > 1) t.premise2 = prem.at(1).get<std::int32_t>();
        const auto& wits = jf.at("witnesses");
        std::uint64_t masks[2] = {0, 0};
        for (std::size_t wi = 0; wi < wits.size() && wi < 2; ++wi) {
            const LatticeSet placed =
                parse_grid(wits.at(wi).at("set").get<std::string>());
            std::uint64_t m = 0;
            for (const Point& p : placed.points()) {
                if (p.x < 0 || p.x >= r.box_width || p.y < 0 ||
                    p.y >= r.box_height)
                    throw std::invalid_argument(
                        "facts json: witness outside box");
                m |= std::uint64_t{1} << (p.y * r.box_width + p.x);
            }
            masks[wi] = m;
        }
        t.wit_a = masks[0];
        t.wit_b = masks[1];
        const auto fidx = static_cast<std::uint32_t>(r.facts.size());
        r.fact_ids_.emplace((std::uint64_t{f.lesser} << 32) | f.greater, fidx);
        r.facts.push_back(f);
        r.traces.push_back(t);
    }
    return r;
}

// --- Entropy experiment spec --------------------------------------------------

struct ExperimentSpec {
    Torus torus;
    InteractionFamily family;
    std::vector<double> betas;
    std::vector<std::pair<std::string, Region>> regions;  // sorted by name
};

inline ExperimentSpec experiment_from_json(const json& j) {
    ExperimentSpec spec;
    spec.torus.width = j.at("torus").at(0).get<int>();
    spec.torus.height = j.at("torus").at(1).get<int>();
    const auto& fam = j.at("family");
    for (const auto& base : fam.at("bases"))
        spec.family.bases.push_back(parse_grid(base.get<std::string>()));
    spec.family.rotations = fam.value("rotations", false);
    spec.family.reflections = fam.value("reflections", false);
    for (const auto& b : j.at("beta")) spec.betas.push_back(b.get<double>());
    for (const auto& [name, grid] : j.at("regions").items())
        spec.regions.emplace_back(name,
                                  Region{parse_grid(grid.get<std::string>())});
    std::sort(spec.regions.begin(), spec.regions.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return spec;
}

inline json measurement_to_json(const RegionMeasurement& m) {
    return json{{"region", m.region},
                {"beta", m.beta},
                {"S", m.entropy},
                {"s", m.mean},
                {"n", m.n},
                {"mu", m.mu},
                {"prediction", m.prediction},
                {"error", m.error}};
}

inline std::string measurements_to_csv(
    const std::vector<RegionMeasurement>& rows) {
    std::string out = "region,beta,S,s,n,mu,prediction,error\n";
    for (const RegionMeasurement& m : rows) {
        out += m.region + ',' + format_double(m.beta) + ',' +
               format_double(m.entropy) + ',' + format_double(m.mean) + ',' +
               std::to_string(m.n) + ',' + std::to_string(m.mu) + ',' +
               format_double(m.prediction) + ',' + format_double(m.error) +
               '\n';
    }
    return out;
}

/// Runs an experiment spec: one sweep per beta, all regions at once.
inline std::vector<RegionMeasurement> run_experiment(
    const ExperimentSpec& spec, int site_cap = kDefaultSiteCap,
    int chunk_count = 64, int threads = 0) {
    std::vector<RegionMeasurement> rows;
    std::vector<Region> regions;
    for (const auto& [name, region] : spec.regions) regions.push_back(region);
    for (const double beta : spec.betas) {
        const GibbsState g{spec.torus, spec.family, beta};
        const auto entropies =
            marginal_entropies(g, regions, site_cap, chunk_count, threads);
        for (std::size_t i = 0; i < regions.size(); ++i) {
            const int mu = measure(regions[i].sites);
            const int n =
                count_multiplets(spec.torus, spec.family, regions[i]);
            const double s = mu > 0 ? entropies[i] / mu : 0.0;
            const double prediction =
                std::log(2.0) - 0.5 * beta * beta * n / std::max(mu, 1);
            rows.push_back({spec.regions[i].first, beta, entropies[i], s, n,
                            mu, prediction, std::abs(s - prediction)});
        }
    }
    return rows;
}

// --- Suite reports -----------------------------------------------------------

inline json independence_to_json(const std::vector<IndependenceRow>& rows) {
    json out = json::array();
    for (const IndependenceRow& row : rows) {
        json examples = json::array();
        for (const IndependenceExample& ex : row.examples)
            examples.push_back(
                json{{"a", to_grid(ex.a)}, {"d", to_grid(ex.d)}});
        out.push_back(json{{"rule", rule_name(row.rule)},
                           {"examples", examples},
                           {"derivable_full", row.derivable_full},
                           {"derivable_without", row.derivable_without},
                           {"expected_without", row.expected_without},
                           {"pass", row.pass}});
    }
    return out;
}

inline json counterexamples_to_json(const CounterexampleReport& rep) {
    json cases = json::array();
    for (const CounterexampleCase& cs : rep.cases) {
        json rows = json::array();
        for (const RegionMeasurement& m : cs.rows)
            rows.push_back(measurement_to_json(m));
        cases.push_back(json{{"name", cs.name},
                             {"torus", {cs.torus.width, cs.torus.height}},
                             {"rows", rows},
                             {"entropy_pass", cs.entropy_pass},
                             {"counts_pass", cs.counts_pass},
                             {"engine_orderable", cs.engine_orderable},
                             {"detail", cs.detail},
                             {"pass", cs.pass()}});
    }
    return json{{"cases", cases}, {"all_pass", rep.all_pass}};
}

// --- Small file helpers ------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace latorder
