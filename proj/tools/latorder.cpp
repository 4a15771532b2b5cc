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

// Command line front end: order saturation and queries, octogon boundary
// calculus, and the exact-enumeration entropy experiments. Human-readable
// summaries go to stdout; machine-readable artifacts to files.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latorder/crosscheck.hpp"
#include "latorder/entropy.hpp"
#include "latorder/json_io.hpp"
#include "latorder/lattice_set.hpp"
#include "latorder/octogon.hpp"
#include "latorder/order_engine.hpp"

namespace {

using namespace latorder;

LatticeSet load_grid(const std::string& path) {
    return parse_grid(read_file(path));
}

std::pair<int, int> parse_box(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--box", "expected WxH, e.g. 4x3");
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

void emit_report(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

// ---- order ------------------------------------------------------------------

int cmd_order_saturate(const std::vector<std::string>& seeds,
                       const std::string& box_text,
                       const std::string& target_path,
                       const std::vector<std::string>& disabled,
                       std::size_t budget, bool strict_v,
                       const std::string& out_path) {
    Universe u;
    if (!target_path.empty()) {
        u = Universe::subsets_of(load_grid(target_path));
    }
    if (!box_text.empty()) {
        const auto [w, h] = parse_box(box_text);
        u.box_width = w;
        u.box_height = h;
    }
    if (u.box_width == 0)
        throw CLI::ValidationError("--box", "a box or target is required");
    for (const std::string& path : seeds) u.seeds.push_back(load_grid(path));
    for (const std::string& name : disabled) {
        const auto rule = rule_from_name(name);
        if (!rule) throw CLI::ValidationError("--disable", "unknown rule " + name);
        u.rules.disable(*rule);
    }
    u.max_classes = budget;
    u.strict_rule_v = strict_v;

    const SaturationResult r = saturate(u);
    std::cout << "classes: " << r.class_count() << "\n"
              << "facts: " << r.facts.size() << "\n"
              << "exhaustive: " << (r.exhaustive ? "yes" : "no (budget)")
              << "\n";
    if (!out_path.empty()) {
        write_file(out_path, facts_to_json(r).dump(2) + "\n");
        std::cout << "facts written to " << out_path << "\n";
    }
    return 0;
}

int cmd_order_query(const std::string& a_path, const std::string& d_path,
                    const std::string& facts_path, bool as_json) {
    const SaturationResult r = facts_from_json(json::parse(read_file(facts_path)));
    const LatticeSet a = load_grid(a_path);
    const LatticeSet d = load_grid(d_path);
    const QueryResult q = query(r, a, d);
    if (as_json) {
        json out;
        out["verdict"] = q.verdict == QueryVerdict::Equivalent ? "equivalent"
                         : q.verdict == QueryVerdict::Ordered ? "ordered"
                                                              : "unknown";
        if (q.fact) {
            json chain = json::array();
            for (const std::uint32_t fi : q.derivation) {
                const OrderFact& f = r.facts[fi];
                chain.push_back(json{{"rule", rule_name(r.traces[fi].rule)},
                                     {"lesser", to_grid(r.class_set(f.lesser))},
                                     {"greater", to_grid(r.class_set(f.greater))}});
            }
            out["derivation"] = chain;
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    switch (q.verdict) {
        case QueryVerdict::Equivalent:
            std::cout << "Equivalent\n";
            break;
        case QueryVerdict::Ordered:
            std::cout << "Ordered (rule " << rule_name(r.traces[*q.fact].rule)
                      << ", derivation of " << q.derivation.size()
                      << " facts)\n";
            break;
        case QueryVerdict::Unknown:
            std::cout << "Unknown (not derived in this universe)\n";
            break;
    }
    return 0;
}

int cmd_order_union_check(const std::string& facts_path) {
    const SaturationResult r = facts_from_json(json::parse(read_file(facts_path)));
    std::size_t hold = 0;
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(r.facts.size());
         ++i)
        if (check_union_property(r, i).holds) ++hold;
    std::cout << "union-property: " << hold << "/" << r.facts.size()
              << " facts hold\n";
    return hold == r.facts.size() ? 0 : 1;
}

int cmd_order_independence(const std::string& out_path) {
    const auto rows = independence_suite();
    bool all = true;
    std::printf("%-6s %-10s %-16s %-10s %s\n", "rule", "derivable",
                "without-rule", "expected", "verdict");
    for (const IndependenceRow& row : rows) {
        all = all && row.pass;
        std::string note = row.derivable_without ? "derivable" : "blocked";
        if (row.rule == Rule::IIb && row.derivable_without)
            note = "derivable-without";
        std::printf("%-6s %-10s %-16s %-10s %s\n", rule_name(row.rule),
                    row.derivable_full ? "yes" : "NO", note.c_str(),
                    row.expected_without ? "derivable" : "blocked",
                    row.pass ? "pass" : "FAIL");
    }
    std::cout << (all ? "independence: 8/8 expected verdicts\n"
                      : "independence: FAILURES\n");
    if (!out_path.empty())
        write_file(out_path, independence_to_json(rows).dump(2) + "\n");
    return all ? 0 : 1;
}

// ---- octo -------------------------------------------------------------------

int cmd_octo_boundary(const std::string& path) {
    const LatticeSet s = load_grid(path);
    const Boundary b = boundary_of(s);
    const Point anchor = s.min_point();
    std::cout << boundary_to_json(Octogon{anchor, b}).dump() << "\n";
    return 0;
}

int cmd_octo_order(const std::string& a_path, const std::string& d_path) {
    const Octogon a = boundary_from_json(json::parse(read_file(a_path)));
    const Octogon d = boundary_from_json(json::parse(read_file(d_path)));
    json out{{"a_less_d", octogon_order(a, d)},
             {"d_less_a", octogon_order(d, a)},
             {"equivalent", a.boundary == d.boundary}};
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_octo_decompose(const std::string& a_path, const std::string& d_path) {
    const Octogon a = boundary_from_json(json::parse(read_file(a_path)));
    const Octogon d = boundary_from_json(json::parse(read_file(d_path)));
    if (!piecewise_shorter(a.boundary, d.boundary)) {
        std::cout << "not piecewise shorter; no chain\n";
        return 1;
    }
    const auto chain = decompose(a.boundary, d.boundary);
    if (!chain) {
        std::cerr << "NO PATH: no molecule chain found; piecewise-shorter "
                     "family members always have one, so this input exposes "
                     "a defect\n";
        return 2;
    }
    Boundary acc = a.boundary;
    for (const Molecule& m : *chain) {
        acc = acc + m.boundary;
        std::cout << "M" << m.type << " rot" << (90 * m.rotation) << " -> b=[";
        for (int i = 0; i < Boundary::components; ++i)
            std::cout << (i ? "," : "") << acc[i];
        std::cout << "]\n";
    }
    std::cout << "chain length: " << chain->size() << "\n";
    return 0;
}

int cmd_octo_molecules() {
    const auto& mols = molecules();
    std::cout << "count: " << mols.size() << "\n";
    for (const Molecule& m : mols) {
        std::cout << "M" << m.type << " rot" << (90 * m.rotation) << " b=[";
        for (int i = 0; i < Boundary::components; ++i)
            std::cout << (i ? "," : "") << m.boundary[i];
        std::cout << "]\n" << to_grid(m.shape);
    }
    return 0;
}

int cmd_octo_crosscheck(double max_len, const std::string& out_path) {
    const CrosscheckReport rep = crosscheck_octogon_order(max_len, true);
    std::cout << "boundaries: " << rep.boundary_count << "\n"
              << "pairs: " << rep.pair_count << "\n"
              << "largest universe: " << rep.max_universe_classes
              << " classes\n"
              << "facts audited: " << rep.total_facts << "\n"
              << "union-property failures: " << rep.union_property_failures
              << "\n";
    const double pct =
        rep.pair_count ? 100.0 * rep.agreements / rep.pair_count : 0.0;
    std::printf("agree: %.0f%%\n", pct);
    for (const std::string& m : rep.mismatches) std::cout << m << "\n";
    if (!out_path.empty()) {
        json out{{"max_len", rep.max_len},
                 {"boundaries", rep.boundary_count},
                 {"pairs", rep.pair_count},
                 {"agreements", rep.agreements},
                 {"max_universe_classes", rep.max_universe_classes},
                 {"total_facts", rep.total_facts},
                 {"union_property_failures", rep.union_property_failures},
                 {"pass", rep.pass()}};
        write_file(out_path, out.dump(2) + "\n");
    }
    return rep.pass() ? 0 : 1;
}

// ---- entropy ----------------------------------------------------------------

int cmd_entropy_run(const std::string& spec_path, const std::string& out_path,
                    const std::string& format, int cap, int chunks,
                    int threads) {
    const ExperimentSpec spec =
        experiment_from_json(json::parse(read_file(spec_path)));
    const auto rows = run_experiment(spec, cap, chunks, threads);
    if (format == "json") {
        json out = json::array();
        for (const RegionMeasurement& m : rows)
            out.push_back(measurement_to_json(m));
        emit_report(out_path, out.dump(2) + "\n");
    } else {
        emit_report(out_path, measurements_to_csv(rows));
    }
    if (!out_path.empty())
        std::cout << rows.size() << " rows written to " << out_path << "\n";
    return 0;
}

int cmd_entropy_counterexamples(const std::string& out_path, int chunks,
                                int threads) {
    const CounterexampleReport rep = counterexample_suite(chunks, threads);
    for (const CounterexampleCase& cs : rep.cases) {
        std::printf("%-14s torus %dx%d  entropy:%s counts:%s order:%s  %s\n",
                    cs.name.c_str(), cs.torus.width, cs.torus.height,
                    cs.entropy_pass ? "pass" : "FAIL",
                    cs.counts_pass ? "pass" : "FAIL",
                    cs.engine_orderable ? "DERIVED(!)" : "none",
                    cs.pass() ? "PASS" : "FAIL");
    }
    std::cout << (rep.all_pass ? "counterexamples: all PASS\n"
                               : "counterexamples: FAILURES\n");
    if (!out_path.empty())
        write_file(out_path, counterexamples_to_json(rep).dump(2) + "\n");
    return rep.all_pass ? 0 : 1;
}

int cmd_entropy_audit(const std::string& facts_path, int trials,
                      std::uint64_t seed, int cap, int chunks, int threads) {
    const SaturationResult facts =
        facts_from_json(json::parse(read_file(facts_path)));
    const AuditReport rep =
        monotonicity_audit(facts, trials, seed, cap, chunks, threads);
    std::cout << "trials: " << rep.trials << "\n"
              << "violations: " << rep.violations << "\n"
              << "worst slack: " << format_double(rep.worst_slack) << "\n";
    return rep.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice-set partial order, octogon boundaries, and exact "
                 "Gibbs entropy checks"};
    app.require_subcommand(1);
    int exit_code = 0;

    // order
    auto* order = app.add_subcommand("order", "partial-order saturation");
    order->require_subcommand(1);
    {
        auto* sat = order->add_subcommand("saturate", "run rules to fixpoint");
        auto seeds = std::make_shared<std::vector<std::string>>();
        auto box = std::make_shared<std::string>();
        auto target = std::make_shared<std::string>();
        auto disabled = std::make_shared<std::vector<std::string>>();
        auto budget = std::make_shared<std::size_t>(std::size_t{1} << 20);
        auto strict_v = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        sat->add_option("--seed", *seeds, "seed set grid file(s)");
        sat->add_option("--box", *box, "universe box WxH");
        sat->add_option("--target", *target,
                        "restrict the universe to subsets of this grid");
        sat->add_option("--disable", *disabled, "rule(s) to disable");
        sat->add_option("--budget", *budget, "class budget");
        sat->add_flag("--strict-v", *strict_v,
                      "apply rule V with its incomparability side condition");
        sat->add_option("--out", *out, "facts JSON output path");
        sat->callback([=, &exit_code] {
            exit_code = cmd_order_saturate(*seeds, *box, *target, *disabled,
                                           *budget, *strict_v, *out);
        });
    }
    {
        auto* q = order->add_subcommand("query", "look a pair up in facts");
        auto a = std::make_shared<std::string>();
        auto d = std::make_shared<std::string>();
        auto facts = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        q->add_option("--a", *a, "lesser grid file")->required();
        q->add_option("--d", *d, "greater grid file")->required();
        q->add_option("--facts", *facts, "facts JSON file")->required();
        q->add_flag("--json", *as_json, "JSON output");
        q->callback([=, &exit_code] {
            exit_code = cmd_order_query(*a, *d, *facts, *as_json);
        });
    }
    {
        auto* uc = order->add_subcommand("union-check",
                                         "audit the union property");
        auto facts = std::make_shared<std::string>();
        uc->add_option("--facts", *facts, "facts JSON file")->required();
        uc->callback(
            [=, &exit_code] { exit_code = cmd_order_union_check(*facts); });
    }
    {
        auto* ind = order->add_subcommand("independence",
                                          "rule independence suite");
        auto out = std::make_shared<std::string>();
        ind->add_option("--out", *out, "JSON output path");
        ind->callback(
            [=, &exit_code] { exit_code = cmd_order_independence(*out); });
    }

    // octo
    auto* octo = app.add_subcommand("octo", "octogon boundary calculus");
    octo->require_subcommand(1);
    {
        auto* b = octo->add_subcommand("boundary", "boundary of a grid set");
        auto path = std::make_shared<std::string>();
        b->add_option("file", *path, "grid file")->required();
        b->callback([=, &exit_code] { exit_code = cmd_octo_boundary(*path); });
    }
    {
        auto* o = octo->add_subcommand("order", "compare two boundaries");
        auto a = std::make_shared<std::string>();
        auto d = std::make_shared<std::string>();
        o->add_option("a", *a, "boundary JSON")->required();
        o->add_option("d", *d, "boundary JSON")->required();
        o->callback([=, &exit_code] { exit_code = cmd_octo_order(*a, *d); });
    }
    {
        auto* de = octo->add_subcommand("decompose",
                                        "molecule chain between boundaries");
        auto a = std::make_shared<std::string>();
        auto d = std::make_shared<std::string>();
        de->add_option("a", *a, "boundary JSON")->required();
        de->add_option("d", *d, "boundary JSON")->required();
        de->callback(
            [=, &exit_code] { exit_code = cmd_octo_decompose(*a, *d); });
    }
    octo->add_subcommand("molecules", "list the twelve molecules")
        ->callback([&exit_code] { exit_code = cmd_octo_molecules(); });
    {
        auto* cc = octo->add_subcommand(
            "crosscheck", "boundary order against engine saturation");
        auto max_len = std::make_shared<double>(6.0);
        auto out = std::make_shared<std::string>();
        cc->add_option("--maxlen", *max_len, "circumference cutoff");
        cc->add_option("--out", *out, "JSON output path");
        cc->callback([=, &exit_code] {
            exit_code = cmd_octo_crosscheck(*max_len, *out);
        });
    }

    // entropy
    auto* entropy = app.add_subcommand("entropy", "exact Gibbs entropy");
    entropy->require_subcommand(1);
    auto cap = std::make_shared<int>(kDefaultSiteCap);
    auto chunks = std::make_shared<int>(64);
    auto threads = std::make_shared<int>(0);
    entropy->add_option("--cap", *cap, "site enumeration cap");
    entropy->add_option("--chunks", *chunks,
                        "parallel chunk count (affects rounding, not results "
                        "per thread count)");
    entropy->add_option("--threads", *threads,
                        "worker threads (0 = ENTROPY_ORDER_THREADS or cores)");
    {
        auto* run = entropy->add_subcommand("run", "run an experiment spec");
        auto spec = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto format = std::make_shared<std::string>("csv");
        run->add_option("spec", *spec, "experiment JSON")->required();
        run->add_option("--out", *out, "report output path");
        run->add_option("--format", *format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        run->callback([=, &exit_code] {
            exit_code = cmd_entropy_run(*spec, *out, *format, *cap, *chunks,
                                        *threads);
        });
    }
    {
        auto* ce = entropy->add_subcommand("counterexamples",
                                           "reproduce the negative answers");
        auto out = std::make_shared<std::string>();
        ce->add_option("--out", *out, "JSON output path");
        ce->callback([=, &exit_code] {
            exit_code = cmd_entropy_counterexamples(*out, *chunks, *threads);
        });
    }
    {
        auto* audit = entropy->add_subcommand(
            "audit", "mean-entropy monotonicity over engine facts");
        auto facts = std::make_shared<std::string>();
        auto trials = std::make_shared<int>(1000);
        auto seed = std::make_shared<std::uint64_t>(0);
        audit->add_option("--facts", *facts, "facts JSON file")->required();
        audit->add_option("--trials", *trials, "number of trials");
        audit->add_option("--seed", *seed, "RNG seed")->required();
        audit->callback([=, &exit_code] {
            exit_code = cmd_entropy_audit(*facts, *trials, *seed, *cap,
                                          *chunks, *threads);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
