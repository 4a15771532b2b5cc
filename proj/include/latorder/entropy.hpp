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

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "latorder/lattice_set.hpp"
#include "latorder/order_engine.hpp"
#include "latorder/rng.hpp"

namespace latorder {

struct entropy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Periodic box of classical spins, one per site. Site index is y*width + x.
struct Torus {
    int width = 0;
    int height = 0;
    int sites() const { return width * height; }
};

inline constexpr int kDefaultSiteCap = 24;  // raiseable per call
inline constexpr int kHardSiteCap = 40;     // 2^40 configurations

/// Interaction multiplets given as base shapes; the family on a torus is the
/// orbit of the bases under torus translations (always) plus, optionally,
/// quarter-turn rotations and diagonal reflections.
struct InteractionFamily {
    std::vector<LatticeSet> bases;
    bool rotations = false;
    bool reflections = false;
};

/// The family expanded on a torus: deduplicated site masks (sets, not
/// multisets), plus a per-site incidence list for incremental energy updates.
struct ExpandedFamily {
    std::vector<std::uint64_t> multiplets;
    std::vector<std::vector<std::uint32_t>> by_site;
    int site_count = 0;
};

namespace detail_entropy {

inline std::uint64_t place_on_torus(const LatticeSet& shape, const Torus& t,
                                    int ox, int oy) {
    std::uint64_t mask = 0;
    for (const Point& p : shape.points()) {
        const int x = ((p.x + ox) % t.width + t.width) % t.width;
        const int y = ((p.y + oy) % t.height + t.height) % t.height;
        mask |= std::uint64_t{1} << (y * t.width + x);
    }
    return mask;
}

}  // namespace detail_entropy

inline ExpandedFamily expand_family(const Torus& t,
                                    const InteractionFamily& family) {
    if (t.sites() <= 0 || t.sites() > 64)
        throw entropy_error("expand_family: torus must have 1..64 sites");
    // Close the base shapes under the requested point symmetries.
    std::vector<LatticeSet> shapes;
    for (const LatticeSet& base : family.bases) {
        if (base.empty())
            throw entropy_error("expand_family: empty multiplet");
        shapes.push_back(canonicalize(base).set);
    }
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        std::vector<LatticeSet> next;
        if (family.rotations) next.push_back(rotate90(shapes[i]));
        if (family.reflections) next.push_back(reflect_diagonal(shapes[i]));
        for (LatticeSet& s : next) {
            bool seen = false;
            for (const LatticeSet& have : shapes)
                if (have == s) seen = true;
            if (!seen) shapes.push_back(std::move(s));
        }
    }
    ExpandedFamily out;
    out.site_count = t.sites();
    std::vector<std::uint64_t> masks;
    for (const LatticeSet& shape : shapes) {
        const auto box = shape.bounding_box();
        if (box.width() > t.width || box.height() > t.height)
            throw entropy_error(
                "expand_family: multiplet does not fit the torus");
        const LatticeSet anchored =
            translate(shape, Vec{-box.min_x, -box.min_y});
        for (int oy = 0; oy < t.height; ++oy)
            for (int ox = 0; ox < t.width; ++ox)
                masks.push_back(
                    detail_entropy::place_on_torus(anchored, t, ox, oy));
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    out.multiplets = std::move(masks);
    out.by_site.resize(t.sites());
    for (std::uint32_t i = 0; i < out.multiplets.size(); ++i)
        for (std::uint64_t m = out.multiplets[i]; m; m &= m - 1)
            out.by_site[std::countr_zero(m)].push_back(i);
    return out;
}

/// Classical diagonal Gibbs state e^{-beta E}/Z over {-1,+1}^sites with
/// E(x) = sum over multiplets of the product of member spins.
struct GibbsState {
    Torus torus;
    InteractionFamily family;
    double beta = 0.0;
};

/// A set of sites observed on the torus. Its bounding box must be strictly
/// smaller than the torus in both directions so that placement and multiplet
/// counting are free of wrap-around ambiguity.
struct Region {
    LatticeSet sites;
};

inline void validate_region(const Torus& t, const Region& r) {
    if (r.sites.empty()) return;  // the empty region is allowed (S = 0)
    const auto box = r.sites.bounding_box();
    if (box.width() >= t.width || box.height() >= t.height)
        throw entropy_error("region bounding box must be strictly smaller "
                            "than the torus");
}

/// Site mask of a region anchored with its bounding-box corner at `offset`.
inline std::uint64_t region_mask(const Torus& t, const Region& r,
                                 Vec offset = {0, 0}) {
    validate_region(t, r);
    if (r.sites.empty()) return 0;
    const auto box = r.sites.bounding_box();
    const LatticeSet anchored =
        translate(r.sites, Vec{-box.min_x, -box.min_y});
    return detail_entropy::place_on_torus(anchored, t, offset.dx, offset.dy);
}

/// Energy of one spin configuration (bit set = spin -1).
inline int energy_of(const ExpandedFamily& fam, std::uint64_t config) {
    int e = 0;
    for (const std::uint64_t m : fam.multiplets)
        e += (std::popcount(config & m) & 1) ? -1 : 1;
    return e;
}

/// Number of family multiplets fully contained in the region: n(D).
inline int count_multiplets(const Torus& t, const InteractionFamily& family,
                            const Region& r) {
    const ExpandedFamily fam = expand_family(t, family);
    const std::uint64_t mask = region_mask(t, r);
    int n = 0;
    for (const std::uint64_t m : fam.multiplets)
        if ((m & ~mask) == 0) ++n;
    return n;
}

inline int default_thread_count() {
    if (const char* env = std::getenv("ENTROPY_ORDER_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Marginal weight vectors, one bucket per restricted configuration.
struct SweepResult {
    std::vector<std::vector<double>> buckets;  // per region, size 2^|region|
};

namespace detail_entropy {

struct Kahan {
    double sum = 0, c = 0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum + c; }
};

}  // namespace detail_entropy

/// Exact enumeration of all 2^sites configurations, accumulating the
/// marginal weight of every region simultaneously. The configuration space
/// is split into `chunk_count` equal ranges reduced independently and merged
/// in chunk order, so results are bit-identical for a fixed chunk count no
/// matter how many threads execute. Walks configurations in Gray-code order
/// with incremental energy updates; summation is compensated.
inline SweepResult sweep_marginals(const Torus& torus,
                                   const ExpandedFamily& fam, double beta,
                                   const std::vector<std::uint64_t>& regions,
                                   int site_cap = kDefaultSiteCap,
                                   int chunk_count = 64, int threads = 0) {
    const int n_sites = torus.sites();
    if (n_sites > site_cap)
        throw entropy_error("sweep_marginals: torus exceeds the site cap (" +
                            std::to_string(n_sites) + " > " +
                            std::to_string(site_cap) + ")");
    if (n_sites > kHardSiteCap)
        throw entropy_error("sweep_marginals: enumeration infeasible");
    const std::size_t n_regions = regions.size();
    const auto n_mult = static_cast<std::uint32_t>(fam.multiplets.size());

    // Bit position of each site inside each region's bucket index; zero when
    // the site is not observed, so updates are branch-free XORs.
    std::vector<std::vector<std::uint32_t>> site_bit(
        n_regions, std::vector<std::uint32_t>(n_sites, 0));
    std::vector<int> region_bits(n_regions);
    for (std::size_t r = 0; r < n_regions; ++r) {
        int pos = 0;
        for (std::uint64_t m = regions[r]; m; m &= m - 1)
            site_bit[r][std::countr_zero(m)] = 1u << pos++;
        region_bits[r] = pos;
        if (pos > 24)
            throw entropy_error("sweep_marginals: region too large");
    }

    // exp(-beta * e) for every reachable integer energy.
    std::vector<double> weight(2 * n_mult + 1);
    for (std::uint32_t i = 0; i < weight.size(); ++i)
        weight[i] = std::exp(-beta * (static_cast<int>(i) - static_cast<int>(n_mult)));

    const std::uint64_t total = std::uint64_t{1} << n_sites;
    int chunks = 1;
    while (chunks < chunk_count && static_cast<std::uint64_t>(chunks) * 2 <= total)
        chunks *= 2;
    const std::uint64_t chunk_len = total / chunks;

    using detail_entropy::Kahan;
    // Per chunk, per region: bucket accumulators.
    std::vector<std::vector<std::vector<Kahan>>> partial(
        chunks, std::vector<std::vector<Kahan>>(n_regions));
    for (int c = 0; c < chunks; ++c)
        for (std::size_t r = 0; r < n_regions; ++r)
            partial[c][r].resize(std::size_t{1} << region_bits[r]);

    const auto run_chunk = [&](int ci) {
        const std::uint64_t k0 = chunk_len * static_cast<std::uint64_t>(ci);
        const std::uint64_t k1 = k0 + chunk_len;
        std::uint64_t gray = k0 ^ (k0 >> 1);
        std::vector<std::int8_t> sign(n_mult);
        int energy = 0;
        for (std::uint32_t i = 0; i < n_mult; ++i) {
            sign[i] = (std::popcount(gray & fam.multiplets[i]) & 1) ? -1 : 1;
            energy += sign[i];
        }
        std::vector<std::uint32_t> y(n_regions, 0);
        for (std::size_t r = 0; r < n_regions; ++r)
            for (std::uint64_t m = gray & regions[r]; m; m &= m - 1)
                y[r] |= site_bit[r][std::countr_zero(m)];
        auto& buckets = partial[ci];
        for (std::uint64_t k = k0;; ++k) {
            const double w = weight[static_cast<std::uint32_t>(
                energy + static_cast<int>(n_mult))];
            for (std::size_t r = 0; r < n_regions; ++r)
                buckets[r][y[r]].add(w);
            if (k + 1 == k1) break;
            const int flip = std::countr_zero(k + 1);
            for (const std::uint32_t mi : fam.by_site[flip]) {
                energy -= 2 * sign[mi];
                sign[mi] = static_cast<std::int8_t>(-sign[mi]);
            }
            for (std::size_t r = 0; r < n_regions; ++r)
                y[r] ^= site_bit[r][flip];
        }
    };

    int n_threads = threads > 0 ? threads : default_thread_count();
    n_threads = std::min(n_threads, chunks);
    if (n_threads <= 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int tI = 0; tI < n_threads; ++tI)
            pool.emplace_back([&] {
                for (int c = next.fetch_add(1); c < chunks;
                     c = next.fetch_add(1))
                    run_chunk(c);
            });
        for (std::thread& th : pool) th.join();
    }

    SweepResult out;
    out.buckets.resize(n_regions);
    for (std::size_t r = 0; r < n_regions; ++r) {
        out.buckets[r].assign(std::size_t{1} << region_bits[r], 0.0);
        for (std::size_t b = 0; b < out.buckets[r].size(); ++b) {
            Kahan acc;
            for (int c = 0; c < chunks; ++c)
                acc.add(partial[c][r][b].value());
            out.buckets[r][b] = acc.value();
        }
    }
    return out;
}

/// Shannon entropy (natural log) of an unnormalized weight vector.
inline double entropy_from_buckets(const std::vector<double>& buckets) {
    detail_entropy::Kahan z, blnb;
    for (const double b : buckets) z.add(b);
    for (const double b : buckets)
        if (b > 0) blnb.add(b * std::log(b));
    const double zv = z.value();
    return std::log(zv) - blnb.value() / zv;
}

inline double normalization_sum(const std::vector<double>& buckets) {
    detail_entropy::Kahan z;
    for (const double b : buckets) z.add(b);
    return z.value();
}

inline double partition_function(const GibbsState& g,
                                 int site_cap = kDefaultSiteCap,
                                 int chunk_count = 64, int threads = 0) {
    const ExpandedFamily fam = expand_family(g.torus, g.family);
    const SweepResult res = sweep_marginals(g.torus, fam, g.beta, {0},
                                            site_cap, chunk_count, threads);
    return res.buckets[0][0];
}

/// Entropies of several regions of one state from a single sweep.
inline std::vector<double> marginal_entropies(
    const GibbsState& g, const std::vector<Region>& regions,
    int site_cap = kDefaultSiteCap, int chunk_count = 64, int threads = 0) {
    const ExpandedFamily fam = expand_family(g.torus, g.family);
    std::vector<std::uint64_t> masks;
    masks.reserve(regions.size());
    for (const Region& r : regions) masks.push_back(region_mask(g.torus, r));
    const SweepResult res = sweep_marginals(g.torus, fam, g.beta, masks,
                                            site_cap, chunk_count, threads);
    std::vector<double> out;
    out.reserve(regions.size());
    for (std::size_t i = 0; i < regions.size(); ++i)
        out.push_back(regions[i].sites.empty()
                          ? 0.0
                          : entropy_from_buckets(res.buckets[i]));
    return out;
}

/// S(D): entropy of the state restricted to the region, by full enumeration.
inline double marginal_entropy(const GibbsState& g, const Region& r,
                               int site_cap = kDefaultSiteCap,
                               int chunk_count = 64, int threads = 0) {
    return marginal_entropies(g, {r}, site_cap, chunk_count, threads)[0];
}

/// s(D) = S(D) / mu(D).
inline double mean_entropy(const GibbsState& g, const Region& r,
                           int site_cap = kDefaultSiteCap,
                           int chunk_count = 64, int threads = 0) {
    if (r.sites.empty())
        throw std::invalid_argument("mean_entropy: empty region");
    return marginal_entropy(g, r, site_cap, chunk_count, threads) /
           measure(r.sites);
}

/// S(A) + S(B) - S(A and B) - S(A or B); nonnegative up to rounding.
/// S of the empty region is 0.
inline double strong_subadditivity_slack(const GibbsState& g, const Region& a,
                                         const Region& b,
                                         int site_cap = kDefaultSiteCap,
                                         int chunk_count = 64,
                                         int threads = 0) {
    const Region inter{set_intersection(a.sites, b.sites)};
    const Region uni{set_union(a.sites, b.sites)};
    const auto s = marginal_entropies(g, {a, b, inter, uni}, site_cap,
                                      chunk_count, threads);
    return s[0] + s[1] - s[2] - s[3];
}

// --- Reports ----------------------------------------------------------------

struct SecondOrderPoint {
    double beta;
    double s;           // measured mean entropy
    double prediction;  // ln 2 - beta^2 n / (2 mu)
    double err;
};

struct SecondOrderReport {
    int n = 0;
    int mu = 0;
    std::vector<SecondOrderPoint> points;  // betas in decreasing order
    std::vector<double> ratios;            // err(2 beta)/err(beta)
    bool pass = false;  // cubic-rate bracket [4,16] on the smallest pairs
};

/// Checks the second-order expansion s = ln 2 - beta^2 n/(2 mu) + O(beta^3):
/// as beta halves the residual must shrink at a rate between cubic and
/// quartic.
inline SecondOrderReport second_order_check(const Torus& torus,
                                            const InteractionFamily& family,
                                            const Region& region,
                                            std::vector<double> betas,
                                            int site_cap = kDefaultSiteCap,
                                            int chunk_count = 64,
                                            int threads = 0) {
    std::sort(betas.begin(), betas.end(), std::greater<>());
    SecondOrderReport rep;
    rep.n = count_multiplets(torus, family, region);
    rep.mu = measure(region.sites);
    for (const double beta : betas) {
        if (beta < 0 || beta > 0.2)
            throw std::invalid_argument("second_order_check: beta out of range");
        const GibbsState g{torus, family, beta};
        const double s = mean_entropy(g, region, site_cap, chunk_count, threads);
        const double prediction =
            std::log(2.0) - 0.5 * beta * beta * rep.n / rep.mu;
        rep.points.push_back({beta, s, prediction, std::abs(s - prediction)});
    }
    for (std::size_t i = 0; i + 1 < rep.points.size(); ++i)
        rep.ratios.push_back(rep.points[i].err /
                             rep.points[i + 1].err);
    rep.pass = true;
    const std::size_t checks = std::min<std::size_t>(2, rep.ratios.size());
    for (std::size_t i = rep.ratios.size() - checks; i < rep.ratios.size(); ++i)
        if (!(rep.ratios[i] >= 4.0 && rep.ratios[i] <= 16.0)) rep.pass = false;
    return rep;
}

struct RegionMeasurement {
    std::string region;
    double beta;
    double entropy;       // S
    double mean;          // s
    int n;                // multiplets inside
    int mu;               // measure
    double prediction;    // ln 2 - beta^2 n / (2 mu)
    double error;         // |s - prediction|
};

struct CounterexampleCase {
    std::string name;
    Torus torus;
    std::vector<RegionMeasurement> rows;
    bool entropy_pass = false;    // all strict inequalities hold with margin
    bool counts_pass = false;     // the integer (n, mu) values match
    bool engine_orderable = true; // expected false for every pair
    std::string detail;
    bool pass() const {
        return entropy_pass && counts_pass && !engine_orderable;
    }
};

struct CounterexampleReport {
    std::vector<CounterexampleCase> cases;
    bool all_pass = true;
};

namespace detail_entropy {

/// Strictness margin for s(lesser) < s(greater): a true second-order gap
/// cannot be faked by rounding.
inline bool strictly_less(double s_less, double s_greater, double beta) {
    return s_less + 1e-6 * beta * beta < s_greater;
}

}  // namespace detail_entropy

/// Reproduces the mean-entropy counterexamples: larger sets with larger mean
/// entropy under suitably chosen interaction families, the 5-point chain
/// with counts (2,5,3,8), the oblique variant, and the growing chain whose
/// mean entropy increases. All by exact enumeration; no pair is orderable
/// by the engine.
inline CounterexampleReport counterexample_suite(int chunk_count = 64,
                                                 int threads = 0) {
    CounterexampleReport rep;
    const std::vector<double> betas{0.02, 0.05, 0.1};
    const auto measure_rows = [&](CounterexampleCase& cs,
                                  const InteractionFamily& family,
                                  const std::vector<std::pair<std::string, Region>>& regions,
                                  const std::vector<double>& bs,
                                  int site_cap) {
        for (const double beta : bs) {
            const GibbsState g{cs.torus, family, beta};
            std::vector<Region> rs;
            for (const auto& [name, region] : regions) rs.push_back(region);
            const auto entropies =
                marginal_entropies(g, rs, site_cap, chunk_count, threads);
            for (std::size_t i = 0; i < rs.size(); ++i) {
                const int n = count_multiplets(cs.torus, family, rs[i]);
                const int mu = measure(rs[i].sites);
                const double s = entropies[i] / mu;
                const double prediction =
                    std::log(2.0) - 0.5 * beta * beta * n / mu;
                cs.rows.push_back({regions[i].first, beta, entropies[i], s, n,
                                   mu, prediction, std::abs(s - prediction)});
            }
        }
    };
    const auto row_mean = [](const CounterexampleCase& cs,
                             const std::string& name, double beta) {
        for (const auto& row : cs.rows)
            if (row.region == name && row.beta == beta) return row.mean;
        throw std::logic_error("row not found");
    };

    // (1) Adding one point raises mean entropy: diagonal-pair interactions.
    {
        CounterexampleCase cs;
        cs.name = "diagonal-pairs";
        cs.torus = {5, 5};
        const LatticeSet b_set{{0, 0}, {0, 1}, {1, 0}};
        const LatticeSet d_set{{0, 0}, {0, 1}, {1, 0}, {2, 0}};
        InteractionFamily family{
            {LatticeSet{{0, 0}, {1, 1}}, LatticeSet{{0, 1}, {1, 0}}},
            false,
            false};
        measure_rows(cs, family, {{"B", Region{b_set}}, {"D", Region{d_set}}},
                     betas, 25);
        cs.entropy_pass = true;
        for (const double beta : betas)
            if (!detail_entropy::strictly_less(row_mean(cs, "B", beta),
                                               row_mean(cs, "D", beta), beta))
                cs.entropy_pass = false;
        cs.counts_pass = count_multiplets(cs.torus, family, Region{b_set}) == 1 &&
                         count_multiplets(cs.torus, family, Region{d_set}) == 1;
        cs.engine_orderable = derivable(b_set, d_set, RuleSet::all());
        cs.detail = "s(B) < s(D) although B is a subset of D; n(B)=n(D)=1";
        rep.cases.push_back(std::move(cs));
    }

    // (2) Same greater set, triple interactions.
    {
        CounterexampleCase cs;
        cs.name = "triples";
        cs.torus = {5, 5};
        const LatticeSet c_set{{0, 0}, {1, 0}, {2, 0}};
        const LatticeSet d_set{{0, 0}, {0, 1}, {1, 0}, {2, 0}};
        InteractionFamily family{{LatticeSet{{0, 0}, {1, 0}, {2, 0}}}, true,
                                 false};
        measure_rows(cs, family, {{"C", Region{c_set}}, {"D", Region{d_set}}},
                     betas, 25);
        cs.entropy_pass = true;
        for (const double beta : betas)
            if (!detail_entropy::strictly_less(row_mean(cs, "C", beta),
                                               row_mean(cs, "D", beta), beta))
                cs.entropy_pass = false;
        cs.counts_pass = count_multiplets(cs.torus, family, Region{c_set}) == 1 &&
                         count_multiplets(cs.torus, family, Region{d_set}) == 1;
        cs.engine_orderable = derivable(c_set, d_set, RuleSet::all());
        cs.detail = "s(C) < s(D) although C is a subset of D; n(C)=n(D)=1";
        rep.cases.push_back(std::move(cs));
    }

    // (3) The 5-point chain piece against two chained pieces: D is a union
    // of translates of C, yet s(C) < s(D). Counts (2,5) vs (3,8).
    const LatticeSet chain_c{{0, 0}, {0, 1}, {1, 2}, {2, 0}, {2, 1}};
    const InteractionFamily nn_family{{LatticeSet{{0, 0}, {0, 1}}}, true,
                                      false};
    {
        CounterexampleCase cs;
        cs.name = "chain";
        cs.torus = {6, 5};
        const LatticeSet d_set = set_union(chain_c, translate(chain_c, {2, 0}));
        measure_rows(cs, nn_family,
                     {{"C", Region{chain_c}}, {"D", Region{d_set}}}, betas, 30);
        cs.entropy_pass = true;
        for (const double beta : betas)
            if (!detail_entropy::strictly_less(row_mean(cs, "C", beta),
                                               row_mean(cs, "D", beta), beta))
                cs.entropy_pass = false;
        const int nc = count_multiplets(cs.torus, nn_family, Region{chain_c});
        const int nd = count_multiplets(cs.torus, nn_family, Region{d_set});
        cs.counts_pass = nc == 2 && measure(chain_c) == 5 && nd == 3 &&
                         measure(d_set) == 8;
        cs.engine_orderable = derivable(chain_c, d_set, RuleSet::all());
        cs.detail = "n/mu: 2/5 > 3/8, so s(C) < s(D); D is a union of "
                    "translates of C";
        rep.cases.push_back(std::move(cs));
    }

    // (4) Oblique variant with a state that is not rotation invariant.
    {
        CounterexampleCase cs;
        cs.name = "oblique";
        cs.torus = {5, 5};
        const LatticeSet c_set{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}};
        const LatticeSet d_set = set_union(c_set, translate(c_set, {-1, 1}));
        InteractionFamily family{{LatticeSet{{0, 0}, {1, 1}}}, false, false};
        measure_rows(cs, family, {{"C", Region{c_set}}, {"D", Region{d_set}}},
                     betas, 25);
        cs.entropy_pass = true;
        for (const double beta : betas)
            if (!detail_entropy::strictly_less(row_mean(cs, "C", beta),
                                               row_mean(cs, "D", beta), beta))
                cs.entropy_pass = false;
        const int nc = count_multiplets(cs.torus, family, Region{c_set});
        const int nd = count_multiplets(cs.torus, family, Region{d_set});
        cs.counts_pass = nc == 2 && measure(c_set) == 5 && nd == 3 &&
                         measure(d_set) == 8;
        cs.engine_orderable = derivable(c_set, d_set, RuleSet::all());
        cs.detail = "one oblique pair orientation only; counts again 2/5 > 3/8";
        rep.cases.push_back(std::move(cs));
    }

    // (5) Chains of N pieces: mean entropy increases with N.
    {
        CounterexampleCase cs;
        cs.name = "chain-monotone";
        cs.torus = {8, 4};
        const double beta = 0.05;
        const LatticeSet d1 = chain_c;
        const LatticeSet d2 = set_union(d1, translate(chain_c, {2, 0}));
        const LatticeSet d3 = set_union(d2, translate(chain_c, {4, 0}));
        measure_rows(cs, nn_family,
                     {{"D1", Region{d1}}, {"D2", Region{d2}}, {"D3", Region{d3}}},
                     {beta}, 32);
        const double s1 = row_mean(cs, "D1", beta);
        const double s2 = row_mean(cs, "D2", beta);
        const double s3 = row_mean(cs, "D3", beta);
        cs.entropy_pass = detail_entropy::strictly_less(s1, s2, beta) &&
                          detail_entropy::strictly_less(s2, s3, beta);
        const int n1 = count_multiplets(cs.torus, nn_family, Region{d1});
        const int n2 = count_multiplets(cs.torus, nn_family, Region{d2});
        const int n3 = count_multiplets(cs.torus, nn_family, Region{d3});
        cs.counts_pass = n1 == 2 && n2 == 3 && n3 == 4 && measure(d1) == 5 &&
                         measure(d2) == 8 && measure(d3) == 11;
        cs.engine_orderable = derivable(d1, d2, RuleSet::all()) ||
                              derivable(d2, d3, RuleSet::all());
        cs.detail = "s(D_N) strictly increasing for N = 1, 2, 3";
        rep.cases.push_back(std::move(cs));
    }

    for (const CounterexampleCase& cs : rep.cases)
        if (!cs.pass()) rep.all_pass = false;
    return rep;
}

// --- Monotonicity audit ------------------------------------------------------

struct AuditViolation {
    std::size_t fact;
    double beta;
    double s_lesser, s_greater;
};

struct AuditReport {
    int trials = 0;
    int violations = 0;
    double worst_slack = 0.0;  // min over trials of s(lesser) - s(greater)
    std::vector<AuditViolation> details;
};

/// Samples (fact, random Gibbs state) pairs and verifies the monotone
/// decrease s(lesser) >= s(greater) - 1e-10 for every engine-derived fact.
inline AuditReport monotonicity_audit(const SaturationResult& facts,
                                      int trials, std::uint64_t seed,
                                      int site_cap = kDefaultSiteCap,
                                      int chunk_count = 16, int threads = 0) {
    if (facts.facts.empty())
        throw std::invalid_argument("monotonicity_audit: no facts");
    Rng rng(seed);
    AuditReport rep;
    rep.trials = trials;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t fi = rng.below(facts.facts.size());
        const OrderFact fact = facts.facts[fi];
        const LatticeSet lesser = facts.class_set(fact.lesser);
        const LatticeSet greater = facts.class_set(fact.greater);
        // Smallest torus holding both regions with a one-site margin,
        // and at least 4x4 so 3x3 interaction windows fit.
        const auto lb = lesser.bounding_box();
        const auto gb = greater.bounding_box();
        Torus torus{std::max({lb.width(), gb.width(), 3}) + 1,
                    std::max({lb.height(), gb.height(), 3}) + 1};
        // Random family: one or two multiplets of up to 3 sites in a 3x3
        // window, random symmetrization, beta in (0, 1].
        InteractionFamily family;
        const int n_bases = rng.range(1, 2);
        for (int bi = 0; bi < n_bases; ++bi) {
            std::vector<Point> pts;
            const int size = rng.range(1, 3);
            while (static_cast<int>(pts.size()) < size) {
                const Point p{rng.range(0, 2), rng.range(0, 2)};
                bool dup = false;
                for (const Point& q : pts) dup = dup || q == p;
                if (!dup) pts.push_back(p);
            }
            family.bases.push_back(LatticeSet(pts));
        }
        family.rotations = rng.coin();
        family.reflections = rng.coin();
        const double beta = 1.0 - rng.uniform01();
        const GibbsState g{torus, family, beta};
        const auto s = marginal_entropies(
            g, {Region{lesser}, Region{greater}}, site_cap, chunk_count,
            threads);
        const double s_lesser = s[0] / measure(lesser);
        const double s_greater = s[1] / measure(greater);
        rep.worst_slack = std::min(rep.worst_slack, s_lesser - s_greater);
        if (s_lesser < s_greater - 1e-10) {
            ++rep.violations;
            rep.details.push_back({fi, beta, s_lesser, s_greater});
        }
    }
    return rep;
}

}  // namespace latorder
