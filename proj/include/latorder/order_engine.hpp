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

#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "latorder/lattice_set.hpp"

namespace latorder {

// The eight inference rules. IIa is the only rule without an order premise;
// every ordering is created from it. Rule V is applied without its
// incomparability side condition unless Universe::strict_rule_v is set.
enum class Rule : std::uint8_t { IIa, IIb, IIIa, IIIb, IVa, IVb, V, VI };

inline constexpr std::array<Rule, 8> kAllRules = {
    Rule::IIa, Rule::IIb, Rule::IIIa, Rule::IIIb,
    Rule::IVa, Rule::IVb, Rule::V,    Rule::VI};

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::IIa: return "IIa";
        case Rule::IIb: return "IIb";
        case Rule::IIIa: return "IIIa";
        case Rule::IIIb: return "IIIb";
        case Rule::IVa: return "IVa";
        case Rule::IVb: return "IVb";
        case Rule::V: return "V";
        default: return "VI";
    }
}

inline std::optional<Rule> rule_from_name(std::string_view name) {
    for (Rule r : kAllRules)
        if (name == rule_name(r)) return r;
    return std::nullopt;
}

class RuleSet {
  public:
    static RuleSet all() { return RuleSet{0xFF}; }
    static RuleSet none() { return RuleSet{0}; }

    bool contains(Rule r) const {
        return (bits_ >> static_cast<int>(r)) & 1u;
    }
    RuleSet& disable(Rule r) {
        bits_ &= static_cast<std::uint8_t>(~(1u << static_cast<int>(r)));
        return *this;
    }
    RuleSet& enable(Rule r) {
        bits_ |= static_cast<std::uint8_t>(1u << static_cast<int>(r));
        return *this;
    }
    friend bool operator==(RuleSet, RuleSet) = default;

  private:
    explicit RuleSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0xFF;
};

/// The bounded closure in which saturation runs. Representatives are placed
/// inside a box of box_width x box_height cells (at most 64). When `target`
/// is set, placements are further restricted to subsets of that placed set;
/// this decides derivability of any fact with greater set `target` exactly,
/// since a derivation only ever involves sets embeddable in its conclusion.
/// The single-point class is always part of the universe.
struct Universe {
    int box_width = 0;
    int box_height = 0;
    std::vector<LatticeSet> seeds;
    std::optional<LatticeSet> target;
    std::size_t max_classes = std::size_t{1} << 20;
    RuleSet rules = RuleSet::all();
    bool strict_rule_v = false;

    static Universe box(int w, int h, std::vector<LatticeSet> seeds = {}) {
        Universe u;
        u.box_width = w;
        u.box_height = h;
        u.seeds = std::move(seeds);
        return u;
    }

    /// Universe of all subsets of d (up to translation), boxed to d's
    /// bounding box.
    static Universe subsets_of(const LatticeSet& d) {
        if (d.empty())
            throw std::invalid_argument("subsets_of: empty target");
        const auto box = d.bounding_box();
        Universe u;
        u.box_width = box.width();
        u.box_height = box.height();
        u.target = d;
        return u;
    }
};

struct OrderFact {
    std::uint32_t lesser;
    std::uint32_t greater;
    friend bool operator==(const OrderFact&, const OrderFact&) = default;
};

/// Compact derivation record. Witness masks are placements inside the
/// universe box; decode them with SaturationResult::witness_set().
struct TraceRec {
    Rule rule;
    std::int32_t premise1 = -1;
    std::int32_t premise2 = -1;
    std::uint64_t wit_a = 0;
    std::uint64_t wit_b = 0;
};

class SaturationResult {
  public:
    int box_width = 0;
    int box_height = 0;
    bool exhaustive = true;     ///< false when the class budget was hit
    bool stopped_early = false; ///< true when a stop fact was requested & found

    std::vector<OrderFact> facts;   // in derivation order
    std::vector<TraceRec> traces;   // parallel to facts

    std::size_t class_count() const { return class_keys_.size(); }

    /// Canonical lattice set of a class (anchor convention of canonicalize).
    LatticeSet class_set(std::uint32_t idx) const {
        return canonicalize(decode_mask(class_keys_[idx])).set;
    }

    std::optional<std::uint32_t> find_class(const LatticeSet& s) const;

    bool has_fact(std::uint32_t lesser, std::uint32_t greater) const {
        return fact_ids_.count((std::uint64_t{lesser} << 32) | greater) > 0;
    }
    bool has_fact(const LatticeSet& a, const LatticeSet& d) const {
        auto ia = find_class(a);
        auto id = find_class(d);
        return ia && id && has_fact(*ia, *id);
    }
    std::optional<std::uint32_t> fact_index(std::uint32_t lesser,
                                            std::uint32_t greater) const {
        auto it = fact_ids_.find((std::uint64_t{lesser} << 32) | greater);
        if (it == fact_ids_.end()) return std::nullopt;
        return it->second;
    }

    LatticeSet decode_mask(std::uint64_t mask) const {
        std::vector<Point> pts;
        for (std::uint64_t m = mask; m; m &= m - 1) {
            const int bit = std::countr_zero(m);
            pts.push_back({bit % box_width, bit / box_width});
        }
        return LatticeSet(std::move(pts));
    }

    struct Witness {
        LatticeSet set;  // placed inside the box
        Vec shift;       // from the class canonical form to the placement
    };

    Witness witness_set(std::uint64_t mask) const {
        LatticeSet placed = decode_mask(mask);
        return {placed, placed.min_point() - Point{0, 0}};
    }

    // Engine internals shared with saturate().
    std::vector<std::uint64_t> class_keys_;                 // canonical masks
    std::unordered_map<std::uint64_t, std::uint32_t> class_index_;
    std::unordered_map<std::uint64_t, std::uint32_t> fact_ids_;
    std::uint64_t key_of(const LatticeSet& s) const;
};

namespace detail_engine {

inline std::uint64_t normalize_mask(std::uint64_t mask, int width) {
    if (mask == 0) return 0;
    const int min_y = std::countr_zero(mask) / width;
    std::uint64_t rows = 0;
    for (std::uint64_t m = mask; m; m >>= width) rows |= m;
    const std::uint64_t row_mask =
        width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
    const int min_x = std::countr_zero(rows & row_mask);
    return mask >> (min_y * width + min_x);
}

inline std::uint64_t mask_of_normalized(const LatticeSet& s, int width) {
    // s must already sit at nonnegative coordinates inside the box.
    std::uint64_t m = 0;
    for (const Point& p : s.points())
        m |= std::uint64_t{1} << (p.y * width + p.x);
    return m;
}

struct PairHash {
    std::size_t operator()(
        const std::pair<std::uint64_t, std::uint64_t>& p) const {
        std::uint64_t h = p.first * 0x9E3779B97F4A7C15ull;
        h ^= p.second + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace detail_engine

inline std::uint64_t SaturationResult::key_of(const LatticeSet& s) const {
    if (s.empty()) return 0;
    const auto box = s.bounding_box();
    if (box.width() > box_width || box.height() > box_height) return 0;
    const LatticeSet moved = translate(s, Vec{-box.min_x, -box.min_y});
    return detail_engine::mask_of_normalized(moved, box_width);
}

inline std::optional<std::uint32_t> SaturationResult::find_class(
    const LatticeSet& s) const {
    const std::uint64_t key = key_of(s);
    if (key == 0) return std::nullopt;
    auto it = class_index_.find(key);
    if (it == class_index_.end()) return std::nullopt;
    return it->second;
}

namespace detail_engine {

class Saturator {
  public:
    explicit Saturator(const Universe& u,
                       const std::optional<std::pair<LatticeSet, LatticeSet>>&
                           stop_when = std::nullopt)
        : uni_(u), W_(u.box_width), H_(u.box_height) {
        if (W_ <= 0 || H_ <= 0)
            throw std::invalid_argument("saturate: box dimensions required");
        if (W_ * H_ > 64)
            throw std::invalid_argument("saturate: box exceeds 64 cells");
        res_.box_width = W_;
        res_.box_height = H_;
        if (u.target) {
            const auto box = u.target->bounding_box();
            if (box.width() > W_ || box.height() > H_)
                throw std::invalid_argument(
                    "saturate: target does not fit the box");
            target_ = mask_of_normalized(
                translate(*u.target, Vec{-box.min_x, -box.min_y}), W_);
        }
        if (stop_when) {
            stop_lesser_ = embed_key(stop_when->first);
            stop_greater_ = embed_key(stop_when->second);
        }
    }

    SaturationResult run() {
        admit_set(LatticeSet{{0, 0}});  // the atom is always present
        for (const LatticeSet& seed : uni_.seeds) admit_set(seed);
        while (!stop_hit_ && (!init_queue_.empty() || !fact_queue_.empty())) {
            if (!init_queue_.empty()) {
                const std::uint32_t c = init_queue_.front();
                init_queue_.pop_front();
                run_class_rules(c);
                continue;
            }
            const std::uint32_t f = fact_queue_.front();
            fact_queue_.pop_front();
            process_fact(f);
        }
        res_.stopped_early = stop_hit_;
        return std::move(res_);
    }

  private:
    struct Overlap {
        std::uint64_t c_key, d_key;
        std::uint64_t pa, pb;
    };

    struct ClassRec {
        std::uint64_t key = 0;
        int w = 0, h = 0, size = 0;
        std::vector<std::uint64_t> placements;
        std::vector<std::uint32_t> greaters, lessers;
        std::vector<Overlap> overlaps;  // sorted by (c_key, d_key, pa, pb)
    };

    using KeyPair = std::pair<std::uint64_t, std::uint64_t>;

    struct PendingConclusion {
        std::uint32_t lesser;
        std::uint64_t d_mask;
        std::uint64_t pa, pb;
        std::uint32_t premise;
    };

    struct IvaEntry {
        std::uint32_t cls;
        std::uint64_t pa, pb;
    };

    const Universe& uni_;
    int W_, H_;
    std::uint64_t target_ = 0;  // 0 = unrestricted box mode
    SaturationResult res_;
    std::vector<ClassRec> classes_;
    std::deque<std::uint32_t> init_queue_;
    std::deque<std::uint32_t> fact_queue_;
    std::vector<std::uint32_t> fact_pos_in_lesser_;  // index into greaters()
    std::unordered_map<KeyPair, std::vector<PendingConclusion>, PairHash>
        pending_iiib_, pending_ivb_;
    std::unordered_map<KeyPair, std::vector<IvaEntry>, PairHash> iva_index_;
    std::uint64_t stop_lesser_ = 0, stop_greater_ = 0;
    bool stop_hit_ = false;

    bool enabled(Rule r) const { return uni_.rules.contains(r); }

    std::uint64_t embed_key(const LatticeSet& s) const {
        if (s.empty()) return 0;
        const auto box = s.bounding_box();
        if (box.width() > W_ || box.height() > H_) return 0;
        return mask_of_normalized(translate(s, Vec{-box.min_x, -box.min_y}),
                                  W_);
    }

    std::optional<std::uint32_t> admit_set(const LatticeSet& s) {
        if (s.empty())
            throw std::invalid_argument("saturate: empty seed");
        const std::uint64_t key = embed_key(s);
        if (key == 0)
            throw std::invalid_argument("saturate: seed does not fit the box");
        return admit(key);
    }

    // Admits the translation class of `mask`, creating its record and
    // scheduling its class-driven rules. Returns nothing when the class
    // budget is exhausted.
    std::optional<std::uint32_t> admit(std::uint64_t mask) {
        const std::uint64_t key = normalize_mask(mask, W_);
        auto it = res_.class_index_.find(key);
        if (it != res_.class_index_.end()) return it->second;
        if (classes_.size() >= uni_.max_classes) {
            res_.exhaustive = false;
            return std::nullopt;
        }
        const auto idx = static_cast<std::uint32_t>(classes_.size());
        ClassRec rec;
        rec.key = key;
        rec.size = std::popcount(key);
        int max_bit_x = 0, max_bit_y = 0;
        for (std::uint64_t m = key; m; m &= m - 1) {
            const int bit = std::countr_zero(m);
            max_bit_x = std::max(max_bit_x, bit % W_);
            max_bit_y = std::max(max_bit_y, bit / W_);
        }
        rec.w = max_bit_x + 1;
        rec.h = max_bit_y + 1;
        for (int dy = 0; dy + rec.h <= H_; ++dy)
            for (int dx = 0; dx + rec.w <= W_; ++dx) {
                const std::uint64_t placed = key << (dy * W_ + dx);
                if (target_ && (placed & ~target_)) continue;
                rec.placements.push_back(placed);
            }
        if (enabled(Rule::IIIa) || enabled(Rule::IVa)) {
            for (std::size_t i = 0; i < rec.placements.size(); ++i)
                for (std::size_t j = i + 1; j < rec.placements.size(); ++j) {
                    const std::uint64_t pa = rec.placements[i];
                    const std::uint64_t pb = rec.placements[j];
                    const std::uint64_t inter = pa & pb;
                    if (!inter) continue;
                    rec.overlaps.push_back({normalize_mask(inter, W_),
                                            normalize_mask(pa | pb, W_), pa,
                                            pb});
                }
        }
        classes_.push_back(std::move(rec));
        res_.class_keys_.push_back(key);
        res_.class_index_.emplace(key, idx);
        init_queue_.push_back(idx);
        return idx;
    }

    void emit(std::uint32_t lesser, std::uint32_t greater, Rule rule,
              std::int32_t prem1, std::int32_t prem2, std::uint64_t wa,
              std::uint64_t wb) {
        if (lesser == greater) return;
        const std::uint64_t id = (std::uint64_t{lesser} << 32) | greater;
        if (res_.fact_ids_.count(id)) return;
        const auto fidx = static_cast<std::uint32_t>(res_.facts.size());
        res_.facts.push_back({lesser, greater});
        res_.traces.push_back({rule, prem1, prem2, wa, wb});
        res_.fact_ids_.emplace(id, fidx);
        classes_[lesser].greaters.push_back(greater);
        fact_pos_in_lesser_.push_back(
            static_cast<std::uint32_t>(classes_[lesser].greaters.size() - 1));
        classes_[greater].lessers.push_back(lesser);
        fact_queue_.push_back(fidx);
        if (stop_lesser_ && classes_[lesser].key == stop_lesser_ &&
            classes_[greater].key == stop_greater_)
            stop_hit_ = true;
    }

    void run_class_rules(std::uint32_t x) {
        if (enabled(Rule::IIa)) {
            const std::vector<std::uint64_t> placements =
                classes_[x].placements;  // copy: admissions may reallocate
            for (std::size_t i = 0; i < placements.size(); ++i)
                for (std::size_t j = i + 1; j < placements.size(); ++j) {
                    const std::uint64_t pa = placements[i];
                    const std::uint64_t pb = placements[j];
                    if (pa & pb) continue;
                    if (auto d = admit(pa | pb))
                        emit(x, *d, Rule::IIa, -1, -1, pa, pb);
                }
        }
        if (enabled(Rule::IVa)) {
            const std::vector<Overlap> overlaps = classes_[x].overlaps;
            for (const Overlap& ov : overlaps) {
                iva_index_[{ov.c_key, ov.d_key}].push_back({x, ov.pa, ov.pb});
                const auto c = res_.class_index_.find(ov.c_key);
                const auto d = res_.class_index_.find(ov.d_key);
                if (c == res_.class_index_.end() ||
                    d == res_.class_index_.end())
                    continue;
                if (auto f = res_.fact_index(c->second, d->second))
                    emit(x, d->second, Rule::IVa,
                         static_cast<std::int32_t>(*f), -1, ov.pa, ov.pb);
            }
        }
    }

    void process_fact(std::uint32_t fidx) {
        const OrderFact fact = res_.facts[fidx];
        const std::uint32_t a = fact.lesser;
        const std::uint32_t b = fact.greater;

        if (enabled(Rule::VI)) {
            const std::vector<std::uint32_t> ups = classes_[b].greaters;
            for (const std::uint32_t g : ups) {
                const auto prem2 = res_.fact_index(b, g);
                emit(a, g, Rule::VI, static_cast<std::int32_t>(fidx),
                     static_cast<std::int32_t>(*prem2), 0, 0);
            }
            const std::vector<std::uint32_t> downs = classes_[a].lessers;
            for (const std::uint32_t l : downs) {
                const auto prem1 = res_.fact_index(l, a);
                emit(l, b, Rule::VI, static_cast<std::int32_t>(*prem1),
                     static_cast<std::int32_t>(fidx), 0, 0);
            }
        }

        const bool want_iib = enabled(Rule::IIb);
        const bool want_iiib = enabled(Rule::IIIb);
        const bool want_ivb = enabled(Rule::IVb);
        if (want_iib || want_iiib || want_ivb) {
            const std::vector<std::uint64_t> pas = classes_[a].placements;
            const std::vector<std::uint64_t> pbs = classes_[b].placements;
            for (const std::uint64_t pa : pas)
                for (const std::uint64_t pb : pbs) {
                    const std::uint64_t inter = pa & pb;
                    const std::uint64_t uni = pa | pb;
                    if (inter == 0) {
                        if (!want_iib) continue;
                        if (auto d = admit(uni))
                            emit(a, *d, Rule::IIb,
                                 static_cast<std::int32_t>(fidx), -1, pa, pb);
                        continue;
                    }
                    if (uni == pb) continue;  // union adds nothing
                    const std::uint64_t c_key = normalize_mask(inter, W_);
                    if (want_iiib) {
                        bool fired = false;
                        const auto c = res_.class_index_.find(c_key);
                        if (c != res_.class_index_.end()) {
                            if (auto pf = res_.fact_index(c->second, b)) {
                                if (auto d = admit(uni))
                                    emit(a, *d, Rule::IIIb,
                                         static_cast<std::int32_t>(fidx),
                                         static_cast<std::int32_t>(*pf), pa,
                                         pb);
                                fired = true;
                            }
                        }
                        if (!fired)
                            pending_iiib_[{c_key, classes_[b].key}].push_back(
                                {a, uni, pa, pb, fidx});
                    }
                    if (want_ivb) {
                        const std::uint64_t d_key = normalize_mask(uni, W_);
                        bool fired = false;
                        const auto c = res_.class_index_.find(c_key);
                        const auto d = res_.class_index_.find(d_key);
                        if (c != res_.class_index_.end() &&
                            d != res_.class_index_.end()) {
                            if (auto pf =
                                    res_.fact_index(c->second, d->second)) {
                                emit(a, d->second, Rule::IVb,
                                     static_cast<std::int32_t>(fidx),
                                     static_cast<std::int32_t>(*pf), pa, pb);
                                fired = true;
                            }
                        }
                        if (!fired)
                            pending_ivb_[{c_key, d_key}].push_back(
                                {a, uni, pa, pb, fidx});
                    }
                }
        }

        if (enabled(Rule::V)) apply_rule_v(fidx, a, b);

        if (enabled(Rule::IIIa)) {
            // This fact read as (C < X) with X = b enables IIIa on b.
            const std::uint64_t c_key = classes_[a].key;
            const std::vector<Overlap> overlaps = classes_[b].overlaps;
            for (const Overlap& ov : overlaps) {
                if (ov.c_key != c_key) continue;
                if (auto d = admit(ov.d_key))
                    emit(b, *d, Rule::IIIa, static_cast<std::int32_t>(fidx),
                         -1, ov.pa, ov.pb);
            }
        }

        fire_pendings(fidx, a, b);
    }

    void apply_rule_v(std::uint32_t fidx, std::uint32_t a, std::uint32_t b) {
        // Pair this fact (a < b) with every earlier fact (a < c); the two
        // greater sets join when some placements intersect in a translate
        // of a.
        const int need = classes_[a].size;
        const std::uint64_t a_key = classes_[a].key;
        const std::uint32_t last = fact_pos_in_lesser_[fidx];
        const std::vector<std::uint32_t> greaters(
            classes_[a].greaters.begin(),
            classes_[a].greaters.begin() + last + 1);
        const std::vector<std::uint64_t> pbs = classes_[b].placements;
        for (const std::uint32_t c : greaters) {
            if (uni_.strict_rule_v) {
                if (c == b) continue;
                if (res_.fact_index(b, c) || res_.fact_index(c, b)) continue;
            }
            const std::vector<std::uint64_t> pcs = classes_[c].placements;
            const bool same = (c == b);
            for (std::size_t i = 0; i < pbs.size(); ++i) {
                const std::size_t j0 = same ? i + 1 : 0;
                for (std::size_t j = j0; j < pcs.size(); ++j) {
                    const std::uint64_t pb = pbs[i];
                    const std::uint64_t pc = pcs[j];
                    const std::uint64_t inter = pb & pc;
                    if (std::popcount(inter) != need) continue;
                    if (normalize_mask(inter, W_) != a_key) continue;
                    const auto prem2 = res_.fact_index(a, c);
                    if (auto d = admit(pb | pc))
                        emit(a, *d, Rule::V, static_cast<std::int32_t>(fidx),
                             static_cast<std::int32_t>(*prem2), pb, pc);
                }
            }
        }
    }

    void fire_pendings(std::uint32_t fidx, std::uint32_t a, std::uint32_t b) {
        const std::uint64_t a_key = classes_[a].key;
        const std::uint64_t b_key = classes_[b].key;
        if (enabled(Rule::IIIb)) {
            auto it = pending_iiib_.find({a_key, b_key});
            if (it != pending_iiib_.end()) {
                const std::vector<PendingConclusion> entries =
                    std::move(it->second);
                pending_iiib_.erase(it);
                for (const PendingConclusion& e : entries)
                    if (auto d = admit(e.d_mask))
                        emit(e.lesser, *d, Rule::IIIb,
                             static_cast<std::int32_t>(e.premise),
                             static_cast<std::int32_t>(fidx), e.pa, e.pb);
            }
        }
        if (enabled(Rule::IVb)) {
            auto it = pending_ivb_.find({a_key, b_key});
            if (it != pending_ivb_.end()) {
                const std::vector<PendingConclusion> entries =
                    std::move(it->second);
                pending_ivb_.erase(it);
                for (const PendingConclusion& e : entries)
                    if (auto d = admit(e.d_mask))
                        emit(e.lesser, *d, Rule::IVb,
                             static_cast<std::int32_t>(e.premise),
                             static_cast<std::int32_t>(fidx), e.pa, e.pb);
            }
        }
        if (enabled(Rule::IVa)) {
            auto it = iva_index_.find({a_key, b_key});
            if (it != iva_index_.end()) {
                const std::vector<IvaEntry> entries = std::move(it->second);
                iva_index_.erase(it);
                for (const IvaEntry& e : entries)
                    emit(e.cls, b, Rule::IVa, static_cast<std::int32_t>(fidx),
                         -1, e.pa, e.pb);
            }
        }
    }
};

}  // namespace detail_engine

/// Runs the enabled rules to their least fixpoint over the universe.
/// Deterministic for a fixed universe. When `stop_when` is given, saturation
/// halts as soon as that fact (given as a pair of sets) is derived.
inline SaturationResult saturate(
    const Universe& u,
    const std::optional<std::pair<LatticeSet, LatticeSet>>& stop_when =
        std::nullopt) {
    detail_engine::Saturator sat(u, stop_when);
    return sat.run();
}

/// Replays the trace of fact `idx`: checks the geometric side conditions of
/// its rule on the recorded witnesses and that all premises are earlier
/// facts. Used to audit soundness.
inline bool verify_trace(const SaturationResult& r, std::uint32_t idx) {
    using detail_engine::normalize_mask;
    const OrderFact f = r.facts[idx];
    const TraceRec t = r.traces[idx];
    const int W = r.box_width;
    const auto key = [&](std::uint32_t cls) { return r.class_keys_[cls]; };
    const auto prem = [&](std::int32_t p) -> std::optional<OrderFact> {
        if (p < 0 || static_cast<std::uint32_t>(p) >= idx) return std::nullopt;
        return r.facts[static_cast<std::size_t>(p)];
    };
    if (f.lesser == f.greater) return false;

    const std::uint64_t inter = t.wit_a & t.wit_b;
    const std::uint64_t uni = t.wit_a | t.wit_b;
    switch (t.rule) {
        case Rule::IIa:
            return normalize_mask(t.wit_a, W) == key(f.lesser) &&
                   normalize_mask(t.wit_b, W) == key(f.lesser) &&
                   inter == 0 && normalize_mask(uni, W) == key(f.greater);
        case Rule::IIb: {
            auto p1 = prem(t.premise1);
            return p1 && p1->lesser == f.lesser &&
                   normalize_mask(t.wit_a, W) == key(f.lesser) &&
                   normalize_mask(t.wit_b, W) == key(p1->greater) &&
                   inter == 0 && normalize_mask(uni, W) == key(f.greater);
        }
        case Rule::IIIa: {
            auto p1 = prem(t.premise1);
            return p1 && p1->greater == f.lesser && inter != 0 &&
                   normalize_mask(t.wit_a, W) == key(f.lesser) &&
                   normalize_mask(t.wit_b, W) == key(f.lesser) &&
                   normalize_mask(inter, W) == key(p1->lesser) &&
                   normalize_mask(uni, W) == key(f.greater);
        }
        case Rule::IIIb: {
            auto p1 = prem(t.premise1);
            auto p2 = prem(t.premise2);
            return p1 && p2 && p1->lesser == f.lesser &&
                   p2->greater == p1->greater && inter != 0 &&
                   normalize_mask(t.wit_a, W) == key(f.lesser) &&
                   normalize_mask(t.wit_b, W) == key(p1->greater) &&
                   normalize_mask(inter, W) == key(p2->lesser) &&
                   normalize_mask(uni, W) == key(f.greater);
        }
        case Rule::IVa: {
            auto p1 = prem(t.premise1);
            return p1 && p1->greater == f.greater && inter != 0 &&
                   normalize_mask(t.wit_a, W) == key(f.lesser) &&
                   normalize_mask(t.wit_b, W) == key(f.lesser) &&
                   normalize_mask(inter, W) == key(p1->lesser) &&
                   normalize_mask(uni, W) == key(f.greater);
        }
        case Rule::IVb: {
            auto p1 = prem(t.premise1);
            auto p2 = prem(t.premise2);
            return p1 && p2 && p1->lesser == f.lesser &&
                   p2->greater == f.greater && inter != 0 &&
                   normalize_mask(t.wit_a, W) == key(f.lesser) &&
                   normalize_mask(t.wit_b, W) == key(p1->greater) &&
                   normalize_mask(inter, W) == key(p2->lesser) &&
                   normalize_mask(uni, W) == key(f.greater);
        }
        case Rule::V: {
            auto p1 = prem(t.premise1);
            auto p2 = prem(t.premise2);
            return p1 && p2 && p1->lesser == f.lesser &&
                   p2->lesser == f.lesser && inter != 0 &&
                   normalize_mask(t.wit_a, W) == key(p1->greater) &&
                   normalize_mask(t.wit_b, W) == key(p2->greater) &&
                   normalize_mask(inter, W) == key(f.lesser) &&
                   normalize_mask(uni, W) == key(f.greater);
        }
        case Rule::VI: {
            auto p1 = prem(t.premise1);
            auto p2 = prem(t.premise2);
            return p1 && p2 && p1->lesser == f.lesser &&
                   p1->greater == p2->lesser && p2->greater == f.greater;
        }
    }
    return false;
}

enum class QueryVerdict { Equivalent, Ordered, Unknown };

struct QueryResult {
    QueryVerdict verdict;
    std::optional<std::uint32_t> fact;      // when Ordered
    std::vector<std::uint32_t> derivation;  // fact + transitive premises
};

/// Looks a pair up in a saturated fact set. Unknown means "not derived in
/// this universe", never "proven incomparable".
inline QueryResult query(const SaturationResult& r, const LatticeSet& a,
                         const LatticeSet& d) {
    if (a.empty() || d.empty())
        throw std::invalid_argument("query: empty set");
    if (equivalent(a, d)) return {QueryVerdict::Equivalent, {}, {}};
    const auto ia = r.find_class(a);
    const auto id = r.find_class(d);
    if (!ia || !id) return {QueryVerdict::Unknown, {}, {}};
    const auto f = r.fact_index(*ia, *id);
    if (!f) return {QueryVerdict::Unknown, {}, {}};
    // Collect the derivation: the fact and its transitive premises.
    std::vector<std::uint32_t> chain;
    std::vector<std::uint32_t> stack{*f};
    std::unordered_set<std::uint32_t> seen{*f};
    while (!stack.empty()) {
        const std::uint32_t cur = stack.back();
        stack.pop_back();
        chain.push_back(cur);
        for (const std::int32_t p :
             {r.traces[cur].premise1, r.traces[cur].premise2})
            if (p >= 0 && seen.insert(static_cast<std::uint32_t>(p)).second)
                stack.push_back(static_cast<std::uint32_t>(p));
    }
    std::sort(chain.begin(), chain.end());
    return {QueryVerdict::Ordered, f, std::move(chain)};
}

struct UnionCover {
    bool holds = false;
    std::vector<Vec> shifts;  // translates of the lesser covering the greater
};

/// Checks the necessary condition that the greater set is a union of
/// translates of the lesser set, returning a covering when it holds.
inline UnionCover check_union_property(const LatticeSet& lesser,
                                       const LatticeSet& greater) {
    if (lesser.empty() || greater.empty()) return {};
    const LatticeSet less_canon = canonicalize(lesser).set;
    std::vector<Vec> fits;
    const auto gbox = greater.bounding_box();
    const auto lbox = less_canon.bounding_box();
    for (std::int32_t dy = gbox.min_y - lbox.min_y;
         dy + lbox.max_y <= gbox.max_y; ++dy)
        for (std::int32_t dx = gbox.min_x - lbox.min_x;
             dx + lbox.max_x <= gbox.max_x; ++dx) {
            const Vec v{dx, dy};
            bool inside = true;
            for (const Point& p : less_canon.points())
                if (!greater.contains(p + v)) {
                    inside = false;
                    break;
                }
            if (inside) fits.push_back(v);
        }
    LatticeSet covered;
    for (const Vec& v : fits) covered = set_union(covered, translate(less_canon, v));
    if (!(covered == greater)) return {false, {}};
    // Greedy pruning for a tidy covering; any covering is acceptable.
    std::vector<Vec> cover;
    LatticeSet acc;
    for (const Vec& v : fits) {
        const LatticeSet placed = translate(less_canon, v);
        bool adds = false;
        for (const Point& p : placed.points())
            if (!acc.contains(p)) adds = true;
        if (adds) {
            cover.push_back(v);
            acc = set_union(acc, placed);
        }
    }
    return {true, std::move(cover)};
}

inline UnionCover check_union_property(const SaturationResult& r,
                                       std::uint32_t fact_idx) {
    const OrderFact f = r.facts[fact_idx];
    return check_union_property(r.class_set(f.lesser), r.class_set(f.greater));
}

// --- Independence of the rules ----------------------------------------------

struct IndependenceExample {
    LatticeSet a, d;
};

struct IndependenceRow {
    Rule rule;
    std::vector<IndependenceExample> examples;
    bool derivable_full = false;     // all examples derivable, all rules on
    bool derivable_without = false;  // all examples derivable, rule disabled
    bool expected_without;           // true only for IIb
    bool pass = false;
};

/// The example pairs demonstrating each rule, with the greater set small
/// enough that the subset universe is exhaustively searchable.
inline std::vector<IndependenceRow> independence_examples() {
    using L = LatticeSet;
    std::vector<IndependenceRow> rows(8);
    for (int i = 0; i < 8; ++i) {
        rows[i].rule = kAllRules[i];
        rows[i].expected_without = (kAllRules[i] == Rule::IIb);
    }
    rows[0].examples = {{L{{0, 0}}, L{{0, 0}, {1, 0}}}};
    rows[1].examples = {
        {L{{0, 1}}, L{{0, 0}, {1, 0}, {0, 1}}},
        {L{{0, 1}, {1, 1}}, L{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}}};
    rows[2].examples = {{L{{0, 0}, {1, 0}}, L{{0, 0}, {1, 0}, {2, 0}}}};
    rows[3].examples = {{L{{0, 0}, {1, 0}, {0, 1}},
                         L{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}}}};
    rows[4].examples = {
        {L{{0, 0}, {1, 0}, {2, 0}, {1, 1}},
         L{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}}}};
    rows[5].examples = {
        {L{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}},
         L{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1},
           {2, 2}, {2, 3}, {3, 1}, {3, 2}}}};
    rows[6].examples = {
        {L{{0, 2}, {1, 2}, {2, 0}, {2, 1}, {2, 2}, {3, 3}},
         L{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {2, 2}, {2, 3},
           {3, 0}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 3}}}};
    rows[7].examples = {
        {L{{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}},
         L{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {2, 3}, {3, 1},
           {3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 3}, {5, 4}}}};
    return rows;
}

/// Checks whether classOf(a) < classOf(d) is derivable by exhaustive
/// saturation over the subsets of d, with the given rules.
inline bool derivable(const LatticeSet& a, const LatticeSet& d, RuleSet rules,
                      bool early_exit = true) {
    Universe u = Universe::subsets_of(d);
    u.rules = rules;
    const auto stop = early_exit
                          ? std::optional<std::pair<LatticeSet, LatticeSet>>(
                                std::in_place, a, d)
                          : std::nullopt;
    const SaturationResult r = saturate(u, stop);
    return r.has_fact(a, d);
}

/// For each rule: its examples are derivable with the full rule set, and
/// stop being derivable when the rule is disabled, except for IIb whose
/// assertion follows from the other rules.
inline std::vector<IndependenceRow> independence_suite() {
    std::vector<IndependenceRow> rows = independence_examples();
    for (IndependenceRow& row : rows) {
        row.derivable_full = true;
        row.derivable_without = true;
        for (const IndependenceExample& ex : row.examples) {
            if (!derivable(ex.a, ex.d, RuleSet::all()))
                row.derivable_full = false;
            RuleSet without = RuleSet::all();
            without.disable(row.rule);
            if (!derivable(ex.a, ex.d, without, row.expected_without))
                row.derivable_without = false;
        }
        row.pass = row.derivable_full &&
                   row.derivable_without == row.expected_without;
    }
    return rows;
}

}  // namespace latorder
