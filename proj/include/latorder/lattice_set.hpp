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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latorder {

/// A translation step on the integer lattice.
struct Vec {
    std::int32_t dx = 0;
    std::int32_t dy = 0;

    friend constexpr bool operator==(Vec, Vec) = default;
    constexpr Vec operator-() const { return {-dx, -dy}; }
    constexpr Vec operator+(Vec o) const { return {dx + o.dx, dy + o.dy}; }
};

/// A point of Z^2. Ordered by (y, x): row first, column second.
struct Point {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend constexpr bool operator==(Point, Point) = default;
    friend constexpr bool operator<(Point a, Point b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
    constexpr Point operator+(Vec v) const { return {x + v.dx, y + v.dy}; }
    constexpr Vec operator-(Point o) const { return {x - o.x, y - o.y}; }
};

/// A finite subset of Z^2 with value semantics. Points are kept sorted in
/// (y, x) order and deduplicated, so equal sets compare equal element-wise.
class LatticeSet {
  public:
    LatticeSet() = default;

    explicit LatticeSet(std::vector<Point> pts) : pts_(std::move(pts)) {
        std::sort(pts_.begin(), pts_.end());
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
    }

    LatticeSet(std::initializer_list<Point> pts)
        : LatticeSet(std::vector<Point>(pts)) {}

    const std::vector<Point>& points() const { return pts_; }
    bool empty() const { return pts_.empty(); }
    int size() const { return static_cast<int>(pts_.size()); }

    bool contains(Point p) const {
        return std::binary_search(pts_.begin(), pts_.end(), p);
    }

    friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

    /// Least point in (y, x) order; the anchor used by canonicalize().
    Point min_point() const {
        if (pts_.empty()) throw std::invalid_argument("min_point: empty set");
        return pts_.front();
    }

    struct Box {
        std::int32_t min_x, min_y, max_x, max_y;
        std::int32_t width() const { return max_x - min_x + 1; }
        std::int32_t height() const { return max_y - min_y + 1; }
    };

    Box bounding_box() const {
        if (pts_.empty()) throw std::invalid_argument("bounding_box: empty set");
        Box b{pts_.front().x, pts_.front().y, pts_.front().x, pts_.back().y};
        for (const Point& p : pts_) {
            b.min_x = std::min(b.min_x, p.x);
            b.max_x = std::max(b.max_x, p.x);
        }
        return b;
    }

  private:
    std::vector<Point> pts_;
};

/// Number of points; the measure mu of a set.
inline int measure(const LatticeSet& s) { return s.size(); }

inline LatticeSet set_union(const LatticeSet& a, const LatticeSet& b) {
    std::vector<Point> out;
    out.reserve(a.points().size() + b.points().size());
    std::set_union(a.points().begin(), a.points().end(), b.points().begin(),
                   b.points().end(), std::back_inserter(out));
    return LatticeSet(std::move(out));
}

inline LatticeSet set_intersection(const LatticeSet& a, const LatticeSet& b) {
    std::vector<Point> out;
    std::set_intersection(a.points().begin(), a.points().end(),
                          b.points().begin(), b.points().end(),
                          std::back_inserter(out));
    return LatticeSet(std::move(out));
}

inline LatticeSet translate(const LatticeSet& s, Vec v) {
    std::vector<Point> out;
    out.reserve(s.points().size());
    for (const Point& p : s.points()) out.push_back(p + v);
    return LatticeSet(std::move(out));  // order is translation invariant
}

struct CanonicalForm {
    LatticeSet set;  ///< the translate whose (y,x)-least point is the origin
    Vec shift;       ///< maps the input onto `set`
};

/// Unique representative of the translation class of a nonempty set: the
/// translate that puts the (y,x)-least point ("most left point in the lowest
/// line") at the origin. Idempotent.
inline CanonicalForm canonicalize(const LatticeSet& s) {
    if (s.empty())
        throw std::invalid_argument("canonicalize: empty set has no anchor");
    Vec shift = Point{0, 0} - s.min_point();
    return {translate(s, shift), shift};
}

/// True iff b is a translate of a. The empty set is equivalent only to itself.
inline bool equivalent(const LatticeSet& a, const LatticeSet& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    if (a.size() != b.size()) return false;
    return canonicalize(a).set == canonicalize(b).set;
}

/// Pointwise sums {p + q : p in a, q in b}, deduplicated.
/// Both operands must be nonempty; coordinate overflow is a checked error.
inline LatticeSet minkowski_sum(const LatticeSet& a, const LatticeSet& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("minkowski_sum: empty operand");
    std::vector<Point> out;
    out.reserve(a.points().size() * b.points().size());
    constexpr std::int64_t lo = std::numeric_limits<std::int32_t>::min();
    constexpr std::int64_t hi = std::numeric_limits<std::int32_t>::max();
    for (const Point& p : a.points())
        for (const Point& q : b.points()) {
            std::int64_t x = std::int64_t{p.x} + q.x;
            std::int64_t y = std::int64_t{p.y} + q.y;
            if (x < lo || x > hi || y < lo || y > hi)
                throw std::overflow_error("minkowski_sum: coordinate overflow");
            out.push_back({static_cast<std::int32_t>(x),
                           static_cast<std::int32_t>(y)});
        }
    return LatticeSet(std::move(out));
}

/// 90-degree counter-clockwise rotation, (x,y) -> (-y,x), canonicalized.
inline LatticeSet rotate90(const LatticeSet& s) {
    if (s.empty()) return s;
    std::vector<Point> out;
    out.reserve(s.points().size());
    for (const Point& p : s.points()) out.push_back({-p.y, p.x});
    return canonicalize(LatticeSet(std::move(out))).set;
}

/// Reflection at the main diagonal, (x,y) -> (y,x), canonicalized.
inline LatticeSet reflect_diagonal(const LatticeSet& s) {
    if (s.empty()) return s;
    std::vector<Point> out;
    out.reserve(s.points().size());
    for (const Point& p : s.points()) out.push_back({p.y, p.x});
    return canonicalize(LatticeSet(std::move(out))).set;
}

namespace detail {

inline std::int64_t cross(Point o, Point a, Point b) {
    return std::int64_t{a.x - o.x} * (b.y - o.y) -
           std::int64_t{a.y - o.y} * (b.x - o.x);
}

/// Convex hull, counter-clockwise, without collinear interior vertices.
/// Result may have fewer than 3 vertices for degenerate (point / segment)
/// sets.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Point> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper hull
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() < 3) {  // all collinear; keep the two extremes
        std::vector<Point> seg{pts.front(), pts.back()};
        if (seg[0] == seg[1]) seg.pop_back();
        return seg;
    }
    return h;
}

inline bool in_convex_hull(const std::vector<Point>& hull, Point p) {
    if (hull.size() == 1) return p == hull[0];
    if (hull.size() == 2) {
        if (cross(hull[0], hull[1], p) != 0) return false;
        return std::min(hull[0].x, hull[1].x) <= p.x &&
               p.x <= std::max(hull[0].x, hull[1].x) &&
               std::min(hull[0].y, hull[1].y) <= p.y &&
               p.y <= std::max(hull[0].y, hull[1].y);
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        Point a = hull[i];
        Point b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < 0) return false;  // hull is counter-clockwise
    }
    return true;
}

}  // namespace detail

/// True iff s equals the set of all lattice points inside its convex hull.
inline bool is_lattice_convex(const LatticeSet& s) {
    if (s.empty())
        throw std::invalid_argument("is_lattice_convex: empty set");
    const auto hull = detail::convex_hull(s.points());
    const auto box = s.bounding_box();
    for (std::int32_t y = box.min_y; y <= box.max_y; ++y)
        for (std::int32_t x = box.min_x; x <= box.max_x; ++x) {
            const Point p{x, y};
            if (detail::in_convex_hull(hull, p) && !s.contains(p))
                return false;
        }
    return true;
}

// --- Text grid format -------------------------------------------------------
//
// One line per row, top row first. '#' marks a point of the set, '.' an
// absent cell, and the origin cell carries a marker: 'x' when the origin is
// not in the set, 'X' when it is. The emitter window is the bounding box of
// the set together with the origin, so parse(emit(s)) == s including absolute
// coordinates. A grid without a marker anchors its bottom-left cell at (0,0).

inline std::string to_grid(const LatticeSet& s) {
    std::int32_t min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    if (!s.empty()) {
        const auto box = s.bounding_box();
        min_x = std::min(box.min_x, 0);
        min_y = std::min(box.min_y, 0);
        max_x = std::max(box.max_x, 0);
        max_y = std::max(box.max_y, 0);
    }
    std::string out;
    out.reserve(static_cast<std::size_t>(max_y - min_y + 1) *
                (max_x - min_x + 2));
    for (std::int32_t y = max_y; y >= min_y; --y) {
        for (std::int32_t x = min_x; x <= max_x; ++x) {
            const bool in = s.contains({x, y});
            if (x == 0 && y == 0)
                out += in ? 'X' : 'x';
            else
                out += in ? '#' : '.';
        }
        out += '\n';
    }
    return out;
}

inline LatticeSet parse_grid(std::string_view text) {
    std::vector<std::string_view> rows;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view row = text.substr(0, nl);
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (!row.empty()) rows.push_back(row);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    if (rows.empty()) throw std::invalid_argument("parse_grid: empty grid");

    std::vector<Point> pts;
    bool have_origin = false;
    Point origin_cell{0, 0};
    const std::int32_t n_rows = static_cast<std::int32_t>(rows.size());
    for (std::int32_t r = 0; r < n_rows; ++r) {
        const std::string_view row = rows[r];
        const std::int32_t y = n_rows - 1 - r;  // top row first
        for (std::int32_t c = 0; c < static_cast<std::int32_t>(row.size());
             ++c) {
            const char g = row[c];
            switch (g) {
                case '.':
                    break;
                case '#':
                    pts.push_back({c, y});
                    break;
                case 'x':
                case 'X':
                    if (have_origin)
                        throw std::invalid_argument(
                            "parse_grid: duplicate origin marker");
                    have_origin = true;
                    origin_cell = {c, y};
                    if (g == 'X') pts.push_back({c, y});
                    break;
                default:
                    throw std::invalid_argument(
                        std::string("parse_grid: bad glyph '") + g + "'");
            }
        }
    }
    const Vec shift = Point{0, 0} - origin_cell;  // no marker: bottom-left
    return translate(LatticeSet(std::move(pts)), have_origin ? shift : Vec{});
}

}  // namespace latorder
