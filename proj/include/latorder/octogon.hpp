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
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "latorder/lattice_set.hpp"

namespace latorder {

/// Raised when a set or boundary is not a member of the octogon family.
struct octogon_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Edge lengths of a convex octogon boundary, counter-clockwise from the
/// lower horizontal edge. The diagonal edges n, q, s, u have geometric
/// length times sqrt(2). A closed boundary satisfies
///   u + m + n == q + r + s   and   n + p + q == s + t + u.
struct Boundary {
    int m = 0, n = 0, p = 0, q = 0, r = 0, s = 0, t = 0, u = 0;

    friend bool operator==(const Boundary&, const Boundary&) = default;

    int& operator[](int i) {
        switch (i) {
            case 0: return m;
            case 1: return n;
            case 2: return p;
            case 3: return q;
            case 4: return r;
            case 5: return s;
            case 6: return t;
            default: return u;
        }
    }
    int operator[](int i) const {
        return const_cast<Boundary&>(*this)[i];
    }
    static constexpr int components = 8;

    bool nonnegative() const {
        for (int i = 0; i < components; ++i)
            if ((*this)[i] < 0) return false;
        return true;
    }

    bool closed() const {
        return u + m + n == q + r + s && n + p + q == s + t + u;
    }

    Boundary operator+(const Boundary& o) const {
        Boundary out;
        for (int i = 0; i < components; ++i) out[i] = (*this)[i] + o[i];
        return out;
    }

    Boundary operator-(const Boundary& o) const {
        Boundary out;
        for (int i = 0; i < components; ++i) out[i] = (*this)[i] - o[i];
        return out;
    }

    bool is_zero() const { return *this == Boundary{}; }

    /// Extent of the filled set: width m+n+u+1, height n+p+q+1 points.
    int width() const { return m + n + u + 1; }
    int height() const { return n + p + q + 1; }
};

inline double circumference(const Boundary& b) {
    return b.m + b.p + b.r + b.t +
           std::sqrt(2.0) * (b.n + b.q + b.s + b.u);
}

/// Strict piecewise comparison: a != d and every component of a <= d's.
inline bool piecewise_shorter(const Boundary& a, const Boundary& d) {
    if (a == d) return false;
    for (int i = 0; i < Boundary::components; ++i)
        if (a[i] > d[i]) return false;
    return true;
}

/// A pure north-east oblique line (only n and s nonzero).
inline bool is_ne_line(const Boundary& b) {
    return b.m == 0 && b.p == 0 && b.r == 0 && b.t == 0 && b.q == 0 &&
           b.u == 0 && b.n >= 1;
}

/// A pure north-west oblique line (only q and u nonzero).
inline bool is_nw_line(const Boundary& b) {
    return b.m == 0 && b.p == 0 && b.r == 0 && b.t == 0 && b.n == 0 &&
           b.s == 0 && b.q >= 1;
}

/// Rectangles whose sides are both oblique; excluded from the family.
/// Oblique straight lines (one of the diagonal pairs zero) are allowed.
inline bool is_oblique_rectangle(const Boundary& b) {
    return b.m == 0 && b.p == 0 && b.r == 0 && b.t == 0 && b.n >= 1 &&
           b.q >= 1 && b.n == b.s && b.q == b.u;
}

/// Membership in the octogon family: nonnegative, closed, and not an
/// oblique rectangle.
inline bool in_octogon_family(const Boundary& b) {
    return b.nonnegative() && b.closed() && !is_oblique_rectangle(b);
}

/// A placed octogon: the anchor is the most left point of the lowest line.
struct Octogon {
    Point anchor;
    Boundary boundary;

    static Octogon make(Point anchor, const Boundary& b) {
        if (!b.nonnegative() || !b.closed())
            throw octogon_error("octogon: boundary is not closed");
        if (is_oblique_rectangle(b))
            throw octogon_error("octogon: oblique rectangles are excluded");
        return {anchor, b};
    }
};

/// Filled lattice set of any closed nonnegative boundary placed at `anchor`.
/// Unlike Octogon::make this accepts oblique rectangles.
inline LatticeSet fill_boundary(Point anchor, const Boundary& b) {
    if (!b.nonnegative() || !b.closed())
        throw octogon_error("fill_boundary: boundary is not closed");
    const int height = b.height();
    std::vector<std::int32_t> left(height), right(height);
    // Right profile bottom-up: n rising steps, p vertical, q falling.
    right[0] = anchor.x + b.m;
    for (int y = 1; y < height; ++y) {
        int d = y <= b.n ? 1 : (y <= b.n + b.p ? 0 : -1);
        right[y] = right[y - 1] + d;
    }
    // Left profile bottom-up: u falling steps, t vertical, s rising.
    left[0] = anchor.x;
    for (int y = 1; y < height; ++y) {
        int d = y <= b.u ? -1 : (y <= b.u + b.t ? 0 : 1);
        left[y] = left[y - 1] + d;
    }
    std::vector<Point> pts;
    for (int y = 0; y < height; ++y) {
        if (left[y] > right[y])
            throw octogon_error("fill_boundary: degenerate boundary");
        for (std::int32_t x = left[y]; x <= right[y]; ++x)
            pts.push_back({x, anchor.y + y});
    }
    return LatticeSet(std::move(pts));
}

inline LatticeSet points_of(const Octogon& o) {
    return fill_boundary(o.anchor, o.boundary);
}

/// Extracts the boundary 8-tuple of a set in the octogon family.
/// Throws octogon_error when the set is not lattice-convex, has a boundary
/// edge that is not horizontal/vertical/diagonal, or is an oblique rectangle.
inline Boundary boundary_of(const LatticeSet& set) {
    if (set.empty()) throw octogon_error("boundary_of: empty set");
    if (!is_lattice_convex(set))
        throw octogon_error("boundary_of: set is not lattice-convex");

    const auto box = set.bounding_box();
    const int height = box.height();
    std::vector<std::int32_t> left(height), right(height);
    for (int y = 0; y < height; ++y) {
        left[y] = std::numeric_limits<std::int32_t>::max();
        right[y] = std::numeric_limits<std::int32_t>::min();
    }
    for (const Point& p : set.points()) {
        const int y = p.y - box.min_y;
        left[y] = std::min(left[y], p.x);
        right[y] = std::max(right[y], p.x);
    }

    Boundary b;
    b.m = right[0] - left[0];
    b.r = right[height - 1] - left[height - 1];
    // Right profile must rise (+1), stay, then fall (-1).
    int phase = 1;
    for (int y = 1; y < height; ++y) {
        const int d = right[y] - right[y - 1];
        if (d > 1 || d < -1)
            throw octogon_error("boundary_of: non-octogonal boundary edge");
        if (d == 1 && phase == 1)
            ++b.n;
        else if (d == 0 && phase <= 2) {
            phase = 2;
            ++b.p;
        } else if (d == -1) {
            phase = 3;
            ++b.q;
        } else
            throw octogon_error("boundary_of: right boundary is not convex");
    }
    // Left profile must fall (-1), stay, then rise (+1).
    phase = 1;
    for (int y = 1; y < height; ++y) {
        const int d = left[y] - left[y - 1];
        if (d > 1 || d < -1)
            throw octogon_error("boundary_of: non-octogonal boundary edge");
        if (d == -1 && phase == 1)
            ++b.u;
        else if (d == 0 && phase <= 2) {
            phase = 2;
            ++b.t;
        } else if (d == 1) {
            phase = 3;
            ++b.s;
        } else
            throw octogon_error("boundary_of: left boundary is not convex");
    }
    if (!b.closed())
        throw octogon_error("boundary_of: boundary does not close");
    if (is_oblique_rectangle(b))
        throw octogon_error("boundary_of: oblique rectangles are excluded");
    return b;
}

/// Decides A < D within the family: true iff the boundary of a is piecewise
/// shorter than the boundary of d.
inline bool octogon_order(const Octogon& a, const Octogon& d) {
    return piecewise_shorter(a.boundary, d.boundary);
}

/// One of the twelve minimal nonzero elements of the boundary order.
struct Molecule {
    int type;      ///< 1..4, by representative shape
    int rotation;  ///< quarter turns applied to the representative
    LatticeSet shape;
    Boundary boundary;
};

/// The twelve molecule classes, grouped 2+2+4+4 by type.
inline const std::vector<Molecule>& molecules() {
    static const std::vector<Molecule> all = [] {
        const std::array<LatticeSet, 4> reps = {
            LatticeSet{{0, 0}, {0, 1}},                  // domino
            LatticeSet{{0, 1}, {1, 0}},                  // oblique domino
            LatticeSet{{0, 0}, {0, 1}, {1, 0}},          // triangle
            LatticeSet{{0, 0}, {1, 0}, {2, 0}, {1, 1}},  // flat trapezoid
        };
        std::vector<Molecule> out;
        for (int type = 1; type <= 4; ++type) {
            LatticeSet shape = canonicalize(reps[type - 1]).set;
            for (int rot = 0; rot < 4; ++rot) {
                bool seen = false;
                for (const Molecule& m : out)
                    if (m.shape == shape) seen = true;
                if (!seen)
                    out.push_back({type, rot, shape, boundary_of(shape)});
                shape = rotate90(shape);
            }
        }
        return out;
    }();
    return all;
}

/// Componentwise boundary addition, matching set convolution
/// (boundary_of(A * M) == boundary_of(A) + boundary_of(M)).
/// Adding two mutually orthogonal oblique lines is an error: their
/// convolution leaves the family.
inline Boundary boundary_add(const Boundary& a, const Boundary& m) {
    if ((is_ne_line(a) && is_nw_line(m)) || (is_nw_line(a) && is_ne_line(m)))
        throw octogon_error("boundary_add: orthogonal oblique lines");
    return a + m;
}

namespace detail {

inline bool decompose_step(const Boundary& current, const Boundary& remaining,
                           std::vector<Molecule>& chain) {
    if (remaining.is_zero()) return true;
    for (const Molecule& mol : molecules()) {
        const Boundary& mb = mol.boundary;
        bool fits = true;
        for (int i = 0; i < Boundary::components; ++i)
            if (mb[i] > remaining[i]) fits = false;
        if (!fits) continue;
        if ((is_ne_line(current) && is_nw_line(mb)) ||
            (is_nw_line(current) && is_ne_line(mb)))
            continue;  // convolution would leave the family
        const Boundary next = current + mb;
        if (is_oblique_rectangle(next)) continue;
        chain.push_back(mol);
        if (decompose_step(next, remaining - mb, chain)) return true;
        chain.pop_back();
    }
    return false;
}

}  // namespace detail

/// Splits d - a into a chain of molecules such that every prefix sum added
/// to a is a valid family boundary; realizes A = A0 < A1 < ... < D with
/// A_{k+1} = A_k * M. A chain exists for every piecewise-shorter pair of
/// family members; an empty result on valid inputs would falsify that and
/// deserves loud treatment by callers.
inline std::optional<std::vector<Molecule>> decompose(const Boundary& a,
                                                      const Boundary& d) {
    if (!in_octogon_family(a) || !in_octogon_family(d))
        throw octogon_error("decompose: operand not in the family");
    if (!piecewise_shorter(a, d))
        throw std::invalid_argument("decompose: a is not piecewise shorter");
    std::vector<Molecule> chain;
    if (detail::decompose_step(a, d - a, chain)) return chain;
    return std::nullopt;
}

/// All family boundaries with circumference <= max_len, in lexicographic
/// order of the 8-tuple. Each boundary names one translation class.
inline std::vector<Boundary> enumerate_boundaries(double max_len) {
    std::vector<Boundary> out;
    const int straight = static_cast<int>(max_len);
    const int diag = static_cast<int>(max_len / std::sqrt(2.0));
    Boundary b;
    for (b.m = 0; b.m <= straight; ++b.m)
        for (b.n = 0; b.n <= diag; ++b.n)
            for (b.p = 0; b.p <= straight; ++b.p)
                for (b.q = 0; b.q <= diag; ++b.q)
                    for (b.r = 0; b.r <= straight; ++b.r)
                        for (b.s = 0; b.s <= diag; ++b.s)
                            for (b.t = 0; b.t <= straight; ++b.t)
                                for (b.u = 0; b.u <= diag; ++b.u) {
                                    if (!b.closed()) continue;
                                    if (is_oblique_rectangle(b)) continue;
                                    if (circumference(b) > max_len) continue;
                                    out.push_back(b);
                                }
    return out;
}

}  // namespace latorder
