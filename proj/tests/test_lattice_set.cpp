#include <doctest.h>

#include "latorder/json_io.hpp"
#include "latorder/lattice_set.hpp"
#include "latorder/rng.hpp"

using namespace latorder;

namespace {

LatticeSet random_set(Rng& rng, int max_coord, int min_size, int max_size) {
    std::vector<Point> pts;
    const int n = rng.range(min_size, max_size);
    while (static_cast<int>(pts.size()) < n)
        pts.push_back({rng.range(0, max_coord), rng.range(0, max_coord)});
    return LatticeSet(std::move(pts));
}

// Brute-force equivalence: try every translation aligning the bounding boxes.
bool equivalent_brute(const LatticeSet& a, const LatticeSet& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    if (a.size() != b.size()) return false;
    const auto ab = a.bounding_box();
    const auto bb = b.bounding_box();
    for (std::int32_t dy = bb.min_y - ab.max_y; dy <= bb.max_y - ab.min_y; ++dy)
        for (std::int32_t dx = bb.min_x - ab.max_x; dx <= bb.max_x - ab.min_x;
             ++dx)
            if (translate(a, {dx, dy}) == b) return true;
    return false;
}

}  // namespace

TEST_CASE("union and intersection basics") {
    const LatticeSet a{{0, 0}};
    const LatticeSet b{{1, 0}};
    CHECK(set_union(a, b) == LatticeSet{{0, 0}, {1, 0}});
    CHECK(set_union(a, LatticeSet{}) == a);
    CHECK(set_union(LatticeSet{{0, 0}, {0, 1}}, LatticeSet{{0, 1}, {1, 0}}) ==
          LatticeSet{{0, 0}, {0, 1}, {1, 0}});

    CHECK(set_intersection(LatticeSet{{0, 0}, {1, 0}},
                           LatticeSet{{1, 0}, {2, 0}}) == LatticeSet{{1, 0}});
    CHECK(set_intersection(a, LatticeSet{}).empty());
    CHECK(set_intersection(a, a) == a);
}

TEST_CASE("translate and canonicalize") {
    const LatticeSet s{{2, 1}, {3, 1}};
    CHECK(translate(LatticeSet{{0, 0}}, {1, 0}) == LatticeSet{{1, 0}});
    CHECK(translate(s, {0, 0}) == s);
    CHECK(translate(translate(s, {5, -3}), {-5, 3}) == s);

    const auto canon = canonicalize(s);
    CHECK(canon.set == LatticeSet{{0, 0}, {1, 0}});
    CHECK(canon.shift == Vec{-2, -1});
    const auto single = canonicalize(LatticeSet{{5, 3}});
    CHECK(single.set == LatticeSet{{0, 0}});
    CHECK(single.shift == Vec{-5, -3});
    CHECK(canonicalize(canon.set).set == canon.set);
    CHECK(canonicalize(canon.set).shift == Vec{0, 0});

    CHECK_THROWS_AS(canonicalize(LatticeSet{}), std::invalid_argument);
}

TEST_CASE("canonical anchor may leave negative columns") {
    // The anchor is the most left point of the lowest line; points on higher
    // lines may sit to its left.
    const LatticeSet m2{{0, 1}, {1, 0}};
    const auto canon = canonicalize(m2).set;
    CHECK(canon == LatticeSet{{0, 0}, {-1, 1}});
}

TEST_CASE("equivalence of translation classes") {
    CHECK(equivalent(LatticeSet{{0, 0}}, LatticeSet{{2, 3}}));
    CHECK_FALSE(equivalent(LatticeSet{{0, 0}, {0, 1}},
                           LatticeSet{{0, 0}, {1, 0}}));
    const LatticeSet s{{1, 1}, {4, 2}};
    CHECK(equivalent(s, s));
    CHECK(equivalent(LatticeSet{}, LatticeSet{}));
    CHECK_FALSE(equivalent(LatticeSet{}, LatticeSet{{0, 0}}));

    Rng rng(101);
    for (int i = 0; i < 300; ++i) {
        const LatticeSet a = random_set(rng, 4, 1, 5);
        const LatticeSet b = rng.coin() ? random_set(rng, 4, 1, 5)
                                        : translate(a, {rng.range(-3, 3),
                                                        rng.range(-3, 3)});
        CHECK(equivalent(a, b) == equivalent_brute(a, b));
    }
}

TEST_CASE("measure and modularity") {
    CHECK(measure(LatticeSet{}) == 0);
    const LatticeSet c{{0, 0}, {0, 1}, {1, 2}, {2, 0}, {2, 1}};
    CHECK(measure(c) == 5);
    const LatticeSet d = set_union(c, translate(c, {2, 0}));
    CHECK(measure(d) == 8);

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const LatticeSet a = random_set(rng, 5, 0, 6);
        const LatticeSet b = random_set(rng, 5, 0, 6);
        CHECK(measure(set_union(a, b)) + measure(set_intersection(a, b)) ==
              measure(a) + measure(b));
    }
}

TEST_CASE("minkowski sum") {
    const LatticeSet a{{0, 0}, {1, 0}, {1, 1}};
    CHECK(minkowski_sum(a, LatticeSet{{3, 2}}) == translate(a, {3, 2}));
    CHECK(minkowski_sum(LatticeSet{{0, 0}, {0, 1}},
                        LatticeSet{{0, 0}, {1, 0}}) ==
          LatticeSet{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(minkowski_sum(a, LatticeSet{{0, 0}}) == a);
    CHECK_THROWS_AS(minkowski_sum(a, LatticeSet{}), std::invalid_argument);
    CHECK_THROWS_AS(
        minkowski_sum(LatticeSet{{2000000000, 0}}, LatticeSet{{2000000000, 0}}),
        std::overflow_error);

    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const LatticeSet x = random_set(rng, 6, 1, 4);
        const LatticeSet y = random_set(rng, 6, 1, 4);
        const LatticeSet sum = minkowski_sum(x, y);
        CHECK(measure(sum) <= measure(x) * measure(y));
    }
}

TEST_CASE("rotations and reflections") {
    const LatticeSet horizontal{{0, 0}, {1, 0}};
    CHECK(rotate90(horizontal) == LatticeSet{{0, 0}, {0, 1}});

    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        const LatticeSet s = canonicalize(random_set(rng, 5, 1, 6)).set;
        CHECK(rotate90(rotate90(rotate90(rotate90(s)))) == s);
        CHECK(reflect_diagonal(reflect_diagonal(s)) == s);
    }

    const LatticeSet m3{{0, 0}, {0, 1}, {1, 0}};
    CHECK(equivalent(reflect_diagonal(m3), m3));
}

TEST_CASE("lattice convexity") {
    CHECK(is_lattice_convex(LatticeSet{{4, 7}}));
    CHECK_FALSE(is_lattice_convex(LatticeSet{{0, 0}, {2, 0}}));
    CHECK(is_lattice_convex(LatticeSet{{0, 0}, {1, 0}, {2, 0}}));
    CHECK(is_lattice_convex(LatticeSet{{0, 0}, {1, 1}, {2, 2}}));
    // Hull of these four contains (1,1), which is missing.
    CHECK_FALSE(
        is_lattice_convex(LatticeSet{{0, 0}, {1, 0}, {0, 1}, {2, 2}}));
    CHECK_THROWS_AS(is_lattice_convex(LatticeSet{}), std::invalid_argument);
}

TEST_CASE("grid format round trip") {
    const LatticeSet figure =
        parse_grid(read_file(std::string(LATORDER_DATA_DIR) + "/figure.grid"));
    CHECK(measure(figure) == 31);
    CHECK(is_lattice_convex(figure));
    CHECK(parse_grid(to_grid(figure)) == figure);

    // Origin in the set uses the 'X' glyph.
    const LatticeSet with_origin{{0, 0}, {1, 0}};
    CHECK(to_grid(with_origin) == "X#\n");
    const LatticeSet without_origin{{1, 0}, {1, 1}};
    CHECK(to_grid(without_origin) == ".#\nx#\n");
    CHECK(parse_grid("X#\n") == with_origin);
    CHECK(parse_grid(".#\nx#\n") == without_origin);

    // No marker: bottom-left cell is the origin.
    CHECK(parse_grid("##\n##\n") ==
          LatticeSet{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(parse_grid("x\n").empty());
    CHECK(to_grid(LatticeSet{}) == "x\n");

    CHECK_THROWS_AS(parse_grid("#?\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("xx\n"), std::invalid_argument);

    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const LatticeSet s =
            translate(random_set(rng, 5, 0, 8), {rng.range(-4, 4),
                                                 rng.range(-4, 4)});
        CHECK(parse_grid(to_grid(s)) == s);
    }
}

TEST_CASE("json form") {
    const LatticeSet s{{2, 0}, {0, 1}, {1, 0}};
    const json j = set_to_json(s);
    CHECK(j.at("points").size() == 3);
    // (y, x) ascending.
    CHECK(j.at("points").at(0).at(0).get<int>() == 1);
    CHECK(set_from_json(j) == s);

    Rng rng(47);
    for (int i = 0; i < 50; ++i) {
        const LatticeSet u = random_set(rng, 6, 0, 8);
        CHECK(set_from_json(set_to_json(u)) == u);
    }
}
