#include "cubepack/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cubepack;
using testing_support::box;
using testing_support::dy;

TEST_SUITE("geometry") {

TEST_CASE("brick construction rejects bad input") {
    CHECK_THROWS_AS(box({0, 0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(box({0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(box({0, 1}, {1, 1}), std::invalid_argument);
    CHECK_NOTHROW(box({0, 0}, {1, 1}));
}

TEST_CASE("sorted sidelengths and width") {
    Brick b = box({0, 0, 0}, {1, 2, 4});
    CHECK(sorted_sidelengths(b) == std::vector<Dyadic>{1, 2, 4});
    CHECK(width(b) == Dyadic(1));
    CHECK(sorted_sidelengths(box({0, 0, 0}, {1, 1, 1})) == std::vector<Dyadic>{1, 1, 1});
    CHECK(sorted_sidelengths(box({0, 0}, {3, 2})) == std::vector<Dyadic>{2, 3});
    CHECK(shortest_axis(box({0, 0}, {3, 2})) == 1);
    CHECK(shortest_axis(box({0, 0}, {2, 2})) == 0);
}

TEST_CASE("measures of single bricks") {
    Brick b = box({0, 0, 0}, {1, 2, 4});
    auto m = measures(b, 0.5);
    CHECK(m.volume == Dyadic(8));
    CHECK(m.eccentricity == doctest::Approx(8));
    CHECK(m.surf == doctest::Approx(28));
    CHECK(m.surf_delta == doctest::Approx(8));

    Brick unit = box({0, 0, 0}, {1, 1, 1});
    for (double delta : {0.0, 0.3, 0.9}) {
        auto u = measures(unit, delta);
        CHECK(u.volume == Dyadic(1));
        CHECK(u.eccentricity == 1.0);
        CHECK(u.surf_delta == doctest::Approx(1));
    }
}

TEST_CASE("measures of a collection") {
    BrickCollection c{box({0, 0, 0}, {1, 2, 4}), box({0, 0, 0}, {1, 6, 6}, 1)};
    auto m = measures(c, 0.0);
    CHECK(m.volume == dy(25, 1));
    CHECK(m.surf_delta == doctest::Approx(17));
    CHECK(volume(std::span<const Brick>(c)) == dy(25, 1));
}

TEST_CASE("size discrepancy") {
    BrickCollection two_units{box({0, 0}, {1, 1}), box({1, 0}, {2, 1})};
    CHECK(size_discrepancy(two_units) == 0.0);
    BrickCollection widths{box({0, 0}, {1, 1}), box({0, 0}, {4, 4}, 3)};  // widths 1 and 0.5
    CHECK(size_discrepancy(widths) == doctest::Approx(1.0));
    BrickCollection tenths{box({0, 0}, {5, 5}, 2), box({0, 0}, {4, 4}, 2)};  // 1.25 and 1
    CHECK(size_discrepancy(tenths) == doctest::Approx(0.25));
    CHECK_THROWS_AS(size_discrepancy(BrickCollection{}), std::invalid_argument);
}

TEST_CASE("size discrepancy of a run of cubes") {
    auto t = RationalExponent::make(3, 5);
    BrickCollection cubes;
    const std::uint64_t n0 = 1000, n1 = 1200;
    for (std::uint64_t n = n0; n < n1; ++n)
        cubes.push_back(Brick::cube({0, 0}, cube_sidelength(n, t, 64)));
    CHECK(size_discrepancy(cubes) <= std::pow(double(n1) / n0, 0.6) - 1 + 1e-12);
}

TEST_CASE("pair predicates") {
    Brick a = box({0, 0}, {1, 1});
    auto shared = predicates(a, box({1, 0}, {2, 1}));
    CHECK(shared.interiors_disjoint);
    CHECK_FALSE(shared.contains);
    CHECK(shared.touching_face_area == Dyadic(1));

    Brick nudged({Dyadic(1) - Dyadic::pow2(-8), 0}, {2, 1});
    auto overlap = predicates(a, nudged);
    CHECK_FALSE(overlap.interiors_disjoint);
    CHECK(overlap.touching_face_area == Dyadic(0));
    CHECK(intersection(a, nudged) == Brick({Dyadic(1) - Dyadic::pow2(-8), 0}, {1, 1}));

    CHECK(predicates(box({0, 0}, {2, 2}), a).contains);
    CHECK_FALSE(predicates(a, box({0, 0}, {2, 2})).contains);

    // corner contact only
    CHECK(touching_face_area(a, box({1, 1}, {2, 2})) == Dyadic(0));
    CHECK(interiors_disjoint(a, box({1, 1}, {2, 2})));
    CHECK_FALSE(intersection(a, box({1, 1}, {2, 2})).has_value());
    // partial face
    CHECK(touching_face_area(a, box({4, 2}, {8, 6}, 2)) == dy(1, 1));
}

TEST_CASE("split") {
    auto [lo, hi] = box({0, 0}, {4, 2}).split(0, 1);
    CHECK(lo == box({0, 0}, {1, 2}));
    CHECK(hi == box({1, 0}, {4, 2}));
    CHECK_THROWS(box({0, 0}, {4, 2}).split(1, 2));
}

TEST_CASE("weighted surface bounds on random collections") {
    std::mt19937_64 rng(3);
    const double tol = std::ldexp(1.0, -30);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t d = 2 + trial % 3;
        BrickCollection c;
        for (int i = 0; i < 1 + trial % 20; ++i) c.push_back(testing_support::random_brick(rng, d));
        double delta = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
        double s = surf(c), sd = surf_delta(c, delta), s0 = surf_delta(c, 0.0);
        CHECK(sd <= std::pow(s / 2, 1 + delta / double(d - 1)) * (1 + tol));
        // surf_0 counts one of the d facet pairs of each brick
        CHECK(s0 <= s / 2 * (1 + tol));
        CHECK(s0 * double(d) >= s / 2 * (1 - tol));
    }
}

TEST_CASE("first overlap finds an overlapping pair") {
    BrickCollection c{box({0, 0}, {1, 1}), box({1, 0}, {2, 1}), box({3, 3}, {5, 5}, 1)};
    CHECK_FALSE(first_overlap(c).has_value());
    c.push_back(box({3, 3}, {4, 4}, 2));
    auto hit = first_overlap(c);
    REQUIRE(hit.has_value());
    CHECK(std::min(hit->first, hit->second) == 0);
    CHECK(std::max(hit->first, hit->second) == 3);
}

}  // TEST_SUITE
