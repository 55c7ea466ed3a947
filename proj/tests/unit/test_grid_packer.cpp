#include "cubepack/grid_packer.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace cubepack;
using testing_support::box;
using testing_support::dy;
using testing_support::grid_target;

namespace {

const Placement& at(const std::vector<Placement>& ps, const GridPlan& plan, MultiIndex i) {
    return ps[linear_index(i, plan.dims)];
}

}  // namespace

TEST_SUITE("grid_packer") {

TEST_CASE("linear and multi index") {
    std::vector<std::size_t> dims{3, 4};
    CHECK(linear_index(MultiIndex{1, 1}, dims) == 4);
    CHECK(linear_index(MultiIndex{0, 0}, dims) == 0);
    CHECK(linear_index(MultiIndex{2, 3}, dims) == 11);
    CHECK(multi_index(11, dims) == MultiIndex{2, 3});
    CHECK_THROWS_AS(linear_index(MultiIndex{3, 0}, dims), std::out_of_range);
    CHECK_THROWS_AS(multi_index(12, dims), std::out_of_range);
    std::vector<std::size_t> d3{2, 3, 4};
    for (std::size_t n = 0; n < 24; ++n) CHECK(linear_index(multi_index(n, d3), d3) == n);
}

TEST_CASE("plan_grid floors and orders axes") {
    Dyadic w = dy(1, 4);
    Brick s({0, 0}, {dy(69, 5), dy(21, 4)});  // 34.5 w by 21 w
    GridPlan plan = plan_grid(s, w);
    CHECK(plan.dims == std::vector<std::size_t>{21, 34});
    CHECK(plan.axis_map == std::vector<std::size_t>{1, 0});

    // 4.2 w by 6.9 w, with w = 10 units of 2^-6
    Dyadic u = dy(10, 6);
    GridPlan p2 = plan_grid(Brick({0, 0}, {dy(42, 6), dy(69, 6)}), u);
    CHECK(p2.dims == std::vector<std::size_t>{4, 6});
    CHECK(p2.axis_map == std::vector<std::size_t>{0, 1});

    GridPlan exact = plan_grid(grid_target({5, 5}, w), w);
    CHECK(exact.dims == std::vector<std::size_t>{5, 5});
    CHECK(exact.margins().empty());

    CHECK_THROWS_AS(plan_grid(box({0, 0}, {1, 8}, 6), w), std::invalid_argument);
}

TEST_CASE("plan_grid cap leaves margins that tile the target") {
    Dyadic w = dy(1, 3);
    Brick s({0, 0, 0}, {dy(13, 2), dy(5, 1), dy(9, 3)});  // 26 w, 20 w, 9 w
    GridPlan plan = plan_grid(s, w, 12);
    CHECK(plan.dims == std::vector<std::size_t>{9, 12, 12});
    Dyadic total = volume(plan.packed_region());
    auto margins = plan.margins();
    for (const auto& m : margins) {
        CHECK(contains(s, m));
        CHECK(interiors_disjoint(m, plan.packed_region()));
    }
    CHECK(total + volume(std::span<const Brick>(margins)) == volume(s));
    CHECK_FALSE(first_overlap(margins).has_value());
}

TEST_CASE("equal widths telescope to the lattice") {
    Dyadic w = dy(3, 5);
    for (auto dims : {std::vector<std::size_t>{3, 4}, std::vector<std::size_t>{2, 3, 4},
                      std::vector<std::size_t>{2, 2, 2, 3}}) {
        GridPlan plan = plan_grid(grid_target(dims, w), w);
        std::vector<Dyadic> widths(plan.cube_count(), w);
        auto ps = compute_positions(widths, plan);
        for (const auto& p : ps)
            for (std::size_t k = 0; k < dims.size(); ++k)
                CHECK(p.brick.lo(plan.axis_map[k]) == w.mul_int(static_cast<long>(p.index[k])));
    }
}

TEST_CASE("four cube example, scaled by ten") {
    // widths 1.0 0.9 0.8 0.7 become 10 9 8 7 in a 20 x 20 square
    GridPlan plan = plan_grid(box({0, 0}, {20, 20}), Dyadic(10));
    REQUIRE(plan.dims == std::vector<std::size_t>{2, 2});
    std::vector<Dyadic> widths{10, 9, 8, 7};
    auto ps = compute_positions(widths, plan);
    CHECK(at(ps, plan, {0, 0}).brick.lo() == std::vector<Dyadic>{0, 0});
    CHECK(at(ps, plan, {1, 0}).brick.lo() == std::vector<Dyadic>{10, 0});
    CHECK(at(ps, plan, {0, 1}).brick.lo() == std::vector<Dyadic>{4, 10});
    CHECK(at(ps, plan, {1, 1}).brick.lo() == std::vector<Dyadic>{12, 9});
    // touching on axis 0 in row 1
    CHECK(at(ps, plan, {0, 1}).brick.lo(0) + Dyadic(8) == at(ps, plan, {1, 1}).brick.lo(0));
    CHECK(certify_claims(ps, plan).ok());
    Dyadic placed;
    for (const auto& p : ps) placed += volume(p.brick);
    CHECK(placed == Dyadic(294));
}

TEST_CASE("compute_positions validates widths") {
    Dyadic w = dy(1, 2);
    GridPlan plan = plan_grid(grid_target({2, 2}, w), w);
    std::vector<Dyadic> increasing{dy(1, 3), dy(1, 2), dy(1, 3), dy(1, 3)};
    CHECK_THROWS_AS(compute_positions(increasing, plan), std::invalid_argument);
    std::vector<Dyadic> too_wide{dy(3, 2), dy(1, 2), dy(1, 2), dy(1, 2)};
    CHECK_THROWS_AS(compute_positions(too_wide, plan), std::invalid_argument);
    std::vector<Dyadic> short_list{dy(1, 2)};
    CHECK_THROWS_AS(compute_positions(short_list, plan), std::invalid_argument);
}

TEST_CASE("claims hold for random widths") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t d = 2 + trial % 3;
        std::vector<std::size_t> dims;
        for (std::size_t k = 0; k < d; ++k) dims.push_back(1 + rng() % 4);
        Dyadic w = Dyadic(1);
        GridPlan plan = plan_grid(grid_target(dims, w), w);
        auto widths = testing_support::random_widths(rng, plan.cube_count());
        auto ps = compute_positions(widths, plan, 500);
        auto claims = certify_claims(ps, plan);
        CHECK(claims.ok());
        CHECK(ps.front().ordinal == 500);
        // within M_* (max - min) of the lattice spanned by the widest cube
        Dyadic spread = widths.front() - widths.back();
        Dyadic slack = spread.mul_int(static_cast<long>(plan.cube_count()));
        for (const auto& p : ps)
            for (std::size_t k = 0; k < d; ++k) {
                Dyadic lattice = widths.front().mul_int(static_cast<long>(p.index[k]));
                CHECK(abs(p.brick.lo(plan.axis_map[k]) - lattice) <= slack);
            }
    }
}

TEST_CASE("shell and core") {
    Dyadic w = dy(1, 1);
    GridPlan plan = plan_grid(grid_target({3, 4}, w), w);
    std::vector<Dyadic> widths(12, w);
    auto sc = shell_and_core(compute_positions(widths, plan), plan);
    CHECK(sc.shell.size() == 10);
    REQUIRE(sc.core.has_value());

    GridPlan square = plan_grid(grid_target({3, 3}, w), w);
    std::vector<Dyadic> nine(9, w);
    auto sq = shell_and_core(compute_positions(nine, square), square);
    REQUIRE(sq.core.has_value());
    CHECK(*sq.core == Brick({w, w}, {w.mul_int(2), w.mul_int(2)}));

    GridPlan twos = plan_grid(grid_target({2, 2, 2}, w), w);
    std::vector<Dyadic> eight(8, w);
    auto tw = shell_and_core(compute_positions(eight, twos), twos);
    CHECK(tw.shell.size() == 8);
    CHECK_FALSE(tw.core.has_value());
}

TEST_CASE("placements map back to original axes") {
    Dyadic w(1);
    Brick s({Dyadic(5), Dyadic(-3)}, {Dyadic(9), Dyadic(-1)});  // 4 w by 2 w
    GridPlan plan = plan_grid(s, w);
    CHECK(plan.axis_map == std::vector<std::size_t>{1, 0});
    std::vector<Dyadic> widths(8, w);
    auto ps = compute_positions(widths, plan);
    for (const auto& p : ps) CHECK(contains(s, p.brick));
    CHECK(certify_claims(ps, plan).ok());
}

}  // TEST_SUITE
