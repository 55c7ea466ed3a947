#include "cubepack/dyadic.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace cubepack;
using testing_support::dy;

TEST_SUITE("dyadic") {

TEST_CASE("arithmetic examples") {
    CHECK(dy(1, 1) + dy(1, 2) == dy(3, 2));
    CHECK(dy(3, 3) * dy(1, 1) == dy(3, 4));
    CHECK(dy(5, 4) < dy(3, 3));
    CHECK((dy(5, 4) <=> dy(3, 3)) == std::strong_ordering::less);
    CHECK(dy(3, 2) - dy(3, 2) == Dyadic(0));
    CHECK(-dy(1, 3) + dy(1, 3) == Dyadic(0));
}

TEST_CASE("canonical form") {
    Dyadic x(mpz_class(12), 4);  // 12/16 = 3/4
    CHECK(x.mantissa() == 3);
    CHECK(x.exponent() == 2);
    CHECK(Dyadic(mpz_class(0), 9).exponent() == 0);
    CHECK(dy(1, 1) + dy(1, 1) == Dyadic(1));
    CHECK((dy(1, 1) + dy(1, 1)).exponent() == 0);
}

TEST_CASE("parse and print") {
    CHECK(Dyadic::parse("3/4") == dy(3, 2));
    CHECK(Dyadic::parse("5/2^10") == dy(5, 10));
    CHECK(Dyadic::parse("0.375") == dy(3, 3));
    CHECK(Dyadic::parse("-7") == Dyadic(-7));
    CHECK(Dyadic::parse("2.5") == dy(5, 1));
    CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::parse("0.1"), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::parse("abc"), std::invalid_argument);
    CHECK(dy(181, 8).to_string() == "181/2^8");
    CHECK(Dyadic(42).to_string() == "42");
}

TEST_CASE("pow2, scaling and division") {
    CHECK(Dyadic::pow2(-3) == dy(1, 3));
    CHECK(Dyadic::pow2(4) == Dyadic(16));
    CHECK(dy(3, 2).mul_pow2(3) == Dyadic(6));
    CHECK(dy(3, 2).mul_int(4) == Dyadic(3));
    CHECK(dy(3, 2).scaled(4) == 12);
    CHECK_THROWS_AS(dy(1, 5).scaled(4), std::domain_error);
    CHECK(Dyadic(7).floor_div(dy(3, 1)) == 4);  // 7 / 1.5
    CHECK(dy(3, 1).floor_div(dy(3, 1)) == 1);
    CHECK(dy(5, 3).to_double() == 0.625);
}

TEST_CASE("ring laws on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> m(-1000000, 1000000);
    std::uniform_int_distribution<int> p(0, 40);
    for (int i = 0; i < 500; ++i) {
        Dyadic a = dy(m(rng), p(rng)), b = dy(m(rng), p(rng)), c = dy(m(rng), p(rng));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        CHECK((a < b) == (a.to_long_double() < b.to_long_double()));
    }
}

TEST_CASE("rational exponent") {
    auto t = RationalExponent::make(6, 10);
    CHECK(t.num == 3);
    CHECK(t.den == 5);
    CHECK_THROWS_AS(RationalExponent::make(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(RationalExponent::make(1, 0), std::invalid_argument);
}

TEST_CASE("cube sidelength examples") {
    CHECK(cube_sidelength(1, RationalExponent::make(3, 5), 10) == Dyadic(1));
    CHECK(cube_sidelength(4, RationalExponent::make(1, 2), 10) == dy(1, 1));
    Dyadic s = cube_sidelength(2, RationalExponent::make(1, 2), 8);
    CHECK(s == dy(181, 8));
    // 181^2 * 2 = 65522 <= 2^16 < 182^2 * 2 = 66248
    CHECK(mpz_class(181 * 181 * 2) <= mpz_class(1) << 16);
    CHECK(mpz_class(182 * 182 * 2) > mpz_class(1) << 16);
}

TEST_CASE("cube sidelength frozen values") {
    // largest m with m^b n^a <= 2^(p b), found by integer bisection
    CHECK(cube_sidelength(1000, RationalExponent::make(3, 5), 64).scaled(64) == mpz_class("292361191054946569"));
    CHECK(cube_sidelength(1001, RationalExponent::make(3, 5), 64).scaled(64) == mpz_class("292185914552172412"));
    CHECK(cube_sidelength(1000, RationalExponent::make(2, 5), 64).scaled(64) == mpz_class("1163910865505352089"));
    CHECK(cube_sidelength(123457, RationalExponent::make(7, 10), 96).scaled(96) ==
          mpz_class("21618152699380374226389804"));
}

TEST_CASE("cube sidelength is the round-down certificate and monotone") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> n_dist(1, 5000000);
    const RationalExponent ts[] = {RationalExponent::make(3, 5), RationalExponent::make(2, 5),
                                   RationalExponent::make(7, 20), RationalExponent::make(1, 2)};
    for (int i = 0; i < 300; ++i) {
        std::uint64_t n = n_dist(rng);
        const auto& t = ts[i % 4];
        const std::uint32_t p = 32 + static_cast<std::uint32_t>(i % 5) * 24;
        mpz_class m = cube_sidelength(n, t, p).scaled(p);
        mpz_class na, lhs, rhs, bound;
        mpz_ui_pow_ui(na.get_mpz_t(), n, t.num);
        mpz_pow_ui(lhs.get_mpz_t(), m.get_mpz_t(), t.den);
        mpz_class m1 = m + 1;
        mpz_pow_ui(rhs.get_mpz_t(), m1.get_mpz_t(), t.den);
        mpz_ui_pow_ui(bound.get_mpz_t(), 2, static_cast<unsigned long>(p) * t.den);
        CHECK(lhs * na <= bound);
        CHECK(bound < rhs * na);
        CHECK(cube_sidelength(n + 1, t, p) <= cube_sidelength(n, t, p));
    }
}

}  // TEST_SUITE
