#pragma once

#include "cubepack/grid_packer.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace testing_support {

using cubepack::Brick;
using cubepack::Dyadic;

inline Dyadic dy(long m, std::uint32_t p = 0) { return Dyadic(mpz_class(m), p); }

inline Brick box(std::vector<long> lo, std::vector<long> hi, std::uint32_t p = 0) {
    std::vector<Dyadic> l, h;
    for (auto v : lo) l.push_back(dy(v, p));
    for (auto v : hi) h.push_back(dy(v, p));
    return Brick(std::move(l), std::move(h));
}

// Nonincreasing widths in (w/2, w] on the 2^-p grid.
inline std::vector<Dyadic> random_widths(std::mt19937_64& rng, std::size_t count, std::uint32_t p = 20) {
    std::uniform_int_distribution<long> dist((1L << (p - 1)) + 1, 1L << p);
    std::vector<long> raw(count);
    for (auto& r : raw) r = dist(rng);
    std::sort(raw.begin(), raw.end(), std::greater<>());
    std::vector<Dyadic> out;
    for (auto r : raw) out.push_back(dy(r, p));
    return out;
}

// Target brick of exactly dims[k] * w on each axis, at the origin.
inline Brick grid_target(const std::vector<std::size_t>& dims, const Dyadic& w) {
    std::vector<Dyadic> lo(dims.size()), hi;
    for (auto m : dims) hi.push_back(w.mul_int(static_cast<long>(m)));
    return Brick(std::move(lo), std::move(hi));
}

inline Brick random_brick(std::mt19937_64& rng, std::size_t d, std::uint32_t p = 8) {
    std::uniform_int_distribution<long> pos(0, 4L << p), len(1, 2L << p);
    std::vector<Dyadic> lo, hi;
    for (std::size_t k = 0; k < d; ++k) {
        long a = pos(rng);
        lo.push_back(dy(a, p));
        hi.push_back(dy(a + len(rng), p));
    }
    return Brick(std::move(lo), std::move(hi));
}

}  // namespace testing_support
