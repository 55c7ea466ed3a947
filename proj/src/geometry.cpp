#include "cubepack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cubepack {

Brick::Brick(std::vector<Dyadic> lo, std::vector<Dyadic> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw std::invalid_argument("brick lo/hi dimension mismatch");
    if (lo_.size() < 2) throw std::invalid_argument("brick dimension must be at least 2");
    for (std::size_t k = 0; k < lo_.size(); ++k)
        if (!(lo_[k] < hi_[k]))
            throw std::invalid_argument("brick has empty interior on axis " + std::to_string(k));
}

Brick Brick::cube(std::vector<Dyadic> lo, const Dyadic& side) {
    std::vector<Dyadic> hi;
    hi.reserve(lo.size());
    for (const auto& x : lo) hi.push_back(x + side);
    return Brick(std::move(lo), std::move(hi));
}

std::pair<Brick, Brick> Brick::split(std::size_t axis, const Dyadic& at) const {
    if (!(lo_[axis] < at && at < hi_[axis])) throw std::invalid_argument("split coordinate outside brick");
    Brick lower = *this, upper = *this;
    lower.hi_[axis] = at;
    upper.lo_[axis] = at;
    return {std::move(lower), std::move(upper)};
}

std::vector<Dyadic> sorted_sidelengths(const Brick& b) {
    std::vector<Dyadic> s;
    s.reserve(b.dim());
    for (std::size_t k = 0; k < b.dim(); ++k) s.push_back(b.side(k));
    std::sort(s.begin(), s.end());
    return s;
}

Dyadic width(const Brick& b) {
    Dyadic w = b.side(0);
    for (std::size_t k = 1; k < b.dim(); ++k) {
        Dyadic s = b.side(k);
        if (s < w) w = std::move(s);
    }
    return w;
}

std::size_t shortest_axis(const Brick& b) {
    std::size_t best = 0;
    Dyadic w = b.side(0);
    for (std::size_t k = 1; k < b.dim(); ++k) {
        Dyadic s = b.side(k);
        if (s < w) {
            w = std::move(s);
            best = k;
        }
    }
    return best;
}

Dyadic volume(const Brick& b) {
    Dyadic v = b.side(0);
    for (std::size_t k = 1; k < b.dim(); ++k) v *= b.side(k);
    return v;
}

Dyadic volume(std::span<const Brick> bricks) {
    Dyadic total;
    for (const auto& b : bricks) total += volume(b);
    return total;
}

namespace {

std::vector<long double> float_sides(const Brick& b) {
    std::vector<long double> s;
    s.reserve(b.dim());
    for (const auto& x : sorted_sidelengths(b)) s.push_back(x.to_long_double());
    return s;
}

}  // namespace

double eccentricity(const Brick& b) {
    auto s = float_sides(b);
    long double r = 1;
    for (std::size_t k = 1; k < s.size(); ++k) r *= s[k] / s[0];
    return static_cast<double>(r);
}

double surf(const Brick& b) {
    auto s = float_sides(b);
    long double total = 0;
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
        long double p = 1;
        for (std::size_t k = 0; k < s.size(); ++k)
            if (k != skip) p *= s[k];
        total += p;
    }
    return static_cast<double>(2 * total);
}

double surf_delta(const Brick& b, double delta) {
    auto s = float_sides(b);
    long double p = std::pow(s[0], static_cast<long double>(delta));
    for (std::size_t k = 1; k < s.size(); ++k) p *= s[k];
    return static_cast<double>(p);
}

double surf(std::span<const Brick> bricks) {
    long double total = 0;
    for (const auto& b : bricks) total += surf(b);
    return static_cast<double>(total);
}

double surf_delta(std::span<const Brick> bricks, double delta) {
    long double total = 0;
    for (const auto& b : bricks) total += surf_delta(b, delta);
    return static_cast<double>(total);
}

Measures measures(const Brick& b, double delta) {
    return {volume(b), eccentricity(b), surf(b), surf_delta(b, delta)};
}

Measures measures(std::span<const Brick> bricks, double delta) {
    Measures m;
    long double ecc = 0, sf = 0, sd = 0;
    for (const auto& b : bricks) {
        m.volume += volume(b);
        ecc += eccentricity(b);
        sf += surf(b);
        sd += surf_delta(b, delta);
    }
    m.eccentricity = static_cast<double>(ecc);
    m.surf = static_cast<double>(sf);
    m.surf_delta = static_cast<double>(sd);
    return m;
}

double size_discrepancy(std::span<const Brick> bricks) {
    if (bricks.empty()) throw std::invalid_argument("size discrepancy of an empty collection");
    Dyadic lo = width(bricks[0]), hi = lo;
    for (const auto& b : bricks.subspan(1)) {
        Dyadic w = width(b);
        if (w < lo) lo = w;
        if (hi < w) hi = w;
    }
    // hi/lo - 1 = (hi - lo)/lo keeps precision for nearly equal widths
    return static_cast<double>((hi - lo).to_long_double() / lo.to_long_double());
}

bool interiors_disjoint(const Brick& a, const Brick& b) {
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.hi(k) <= b.lo(k) || b.hi(k) <= a.lo(k)) return true;
    return false;
}

bool contains(const Brick& outer, const Brick& inner) {
    for (std::size_t k = 0; k < outer.dim(); ++k)
        if (inner.lo(k) < outer.lo(k) || outer.hi(k) < inner.hi(k)) return false;
    return true;
}

Dyadic touching_face_area(const Brick& a, const Brick& b) {
    std::size_t touching_axis = a.dim();
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a.hi(k) < b.lo(k) || b.hi(k) < a.lo(k)) return {};
        if (a.hi(k) == b.lo(k) || b.hi(k) == a.lo(k)) {
            if (touching_axis != a.dim()) return {};  // edge or corner contact
            touching_axis = k;
        }
    }
    if (touching_axis == a.dim()) return {};  // interiors overlap
    Dyadic area(1);
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (k != touching_axis) area *= min(a.hi(k), b.hi(k)) - max(a.lo(k), b.lo(k));
    return area;
}

PairPredicates predicates(const Brick& a, const Brick& b) {
    return {interiors_disjoint(a, b), contains(a, b), touching_face_area(a, b)};
}

std::optional<Brick> intersection(const Brick& a, const Brick& b) {
    if (interiors_disjoint(a, b)) return std::nullopt;
    std::vector<Dyadic> lo, hi;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        lo.push_back(max(a.lo(k), b.lo(k)));
        hi.push_back(min(a.hi(k), b.hi(k)));
    }
    return Brick(std::move(lo), std::move(hi));
}

std::optional<std::pair<std::size_t, std::size_t>> first_overlap(std::span<const Brick> bricks) {
    std::vector<std::size_t> order(bricks.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return bricks[x].lo(0) < bricks[y].lo(0); });
    std::vector<std::size_t> active;
    for (std::size_t idx : order) {
        const Brick& cur = bricks[idx];
        std::size_t keep = 0;
        for (std::size_t a : active) {
            if (bricks[a].hi(0) <= cur.lo(0)) continue;
            active[keep++] = a;
            if (!interiors_disjoint(bricks[a], cur)) return std::pair{std::min(a, idx), std::max(a, idx)};
        }
        active.resize(keep);
        active.push_back(idx);
    }
    return std::nullopt;
}

}  // namespace cubepack
