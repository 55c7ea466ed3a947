#pragma once

#include "cubepack/dyadic.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cubepack {

/// Closed axis-aligned box [lo_0, hi_0] x ... x [lo_{d-1}, hi_{d-1}] with
/// lo_k < hi_k on every axis.
class Brick {
public:
    Brick() = default;
    Brick(std::vector<Dyadic> lo, std::vector<Dyadic> hi);

    static Brick cube(std::vector<Dyadic> lo, const Dyadic& side);

    std::size_t dim() const { return lo_.size(); }
    const Dyadic& lo(std::size_t k) const { return lo_[k]; }
    const Dyadic& hi(std::size_t k) const { return hi_[k]; }
    const std::vector<Dyadic>& lo() const { return lo_; }
    const std::vector<Dyadic>& hi() const { return hi_; }
    Dyadic side(std::size_t k) const { return hi_[k] - lo_[k]; }

    /// Splits at `at` on `axis` (lo < at < hi) into the lower and upper parts.
    std::pair<Brick, Brick> split(std::size_t axis, const Dyadic& at) const;

    friend bool operator==(const Brick&, const Brick&) = default;

private:
    std::vector<Dyadic> lo_;
    std::vector<Dyadic> hi_;
};

using BrickCollection = std::vector<Brick>;

/// Sidelengths in nondecreasing order; the first entry is the width.
std::vector<Dyadic> sorted_sidelengths(const Brick& b);
Dyadic width(const Brick& b);
/// Lowest-numbered axis carrying the smallest sidelength.
std::size_t shortest_axis(const Brick& b);

Dyadic volume(const Brick& b);
Dyadic volume(std::span<const Brick> bricks);

double eccentricity(const Brick& b);
double surf(const Brick& b);
double surf_delta(const Brick& b, double delta);
double surf(std::span<const Brick> bricks);
double surf_delta(std::span<const Brick> bricks, double delta);

struct Measures {
    Dyadic volume;
    double eccentricity = 0;
    double surf = 0;
    double surf_delta = 0;
};

Measures measures(const Brick& b, double delta);
/// Member-wise sums.
Measures measures(std::span<const Brick> bricks, double delta);

/// max width / min width - 1. Throws std::invalid_argument when empty.
double size_discrepancy(std::span<const Brick> bricks);

bool interiors_disjoint(const Brick& a, const Brick& b);
/// True when `inner` lies inside `outer` (closed sets).
bool contains(const Brick& outer, const Brick& inner);
/// (d-1)-measure of the shared boundary of two interior-disjoint bricks;
/// zero when the interiors overlap or the contact is lower dimensional.
Dyadic touching_face_area(const Brick& a, const Brick& b);

struct PairPredicates {
    bool interiors_disjoint = false;
    bool contains = false;  // a contains b
    Dyadic touching_face_area;
};

PairPredicates predicates(const Brick& a, const Brick& b);

/// Intersection of two bricks with overlapping interiors.
std::optional<Brick> intersection(const Brick& a, const Brick& b);

/// Some pair of members whose interiors overlap, found by a sweep along
/// axis 0.
std::optional<std::pair<std::size_t, std::size_t>> first_overlap(std::span<const Brick> bricks);

}  // namespace cubepack
