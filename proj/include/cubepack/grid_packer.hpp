#pragma once

#include "cubepack/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cubepack {

using MultiIndex = std::vector<std::size_t>;

/// Grid of M_1 x ... x M_d cubes of width at most `base_width` laid out in a
/// target brick. `dims` are in the internal axis order (nondecreasing);
/// `axis_map[k]` is the original axis carrying internal axis k.
struct GridPlan {
    std::vector<std::size_t> dims;
    Dyadic base_width;
    Brick target;
    std::vector<Dyadic> origin;
    std::vector<std::size_t> axis_map;

    std::size_t dim() const { return dims.size(); }
    std::size_t cube_count() const;

    /// [origin, origin + M w] in original axes.
    Brick packed_region() const;
    /// Slabs of `target` outside packed_region(), as a guillotine partition.
    BrickCollection margins() const;
};

/// M_i = floor(S_i / w), optionally capped, with axes relabeled so that
/// M_1 <= ... <= M_d. Throws std::invalid_argument if some S_i < w.
GridPlan plan_grid(const Brick& target, const Dyadic& w, std::optional<std::size_t> cap = std::nullopt);

/// n = i_1 + i_2 M_1 + i_3 M_1 M_2 + ...  Throws std::out_of_range.
std::size_t linear_index(std::span<const std::size_t> index, std::span<const std::size_t> dims);
MultiIndex multi_index(std::size_t n, std::span<const std::size_t> dims);

struct Placement {
    std::uint64_t ordinal = 0;
    MultiIndex index;  // internal axis order
    Brick brick;       // original axes, absolute coordinates
    Dyadic width;
};

/// Positions cube C_i (width widths[n_i]) at
///   x^k_i = sum_j w(i_1..i_{k-1}, j, 0..0) - sum_{j >= i_k} w(i_1..i_{k-1}, j, i_{k+1}..i_d)
/// relative to the plan origin. `widths` must be nonincreasing with every
/// entry at most the plan's base width; throws std::invalid_argument
/// otherwise. Ordinals are first_ordinal + linear index.
std::vector<Placement> compute_positions(std::span<const Dyadic> widths, const GridPlan& plan,
                                         std::uint64_t first_ordinal = 0);

struct ClaimCheck {
    std::size_t touching_pairs = 0;
    std::size_t touching_failures = 0;
    std::size_t diagonal_pairs = 0;
    std::size_t diagonal_failures = 0;
    std::size_t containment_failures = 0;

    bool ok() const { return touching_failures == 0 && diagonal_failures == 0 && containment_failures == 0; }
};

/// Checks, exactly, that axis-adjacent cubes touch (x^k_{i+e_k} = x^k_i + w_i),
/// that every diagonal neighbour pair i, i+e (e a 0/1 vector with two or more
/// ones) is separated on some axis, and that all cubes lie in packed_region().
ClaimCheck certify_claims(std::span<const Placement> placements, const GridPlan& plan);

struct ShellAndCore {
    BrickCollection shell;
    std::optional<Brick> core;  // bounding brick of the non-shell cubes
};

/// Shell = cubes with some i_k in {0, M_k - 1}. The solid K is the core
/// brick together with the shell.
ShellAndCore shell_and_core(std::span<const Placement> placements, const GridPlan& plan);

}  // namespace cubepack
