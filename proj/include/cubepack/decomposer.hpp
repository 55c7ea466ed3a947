#pragma once

#include "cubepack/geometry.hpp"

#include <span>

namespace cubepack {

struct GapPartition {
    Brick region;
    BrickCollection holes;
    BrickCollection parts;
    struct Stats {
        std::size_t part_count = 0;
        double surf_delta_total = 0;
        Dyadic max_part_width;
    } stats;
};

/// Partitions region minus the holes into interior-disjoint bricks.
///
/// The region is cut recursively along hole faces (choosing on each level
/// the cut that best balances the holes between the two sides), leaves free
/// of holes become parts, and the parts are then coarsened by greedy_merge.
/// The result is a deterministic function of the inputs and satisfies the
/// exact identity vol(region) = vol(parts) + sum vol(hole meet region).
///
/// Throws std::invalid_argument if two holes overlap or a hole misses the
/// region's interior.
GapPartition complement_partition(const Brick& region, std::span<const Brick> holes, double delta = 0.0);

/// Repeatedly fuses pairs of bricks that share a full facet, sweeping axes in
/// order 0..d-1 until nothing changes. The output is sorted by (lo, hi).
BrickCollection greedy_merge(BrickCollection parts);

}  // namespace cubepack
