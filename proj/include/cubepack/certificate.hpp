#pragma once

#include "cubepack/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubepack {

enum class PackingMode { container_cube, given_brick };

std::string to_string(PackingMode mode);
PackingMode parse_packing_mode(const std::string& text);

struct PackingConfig {
    std::size_t d = 2;
    RationalExponent t{3, 5};
    double delta = 0.4;
    std::uint64_t M = 4;
    std::uint64_t n0 = 1000;
    std::uint64_t n_max = 6000;
    std::uint32_t precision = 64;
    PackingMode mode = PackingMode::container_cube;
    /// Cap on each M_i; unset means 8 M.
    std::optional<std::uint64_t> batch_cap;
    /// Allowed growth of the surface ratio over its value after the warm-up
    /// steps before the monitor flags it.
    double surf_ratio_limit = 2.0;
    /// Container for given_brick mode.
    std::optional<Brick> container;

    std::uint64_t effective_batch_cap() const { return batch_cap.value_or(8 * M); }

    friend bool operator==(const PackingConfig&, const PackingConfig&) = default;
};

/// Number of steps after which the surface-ratio reference is taken.
inline constexpr std::size_t kSurfRatioWarmupSteps = 10;

/// delta = 1/(d-1) - t.
double default_delta(std::size_t d, const RationalExponent& t);

struct CubeRecord {
    std::uint64_t n = 0;
    std::vector<Dyadic> lo;
    Dyadic width;

    Brick brick() const { return Brick::cube(lo, width); }
    friend bool operator==(const CubeRecord&, const CubeRecord&) = default;
};

/// Per-step statistics of a packing run.
struct StepRecord {
    std::uint64_t step = 0;
    std::uint64_t n0 = 0;
    std::uint64_t batch_size = 0;
    std::vector<std::uint64_t> dims;  // M_i per original axis
    Brick region;                     // packed region of the batch
    Dyadic widest_width;              // width of the brick chosen for the step
    Dyadic required_width;            // M * w_{n0}
    Dyadic vol_free;                  // after the step
    double surf_delta_free = 0;       // after the step
    double lemma_width_bound = 0;     // (vol/surf_delta)^(1/(1-delta)) before the step
    double surf_ratio = 0;            // after the step
    double eps_hat = 0;
    std::uint64_t free_count = 0;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Certificate {
    PackingConfig config;
    Brick container;
    std::vector<CubeRecord> placements;  // ordered by n
    BrickCollection free;
    std::vector<StepRecord> stats;
    /// vol(container) minus the certified upper bound on the cube volume
    /// sum_{n >= n0} n^-dt (zero in given_brick mode).
    Dyadic volume_deficit;
    double tail_value = 0;
    double tail_error = 0;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

}  // namespace cubepack
