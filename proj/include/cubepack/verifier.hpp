#pragma once

#include "cubepack/certificate.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cubepack {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool mandatory = true;
    std::string detail;
};

struct BatchSnugness {
    std::uint64_t n0 = 0;
    std::uint64_t size = 0;
    /// max over cubes of A^(1/(d-1)) / w, A the cube's boundary area not
    /// shared with another cube or the region boundary, w the widest cube.
    /// Grid batches also exclude the outward faces of their outer layer.
    double eps_hat = 0;
    Dyadic max_uncovered_area;
    /// Area of the region boundary not covered by cube faces.
    Dyadic region_uncovered_area;
};

struct VerificationReport {
    bool passed = false;
    std::vector<CheckResult> checks;

    struct Metrics {
        long double rounding_deficit = 0;     // sum (n^-dt - placed volume), estimate
        long double rounding_deficit_max = 0; // certified upper end; lower end is 0
        long double tail_after_last = 0;      // sum_{n > last placed} n^-dt
        long double tail_after_last_error = 0;
        Dyadic container_excess;
        std::vector<BatchSnugness> snugness;
        std::vector<double> surf_ratio_series;
        std::optional<std::string> max_pair_violation;
    } metrics;

    std::string to_text() const;
    /// One "key=value" record per line.
    std::string to_key_values() const;
};

std::vector<CheckResult> verify_legality(const Certificate& cert, VerificationReport::Metrics* metrics = nullptr);
std::vector<CheckResult> verify_sidelengths(const Certificate& cert);
std::vector<CheckResult> verify_volume_identity(const Certificate& cert,
                                                VerificationReport::Metrics* metrics = nullptr);

BatchSnugness measure_snugness(const Brick& region, std::span<const Brick> cubes);
/// Same, for a grid batch: `cubes` in linear grid order, `dims` per axis.
/// Faces of the outer layer pointing away from the grid count as covered.
BatchSnugness measure_snugness(const Brick& region, std::span<const Brick> cubes, std::span<const std::size_t> dims);
/// Snugness of the cubes of stats record `batch_id` within its region.
BatchSnugness snugness_measure(const Certificate& cert, std::size_t batch_id);

VerificationReport verify(const Certificate& cert);

/// Overlapping pair by sorting and sweeping on exact integer coordinates.
std::optional<std::pair<std::size_t, std::size_t>> sweep_overlap(std::span<const Brick> bricks);
/// All-pairs reference.
std::optional<std::pair<std::size_t, std::size_t>> brute_force_overlap(std::span<const Brick> bricks);

}  // namespace cubepack
