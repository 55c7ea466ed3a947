#pragma once

#include "cubepack/certificate.hpp"
#include "cubepack/grid_packer.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace cubepack {

/// Invalid PackingConfig; the message names the violated condition.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No free brick is wide enough for the next batch.
class PackingStuck : public std::runtime_error {
public:
    PackingStuck(std::string message, std::uint64_t next_n, Dyadic widest, Dyadic required, double surf_ratio,
                 std::string state_dump);

    std::uint64_t next_n;
    Dyadic widest_width;
    Dyadic required_width;
    double surf_ratio;
    std::string state_dump;
};

void validate(const PackingConfig& config);

struct TailVolume {
    long double value = 0;
    long double error = 0;
};

/// sum_{n >= n0} n^-(d t) by direct summation up to a cutoff N plus the
/// convexity bracket  int_N^inf f + f(N)/2 <= sum_{n>=N} f(n) <= int_{N-1/2}^inf f,
/// with N chosen so the reported error is at most about 2^-guard_bits.
/// Throws std::domain_error when d t <= 1.
TailVolume tail_volume(std::uint64_t n0, std::size_t d, const RationalExponent& t, unsigned guard_bits = 40);

struct Container {
    Brick brick;
    Dyadic excess;  // vol(brick) - certified upper bound of the tail
    TailVolume tail;
};

/// Cube whose side is the smallest multiple of 2^-p with side^d >= tail
/// upper bound (container_cube mode), or the configured brick.
Container initial_container(const PackingConfig& config);

/// Free-brick inventory ordered by width (widest first), ties broken by
/// lexicographic lo then hi coordinates.
class FreeInventory {
public:
    void insert(Brick b);
    void erase(const Brick& b);
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const Brick& widest() const;
    /// Members sorted lexicographically by (lo, hi).
    BrickCollection sorted() const;
    const Dyadic& volume() const { return volume_; }
    double surf_delta(double delta) const;

private:
    struct Entry {
        Dyadic width;
        Brick brick;
    };
    struct Order {
        bool operator()(const Entry& a, const Entry& b) const;
    };
    std::set<Entry, Order> entries_;
    Dyadic volume_;
};

struct PackingState {
    Brick container;
    FreeInventory free;
    std::uint64_t next_n = 0;
    std::vector<CubeRecord> placements;
    Dyadic placed_volume;
    std::vector<StepRecord> stats;
};

PackingState initial_state(const Brick& container, std::uint64_t n0);

struct Slice {
    Brick source;
    Brick target;
    std::optional<Brick> remainder;
    Dyadic cube_width;  // w_{n0}
};

/// Picks the widest free brick and cuts it across its shortest axis at
/// exactly M w_{n0} when it is at least (M+1) w_{n0} wide. Does not modify
/// the state. Throws PackingStuck when the widest brick is narrower than
/// M w_{n0}.
Slice select_and_slice(const PackingState& state, const PackingConfig& config);

/// One batch: slice, grid-pack cubes n0 .. n0 + M_* - 1, partition the gap,
/// update the inventory.
void pack_step(PackingState& state, const PackingConfig& config);

using StepObserver = std::function<void(const PackingState&)>;

/// Packs until next_n >= n_max. Batches are never truncated, so the last one
/// may run past n_max.
Certificate run(const PackingConfig& config, const StepObserver& observer = {});

/// sum_{m=1}^{n-1} m^-e.
long double partial_power_sum(std::uint64_t n, long double e);

}  // namespace cubepack
