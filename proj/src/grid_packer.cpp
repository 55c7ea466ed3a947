#include "cubepack/grid_packer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cubepack {

std::size_t GridPlan::cube_count() const {
    std::size_t n = 1;
    for (auto m : dims) n *= m;
    return n;
}

Brick GridPlan::packed_region() const {
    std::vector<Dyadic> lo = origin, hi = origin;
    for (std::size_t k = 0; k < dim(); ++k) {
        auto axis = axis_map[k];
        hi[axis] += base_width.mul_int(mpz_class(static_cast<unsigned long>(dims[k])));
    }
    return Brick(std::move(lo), std::move(hi));
}

BrickCollection GridPlan::margins() const {
    BrickCollection out;
    Brick region = packed_region();
    Brick rest = target;
    for (std::size_t axis = 0; axis < target.dim(); ++axis) {
        if (region.hi(axis) < rest.hi(axis)) {
            auto [kept, slab] = rest.split(axis, region.hi(axis));
            out.push_back(std::move(slab));
            rest = std::move(kept);
        }
    }
    return out;
}

GridPlan plan_grid(const Brick& target, const Dyadic& w, std::optional<std::size_t> cap) {
    if (w.sign() <= 0) throw std::invalid_argument("grid width must be positive");
    if (cap && *cap == 0) throw std::invalid_argument("grid cap must be positive");
    const std::size_t d = target.dim();
    std::vector<std::size_t> m(d);
    for (std::size_t k = 0; k < d; ++k) {
        mpz_class q = target.side(k).floor_div(w);
        if (q < 1)
            throw std::invalid_argument("brick too thin: side " + std::to_string(k) + " is " +
                                        target.side(k).to_string() + " < " + w.to_string());
        m[k] = q.fits_ulong_p() ? q.get_ui() : static_cast<std::size_t>(-1);
        if (cap) m[k] = std::min(m[k], *cap);
    }
    GridPlan plan;
    plan.axis_map.resize(d);
    std::iota(plan.axis_map.begin(), plan.axis_map.end(), 0);
    std::stable_sort(plan.axis_map.begin(), plan.axis_map.end(),
                     [&](std::size_t a, std::size_t b) { return m[a] < m[b]; });
    for (auto axis : plan.axis_map) plan.dims.push_back(m[axis]);
    plan.base_width = w;
    plan.target = target;
    plan.origin = target.lo();
    return plan;
}

std::size_t linear_index(std::span<const std::size_t> index, std::span<const std::size_t> dims) {
    if (index.size() != dims.size()) throw std::out_of_range("multi-index dimension mismatch");
    std::size_t n = 0, stride = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (index[k] >= dims[k]) throw std::out_of_range("multi-index component out of range");
        n += index[k] * stride;
        stride *= dims[k];
    }
    return n;
}

MultiIndex multi_index(std::size_t n, std::span<const std::size_t> dims) {
    MultiIndex idx(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        idx[k] = n % dims[k];
        n /= dims[k];
    }
    if (n != 0) throw std::out_of_range("linear index out of range");
    return idx;
}

std::vector<Placement> compute_positions(std::span<const Dyadic> widths, const GridPlan& plan,
                                         std::uint64_t first_ordinal) {
    const std::size_t d = plan.dim();
    const std::size_t total = plan.cube_count();
    if (widths.size() != total)
        throw std::invalid_argument("expected " + std::to_string(total) + " widths, got " +
                                    std::to_string(widths.size()));
    for (std::size_t n = 0; n < total; ++n) {
        if (plan.base_width < widths[n])
            throw std::invalid_argument("width at index " + std::to_string(n) + " exceeds the grid width");
        if (widths[n].sign() <= 0) throw std::invalid_argument("widths must be positive");
        if (n > 0 && widths[n - 1] < widths[n])
            throw std::invalid_argument("widths are not sorted nonincreasing at index " + std::to_string(n));
    }

    // coords[k][n] = x^k of cube n along internal axis k.
    std::vector<std::vector<Dyadic>> coords(d, std::vector<Dyadic>(total));
    std::vector<Dyadic> suffix(total);
    std::size_t stride = 1;
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t mk = plan.dims[k];
        // suffix[n] = sum_{j >= i_k} w(i_1..i_{k-1}, j, i_{k+1}..i_d)
        for (std::size_t n = total; n-- > 0;) {
            suffix[n] = widths[n];
            if ((n / stride) % mk + 1 < mk) suffix[n] += suffix[n + stride];
        }
        // the full rod sum with zero tail sits at index n mod stride
        for (std::size_t n = 0; n < total; ++n) coords[k][n] = suffix[n % stride] - suffix[n];
        stride *= mk;
    }

    std::vector<Placement> out;
    out.reserve(total);
    for (std::size_t n = 0; n < total; ++n) {
        std::vector<Dyadic> lo = plan.origin;
        for (std::size_t k = 0; k < d; ++k) lo[plan.axis_map[k]] += coords[k][n];
        out.push_back(Placement{first_ordinal + n, multi_index(n, plan.dims), Brick::cube(std::move(lo), widths[n]),
                                widths[n]});
    }
    return out;
}

ClaimCheck certify_claims(std::span<const Placement> placements, const GridPlan& plan) {
    const std::size_t d = plan.dim();
    const std::size_t total = plan.cube_count();
    if (placements.size() != total) throw std::invalid_argument("placement count does not match the plan");
    ClaimCheck check;
    Brick region = plan.packed_region();
    std::vector<std::size_t> strides(d, 1);
    for (std::size_t k = 1; k < d; ++k) strides[k] = strides[k - 1] * plan.dims[k - 1];

    for (std::size_t n = 0; n < total; ++n) {
        const Placement& cur = placements[n];
        if (!contains(region, cur.brick)) ++check.containment_failures;
        const MultiIndex& idx = cur.index;
        bool interior = true;  // i in I: i_k <= M_k - 2 for all k
        for (std::size_t k = 0; k < d; ++k) interior = interior && idx[k] + 1 < plan.dims[k];

        // touching for every axis-unit neighbour that exists
        for (std::size_t k = 0; k < d; ++k) {
            if (idx[k] + 1 >= plan.dims[k]) continue;
            const Placement& next = placements[n + strides[k]];
            auto axis = plan.axis_map[k];
            ++check.touching_pairs;
            if (next.brick.lo(axis) != cur.brick.hi(axis)) ++check.touching_failures;
        }
        if (!interior) continue;

        // separation: e with at least two ones
        for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
            if ((mask & (mask - 1)) == 0) continue;
            std::size_t m = n;
            for (std::size_t k = 0; k < d; ++k)
                if (mask >> k & 1) m += strides[k];
            const Placement& other = placements[m];
            ++check.diagonal_pairs;
            bool separated = false;
            for (std::size_t k = 0; k < d && !separated; ++k) {
                auto axis = plan.axis_map[k];
                separated = cur.brick.hi(axis) <= other.brick.lo(axis) || other.brick.hi(axis) <= cur.brick.lo(axis);
            }
            if (!separated) ++check.diagonal_failures;
        }
    }
    return check;
}

ShellAndCore shell_and_core(std::span<const Placement> placements, const GridPlan& plan) {
    ShellAndCore out;
    std::optional<std::vector<Dyadic>> lo, hi;
    for (const auto& p : placements) {
        bool on_shell = false;
        for (std::size_t k = 0; k < plan.dim(); ++k)
            on_shell = on_shell || p.index[k] == 0 || p.index[k] + 1 == plan.dims[k];
        if (on_shell) {
            out.shell.push_back(p.brick);
            continue;
        }
        if (!lo) {
            lo = p.brick.lo();
            hi = p.brick.hi();
            continue;
        }
        for (std::size_t k = 0; k < p.brick.dim(); ++k) {
            if (p.brick.lo(k) < (*lo)[k]) (*lo)[k] = p.brick.lo(k);
            if ((*hi)[k] < p.brick.hi(k)) (*hi)[k] = p.brick.hi(k);
        }
    }
    if (lo) out.core = Brick(std::move(*lo), std::move(*hi));
    return out;
}

}  // namespace cubepack
