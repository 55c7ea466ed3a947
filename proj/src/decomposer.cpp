#include "cubepack/decomposer.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace cubepack {

namespace {

struct Task {
    Brick region;
    std::vector<std::size_t> holes;  // holes whose interior meets the region
};

bool covers(const Brick& hole, const Brick& region) { return contains(hole, region); }

struct Cut {
    std::size_t axis = 0;
    Dyadic at;
    std::size_t worst = 0;
    std::size_t sum = 0;
};

// Cut along a hole face strictly inside the region that minimises the larger
// side's hole count, then the total (which counts each severed hole twice).
Cut choose_cut(const Brick& region, std::span<const Brick> holes, const std::vector<std::size_t>& ids) {
    std::optional<Cut> best;
    std::vector<const Dyadic*> los, his, candidates;
    for (std::size_t axis = 0; axis < region.dim(); ++axis) {
        los.clear();
        his.clear();
        candidates.clear();
        for (auto id : ids) {
            const Brick& h = holes[id];
            los.push_back(&h.lo(axis));
            his.push_back(&h.hi(axis));
            if (region.lo(axis) < h.lo(axis)) candidates.push_back(&h.lo(axis));
            if (h.hi(axis) < region.hi(axis)) candidates.push_back(&h.hi(axis));
        }
        auto less = [](const Dyadic* a, const Dyadic* b) { return *a < *b; };
        std::sort(los.begin(), los.end(), less);
        std::sort(his.begin(), his.end(), less);
        std::sort(candidates.begin(), candidates.end(), less);
        candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                     [](const Dyadic* a, const Dyadic* b) { return *a == *b; }),
                         candidates.end());
        for (const Dyadic* c : candidates) {
            auto left = static_cast<std::size_t>(std::lower_bound(los.begin(), los.end(), c, less) - los.begin());
            auto right = static_cast<std::size_t>(his.end() - std::upper_bound(his.begin(), his.end(), c, less));
            Cut cut{axis, *c, std::max(left, right), left + right};
            if (!best || std::tie(cut.worst, cut.sum) < std::tie(best->worst, best->sum)) best = std::move(cut);
        }
    }
    if (!best) throw std::logic_error("no admissible cut in a partially covered region");
    return *best;
}

using Key = std::vector<const Dyadic*>;

bool merge_pass(BrickCollection& parts, std::size_t axis) {
    const std::size_t d = parts.empty() ? 0 : parts.front().dim();
    auto key_less = [&](const Brick& a, const Brick& b) {
        for (std::size_t k = 0; k < d; ++k) {
            if (k == axis) continue;
            if (auto c = a.lo(k) <=> b.lo(k); c != 0) return c < 0;
            if (auto c = a.hi(k) <=> b.hi(k); c != 0) return c < 0;
        }
        return a.lo(axis) < b.lo(axis);
    };
    auto same_key = [&](const Brick& a, const Brick& b) {
        for (std::size_t k = 0; k < d; ++k)
            if (k != axis && (a.lo(k) != b.lo(k) || a.hi(k) != b.hi(k))) return false;
        return true;
    };
    std::sort(parts.begin(), parts.end(), key_less);
    BrickCollection out;
    out.reserve(parts.size());
    bool merged = false;
    for (auto& b : parts) {
        if (!out.empty() && same_key(out.back(), b) && out.back().hi(axis) == b.lo(axis)) {
            std::vector<Dyadic> hi = out.back().hi();
            hi[axis] = b.hi(axis);
            out.back() = Brick(out.back().lo(), std::move(hi));
            merged = true;
        } else {
            out.push_back(std::move(b));
        }
    }
    parts = std::move(out);
    return merged;
}

bool lex_less(const Brick& a, const Brick& b) {
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (auto c = a.lo(k) <=> b.lo(k); c != 0) return c < 0;
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (auto c = a.hi(k) <=> b.hi(k); c != 0) return c < 0;
    return false;
}

}  // namespace

BrickCollection greedy_merge(BrickCollection parts) {
    if (parts.empty()) return parts;
    const std::size_t d = parts.front().dim();
    std::size_t quiet_axes = 0;
    for (std::size_t axis = 0; quiet_axes < d; axis = (axis + 1) % d) {
        if (merge_pass(parts, axis))
            quiet_axes = 1;
        else
            ++quiet_axes;
    }
    std::sort(parts.begin(), parts.end(), lex_less);
    return parts;
}

GapPartition complement_partition(const Brick& region, std::span<const Brick> holes, double delta) {
    for (std::size_t i = 0; i < holes.size(); ++i) {
        if (holes[i].dim() != region.dim()) throw std::invalid_argument("hole dimension mismatch");
        if (interiors_disjoint(holes[i], region))
            throw std::invalid_argument("hole " + std::to_string(i) + " does not meet the region");
    }
    if (auto pair = first_overlap(holes))
        throw std::invalid_argument("holes " + std::to_string(pair->first) + " and " + std::to_string(pair->second) +
                                    " overlap");

    GapPartition gp;
    gp.region = region;
    gp.holes.assign(holes.begin(), holes.end());

    BrickCollection leaves;
    std::vector<Task> stack;
    {
        Task root{region, {}};
        root.holes.resize(holes.size());
        for (std::size_t i = 0; i < holes.size(); ++i) root.holes[i] = i;
        stack.push_back(std::move(root));
    }
    while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        if (task.holes.empty()) {
            leaves.push_back(std::move(task.region));
            continue;
        }
        if (task.holes.size() == 1 && covers(holes[task.holes.front()], task.region)) continue;
        Cut cut = choose_cut(task.region, holes, task.holes);
        auto [lower, upper] = task.region.split(cut.axis, cut.at);
        Task lo_task{std::move(lower), {}}, hi_task{std::move(upper), {}};
        for (auto id : task.holes) {
            if (holes[id].lo(cut.axis) < cut.at) lo_task.holes.push_back(id);
            if (cut.at < holes[id].hi(cut.axis)) hi_task.holes.push_back(id);
        }
        // upper half is pushed first so the lower half is processed first
        stack.push_back(std::move(hi_task));
        stack.push_back(std::move(lo_task));
    }

    gp.parts = greedy_merge(std::move(leaves));

    Dyadic covered;
    for (const auto& h : holes) covered += volume(*intersection(h, region));
    if (volume(region) != covered + volume(gp.parts))
        throw std::logic_error("gap partition lost volume");

    gp.stats.part_count = gp.parts.size();
    gp.stats.surf_delta_total = surf_delta(gp.parts, delta);
    for (const auto& p : gp.parts) gp.stats.max_part_width = max(gp.stats.max_part_width, width(p));
    return gp;
}

}  // namespace cubepack
