#include "cubepack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

// The verifier recomputes everything it checks from the certificate alone.
// It shares the Dyadic and Brick value types with the packer but none of the
// placement, slicing or partition code.

namespace cubepack {

namespace {

// Exact integer image of a set of boxes on the common 2^-P grid, stored flat.
template <class T>
struct IntBoxes {
    std::size_t d = 0;
    std::vector<T> lo, hi;

    std::size_t size() const { return d == 0 ? 0 : lo.size() / d; }
    bool disjoint(std::size_t a, std::size_t b) const {
        for (std::size_t k = 0; k < d; ++k)
            if (hi[a * d + k] <= lo[b * d + k] || hi[b * d + k] <= lo[a * d + k]) return true;
        return false;
    }
};

template <class T>
T convert(const mpz_class& v);

template <>
mpz_class convert<mpz_class>(const mpz_class& v) {
    return v;
}

template <>
__int128 convert<__int128>(const mpz_class& v) {
    mpz_class mag = ::abs(v);
    unsigned long long limbs[2] = {0, 0};
    std::size_t count = 0;
    mpz_export(limbs, &count, -1, sizeof(unsigned long long), 0, 0, mag.get_mpz_t());
    auto r = static_cast<__int128>((static_cast<unsigned __int128>(limbs[1]) << 64) | limbs[0]);
    return sgn(v) < 0 ? -r : r;
}

long double approx(const __int128& v) { return static_cast<long double>(v); }
long double approx(const mpz_class& v) { return v.get_d(); }

struct Scaled {
    std::uint32_t precision = 0;
    std::size_t max_bits = 0;
};

Scaled common_grid(std::span<const Brick> bricks) {
    Scaled s;
    for (const auto& b : bricks)
        for (std::size_t k = 0; k < b.dim(); ++k)
            s.precision = std::max({s.precision, b.lo(k).exponent(), b.hi(k).exponent()});
    for (const auto& b : bricks)
        for (std::size_t k = 0; k < b.dim(); ++k)
            for (const Dyadic* x : {&b.lo(k), &b.hi(k)})
                s.max_bits = std::max<std::size_t>(
                    s.max_bits, mpz_sizeinbase(x->mantissa().get_mpz_t(), 2) + (s.precision - x->exponent()));
    return s;
}

template <class T>
IntBoxes<T> to_int_boxes(std::span<const Brick> bricks, std::uint32_t precision) {
    IntBoxes<T> out;
    out.d = bricks.empty() ? 0 : bricks.front().dim();
    out.lo.reserve(bricks.size() * out.d);
    out.hi.reserve(bricks.size() * out.d);
    for (const auto& b : bricks)
        for (std::size_t k = 0; k < out.d; ++k) {
            out.lo.push_back(convert<T>(b.lo(k).scaled(precision)));
            out.hi.push_back(convert<T>(b.hi(k).scaled(precision)));
        }
    return out;
}

template <class T>
std::optional<std::pair<std::size_t, std::size_t>> sweep(const IntBoxes<T>& boxes) {
    const std::size_t n = boxes.size(), d = boxes.d;
    // sweep along the axis with the smallest total extent to keep the active set short
    std::size_t axis = 0;
    {
        long double best = -1;
        for (std::size_t k = 0; k < d; ++k) {
            long double total = 0;
            for (std::size_t i = 0; i < n; ++i) total += approx(boxes.hi[i * d + k] - boxes.lo[i * d + k]);
            if (best < 0 || total < best) {
                best = total;
                axis = k;
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return boxes.lo[a * d + axis] < boxes.lo[b * d + axis]; });
    std::vector<std::size_t> active;
    for (std::size_t idx : order) {
        const T& start = boxes.lo[idx * d + axis];
        std::size_t keep = 0;
        for (std::size_t a : active) {
            if (boxes.hi[a * d + axis] <= start) continue;
            active[keep++] = a;
            if (!boxes.disjoint(a, idx)) return std::pair{std::min(a, idx), std::max(a, idx)};
        }
        active.resize(keep);
        active.push_back(idx);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> sweep_overlap(std::span<const Brick> bricks) {
    if (bricks.empty()) return std::nullopt;
    Scaled grid = common_grid(bricks);
    if (grid.max_bits < 120) return sweep(to_int_boxes<__int128>(bricks, grid.precision));
    return sweep(to_int_boxes<mpz_class>(bricks, grid.precision));
}

std::optional<std::pair<std::size_t, std::size_t>> brute_force_overlap(std::span<const Brick> bricks) {
    for (std::size_t i = 0; i < bricks.size(); ++i)
        for (std::size_t j = i + 1; j < bricks.size(); ++j) {
            bool separated = false;
            for (std::size_t k = 0; k < bricks[i].dim() && !separated; ++k)
                separated = bricks[i].hi(k) <= bricks[j].lo(k) || bricks[j].hi(k) <= bricks[i].lo(k);
            if (!separated) return std::pair{i, j};
        }
    return std::nullopt;
}

namespace {

bool inside(const Brick& outer, const Brick& inner) {
    for (std::size_t k = 0; k < outer.dim(); ++k)
        if (inner.lo(k) < outer.lo(k) || outer.hi(k) < inner.hi(k)) return false;
    return true;
}

Dyadic dpow(const Dyadic& x, std::size_t e) {
    Dyadic r(1);
    for (std::size_t i = 0; i < e; ++i) r *= x;
    return r;
}

// sum_{n >= from} n^-s: direct terms up to a cutoff, then the plain integral
// bracket int_N^inf <= tail <= int_{N-1}^inf.
std::pair<long double, long double> reference_tail(std::uint64_t from, long double s) {
    const std::uint64_t cutoff = from + (std::uint64_t{1} << 21);
    long double sum = 0;
    for (std::uint64_t n = cutoff; n-- > from;) sum += std::pow(static_cast<long double>(n), -s);
    auto integral = [s](long double a) { return std::pow(a, 1 - s) / (s - 1); };
    long double lo = integral(static_cast<long double>(cutoff));
    long double hi = integral(static_cast<long double>(cutoff - 1));
    long double value = sum + (lo + hi) / 2;
    long double err = (hi - lo) / 2 + static_cast<long double>(cutoff - from + 16) * std::ldexp(1.0L, -63) * value;
    return {value, err};
}

std::string describe(const Certificate& cert, std::size_t idx) {
    if (idx < cert.placements.size()) return "cube n=" + std::to_string(cert.placements[idx].n);
    return "free[" + std::to_string(idx - cert.placements.size()) + "]";
}

CheckResult check(std::string name, bool ok, std::string detail, bool mandatory = true) {
    return CheckResult{std::move(name), ok, mandatory, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> verify_legality(const Certificate& cert, VerificationReport::Metrics* metrics) {
    std::vector<CheckResult> out;
    const std::size_t d = cert.config.d;
    std::string bad_dim;
    if (cert.container.dim() != d) bad_dim = "container";
    for (const auto& c : cert.placements)
        if (bad_dim.empty() && c.lo.size() != d) bad_dim = "cube n=" + std::to_string(c.n);
    for (std::size_t i = 0; i < cert.free.size() && bad_dim.empty(); ++i)
        if (cert.free[i].dim() != d) bad_dim = "free[" + std::to_string(i) + "]";
    for (const auto& c : cert.placements)
        if (bad_dim.empty() && c.width.sign() <= 0) bad_dim = "cube n=" + std::to_string(c.n) + " (nonpositive width)";
    out.push_back(check("dimensions", bad_dim.empty(), bad_dim.empty() ? "all bricks are " + std::to_string(d) + "-dimensional" : "malformed " + bad_dim));
    if (!bad_dim.empty()) return out;

    BrickCollection all;
    all.reserve(cert.placements.size() + cert.free.size());
    for (const auto& c : cert.placements) all.push_back(c.brick());
    all.insert(all.end(), cert.free.begin(), cert.free.end());

    std::string outside;
    for (std::size_t i = 0; i < all.size() && outside.empty(); ++i)
        if (!inside(cert.container, all[i])) outside = describe(cert, i);
    out.push_back(check("containment", outside.empty(),
                        outside.empty() ? std::to_string(all.size()) + " bricks inside the container"
                                        : outside + " leaves the container"));

    auto pair = sweep_overlap(all);
    std::string detail = "no overlapping interiors among " + std::to_string(all.size()) + " bricks";
    if (pair) {
        detail = describe(cert, pair->first) + " overlaps " + describe(cert, pair->second);
        if (metrics) metrics->max_pair_violation = detail;
    }
    out.push_back(check("disjointness", !pair, detail));
    return out;
}

std::vector<CheckResult> verify_sidelengths(const Certificate& cert) {
    std::vector<CheckResult> out;
    const auto& cfg = cert.config;

    std::string ordinal_issue;
    for (std::size_t i = 0; i < cert.placements.size() && ordinal_issue.empty(); ++i)
        if (cert.placements[i].n != cfg.n0 + i)
            ordinal_issue = "placement " + std::to_string(i) + " has n=" + std::to_string(cert.placements[i].n) +
                            ", expected " + std::to_string(cfg.n0 + i);
    if (ordinal_issue.empty() && cfg.n0 + cert.placements.size() < cfg.n_max)
        ordinal_issue = "only cubes below n=" + std::to_string(cfg.n0 + cert.placements.size()) + " are placed";
    out.push_back(check("ordinals", ordinal_issue.empty(),
                        ordinal_issue.empty() ? "cubes n0.." + std::to_string(cfg.n0 + cert.placements.size()) +
                                                    " (exclusive) placed in order"
                                              : ordinal_issue));

    const std::uint64_t a = cfg.t.num, b = cfg.t.den;
    const std::uint32_t p = cfg.precision;
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, static_cast<unsigned long>(p) * b);
    mpz_class m, lhs, nb;
    std::string bad;
    for (const auto& c : cert.placements) {
        if (c.width.exponent() > p || c.width.sign() <= 0) {
            bad = "cube n=" + std::to_string(c.n) + " width " + c.width.to_string() + " is off the 2^-p grid";
            break;
        }
        mpz_mul_2exp(m.get_mpz_t(), c.width.mantissa().get_mpz_t(), p - c.width.exponent());
        mpz_ui_pow_ui(nb.get_mpz_t(), c.n, a);
        mpz_pow_ui(lhs.get_mpz_t(), m.get_mpz_t(), b);
        lhs *= nb;
        bool low_ok = lhs <= bound;
        mpz_class m1 = m + 1;
        mpz_pow_ui(lhs.get_mpz_t(), m1.get_mpz_t(), b);
        lhs *= nb;
        bool high_ok = bound < lhs;
        if (!low_ok || !high_ok) {
            bad = "cube n=" + std::to_string(c.n) + " mantissa " + m.get_str() +
                  (low_ok ? " is not the largest admissible" : " exceeds n^-t");
            break;
        }
    }
    out.push_back(check("sidelengths", bad.empty(),
                        bad.empty() ? "m^b n^a <= 2^(pb) < (m+1)^b n^a holds for all " +
                                          std::to_string(cert.placements.size()) + " cubes"
                                    : bad));

    std::string order_issue;
    for (std::size_t i = 1; i < cert.placements.size() && order_issue.empty(); ++i)
        if (cert.placements[i - 1].width < cert.placements[i].width)
            order_issue = "width increases at n=" + std::to_string(cert.placements[i].n);
    out.push_back(check("width_order", order_issue.empty(), order_issue.empty() ? "nonincreasing" : order_issue));
    return out;
}

std::vector<CheckResult> verify_volume_identity(const Certificate& cert, VerificationReport::Metrics* metrics) {
    std::vector<CheckResult> out;
    const auto& cfg = cert.config;
    const std::size_t d = cfg.d;

    Dyadic container_vol = volume(cert.container);
    Dyadic placed, free;
    for (const auto& c : cert.placements) placed += dpow(c.width, d);
    for (const auto& f : cert.free) free += volume(f);
    bool exact = container_vol == placed + free;
    out.push_back(check("volume_identity", exact,
                        exact ? "vol(container) = sum placed + sum free exactly"
                              : "vol(container) - placed - free = " + (container_vol - placed - free).to_string()));

    const long double s = static_cast<long double>(d) * cfg.t.value();
    auto [tail, tail_err] = reference_tail(cfg.n0, s);
    if (cfg.mode == PackingMode::container_cube) {
        bool is_cube = true;
        for (std::size_t k = 1; k < d; ++k) is_cube = is_cube && cert.container.side(k) == cert.container.side(0);
        long double vol = container_vol.to_long_double();
        long double slack = static_cast<long double>(d) *
                            std::pow(cert.container.side(0).to_long_double() + 1, static_cast<long double>(d - 1)) *
                            std::ldexp(1.0L, -static_cast<int>(std::min<std::uint32_t>(cfg.precision, 16000)));
        long double tol = tail_err + static_cast<long double>(cert.tail_error) + std::ldexp(1.0L, -50);
        bool big_enough = vol >= tail - tol;
        bool tight = vol <= tail + tol + 2 * slack;
        long double claimed_excess = cert.volume_deficit.to_long_double();
        bool excess_ok = cert.volume_deficit.sign() >= 0 && std::fabs(claimed_excess - (vol - tail)) <= 2 * tol;
        std::ostringstream os;
        os.precision(17);
        os << "container volume " << static_cast<double>(vol) << " vs tail " << static_cast<double>(tail) << " +- "
           << static_cast<double>(tail_err);
        out.push_back(check("container_size", is_cube && big_enough && tight && excess_ok,
                            (is_cube ? "" : "container is not a cube; ") + os.str() +
                                (excess_ok ? "" : "; recorded excess inconsistent")));
    }

    if (metrics) {
        long double deficit = 0, deficit_max = 0;
        const long double grid = std::ldexp(1.0L, -static_cast<int>(std::min<std::uint32_t>(cfg.precision, 16000)));
        for (const auto& c : cert.placements) {
            long double w = c.width.to_long_double();
            long double placed_vol = std::pow(w, static_cast<long double>(d));
            deficit += std::pow(static_cast<long double>(c.n), -s) - placed_vol;
            deficit_max += std::pow(w + grid, static_cast<long double>(d)) - placed_vol;
        }
        metrics->rounding_deficit = deficit;
        metrics->rounding_deficit_max = deficit_max;
        auto [after, after_err] = reference_tail(cfg.n0 + cert.placements.size(), s);
        metrics->tail_after_last = after;
        metrics->tail_after_last_error = after_err;
        metrics->container_excess = cert.volume_deficit;
    }
    return out;
}

namespace {

// outward[i][2k] / outward[i][2k+1]: lower / upper face of cube i on axis k
// faces away from the grid and counts as covered
BatchSnugness snugness_impl(const Brick& region, std::span<const Brick> cubes,
                            const std::vector<std::vector<char>>* outward) {
    BatchSnugness out;
    out.size = cubes.size();
    if (cubes.empty()) return out;
    const std::size_t d = region.dim();

    // cubes indexed by the coordinate of each lower / upper face
    std::vector<std::map<Dyadic, std::vector<std::size_t>>> by_lo(d), by_hi(d);
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t k = 0; k < d; ++k) {
            by_lo[k][cubes[i].lo(k)].push_back(i);
            by_hi[k][cubes[i].hi(k)].push_back(i);
        }

    auto patch = [&](const Brick& a, const Brick& b, std::size_t axis) {
        Dyadic area(1);
        for (std::size_t k = 0; k < d; ++k) {
            if (k == axis) continue;
            Dyadic len = min(a.hi(k), b.hi(k)) - max(a.lo(k), b.lo(k));
            if (len.sign() <= 0) return Dyadic();
            area *= len;
        }
        return area;
    };

    Dyadic widest;
    long double worst = 0;
    Dyadic region_covered;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        const Brick& c = cubes[i];
        Dyadic w = c.side(0);
        widest = max(widest, w);
        Dyadic face = dpow(w, d - 1);
        Dyadic uncovered;
        for (std::size_t k = 0; k < d; ++k) {
            bool open_lo = outward && (*outward)[i][2 * k];
            bool open_hi = outward && (*outward)[i][2 * k + 1];
            if (c.lo(k) == region.lo(k)) {
                region_covered += face;
            } else if (!open_lo) {
                Dyadic covered;
                if (auto it = by_hi[k].find(c.lo(k)); it != by_hi[k].end())
                    for (auto j : it->second) covered += patch(c, cubes[j], k);
                uncovered += face - covered;
            }
            if (c.hi(k) == region.hi(k)) {
                region_covered += face;
            } else if (!open_hi) {
                Dyadic covered;
                if (auto it = by_lo[k].find(c.hi(k)); it != by_lo[k].end())
                    for (auto j : it->second) covered += patch(c, cubes[j], k);
                uncovered += face - covered;
            }
        }
        if (out.max_uncovered_area < uncovered) out.max_uncovered_area = uncovered;
        worst = std::max(worst, uncovered.to_long_double());
    }
    Dyadic boundary;
    for (std::size_t skip = 0; skip < d; ++skip) {
        Dyadic p(1);
        for (std::size_t k = 0; k < d; ++k)
            if (k != skip) p *= region.side(k);
        boundary += p.mul_int(2);
    }
    out.region_uncovered_area = boundary - region_covered;
    out.eps_hat = static_cast<double>(std::pow(worst, 1.0L / static_cast<long double>(d - 1)) / widest.to_long_double());
    return out;
}

}  // namespace

BatchSnugness measure_snugness(const Brick& region, std::span<const Brick> cubes) {
    return snugness_impl(region, cubes, nullptr);
}

BatchSnugness measure_snugness(const Brick& region, std::span<const Brick> cubes, std::span<const std::size_t> dims) {
    const std::size_t d = region.dim();
    if (dims.size() != d) throw std::invalid_argument("grid dimensions do not match the region");
    std::size_t total = 1;
    for (auto m : dims) total *= m;
    if (total != cubes.size()) throw std::invalid_argument("cube count does not match the grid");
    // linear order runs over axes sorted by grid size, ties by axis
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dims[a] < dims[b]; });
    std::vector<std::vector<char>> outward(cubes.size(), std::vector<char>(2 * d, 0));
    for (std::size_t n = 0; n < cubes.size(); ++n) {
        std::size_t r = n;
        for (auto axis : order) {
            std::size_t i = r % dims[axis];
            r /= dims[axis];
            outward[n][2 * axis] = i == 0;
            outward[n][2 * axis + 1] = i + 1 == dims[axis];
        }
    }
    return snugness_impl(region, cubes, &outward);
}

BatchSnugness snugness_measure(const Certificate& cert, std::size_t batch_id) {
    if (batch_id >= cert.stats.size()) throw std::out_of_range("no batch " + std::to_string(batch_id));
    const StepRecord& rec = cert.stats[batch_id];
    BrickCollection cubes;
    for (const auto& c : cert.placements)
        if (c.n >= rec.n0 && c.n < rec.n0 + rec.batch_size) cubes.push_back(c.brick());
    std::size_t total = rec.dims.empty() ? 0 : 1;
    for (auto m : rec.dims) total *= m;
    BatchSnugness s = rec.dims.size() == rec.region.dim() && total == cubes.size()
                          ? measure_snugness(rec.region, cubes, rec.dims)
                          : measure_snugness(rec.region, cubes);
    s.n0 = rec.n0;
    return s;
}

namespace {

std::vector<CheckResult> verify_config(const Certificate& cert) {
    const auto& c = cert.config;
    std::string issue;
    const std::uint64_t a = c.t.num, b = c.t.den;
    if (c.d < 2)
        issue = "d < 2";
    else if (!(b < c.d * a) || !((c.d - 1) * a < b))
        issue = "t outside (1/d, 1/(d-1))";
    else if (!(c.delta > 0 && c.delta < 1) || !((c.d - 1 + c.delta) * c.t.value() < 1))
        issue = "delta outside the admissible range";
    else if (c.n_max < c.n0 || c.n0 < 1)
        issue = "bad n0/n_max";
    else if (c.mode == PackingMode::given_brick && (!c.container || !(*c.container == cert.container)))
        issue = "given_brick container does not match the configured brick";
    return {check("config", issue.empty(), issue.empty() ? "parameters admissible" : issue)};
}

std::vector<CheckResult> verify_batches(const Certificate& cert) {
    std::string issue;
    std::uint64_t next = cert.config.n0;
    std::size_t pos = 0;
    for (std::size_t s = 0; s < cert.stats.size() && issue.empty(); ++s) {
        const StepRecord& rec = cert.stats[s];
        if (rec.step != s || rec.n0 != next) {
            issue = "batch " + std::to_string(s) + " does not start at n=" + std::to_string(next);
            break;
        }
        if (rec.region.dim() != cert.config.d || !inside(cert.container, rec.region)) {
            issue = "batch " + std::to_string(s) + " region leaves the container";
            break;
        }
        {
            std::uint64_t product = 1, smallest = UINT64_MAX;
            for (auto m : rec.dims) {
                product *= m;
                smallest = std::min(smallest, m);
            }
            bool shape_ok = rec.dims.size() == cert.config.d && product == rec.batch_size &&
                            smallest == std::min(cert.config.M, cert.config.effective_batch_cap()) &&
                            pos < cert.placements.size();
            for (std::size_t k = 0; shape_ok && k < rec.dims.size(); ++k)
                shape_ok = rec.region.side(k) == cert.placements[pos].width.mul_int(mpz_class(static_cast<unsigned long>(rec.dims[k])));
            if (!shape_ok) {
                issue = "batch " + std::to_string(s) + " grid shape does not match M, its size or its region";
                break;
            }
        }
        for (std::uint64_t j = 0; j < rec.batch_size; ++j, ++pos) {
            if (pos >= cert.placements.size() || !inside(rec.region, cert.placements[pos].brick())) {
                issue = "batch " + std::to_string(s) + " cube " + std::to_string(rec.n0 + j) + " outside its region";
                break;
            }
        }
        next += rec.batch_size;
    }
    if (issue.empty() && pos != cert.placements.size()) issue = "batches do not account for every placement";
    return {check("batch_records", issue.empty(), issue.empty() ? std::to_string(cert.stats.size()) + " batches consistent" : issue)};
}

std::vector<CheckResult> monitors(const Certificate& cert, VerificationReport::Metrics& metrics) {
    std::vector<CheckResult> out;
    for (const auto& rec : cert.stats) metrics.surf_ratio_series.push_back(rec.surf_ratio);

    if (cert.stats.size() > kSurfRatioWarmupSteps) {
        double ref = cert.stats[kSurfRatioWarmupSteps - 1].surf_ratio;
        double peak = 0;
        std::uint64_t at = 0;
        for (std::size_t s = kSurfRatioWarmupSteps; s < cert.stats.size(); ++s)
            if (cert.stats[s].surf_ratio > peak) {
                peak = cert.stats[s].surf_ratio;
                at = cert.stats[s].n0;
            }
        std::ostringstream os;
        os << "max ratio " << peak / ref << "x of reference " << ref << " (limit " << cert.config.surf_ratio_limit
           << "x) at batch n0=" << at;
        out.push_back(check("surf_ratio_monitor", peak <= cert.config.surf_ratio_limit * ref, os.str(), false));
    } else {
        out.push_back(check("surf_ratio_monitor", true, "fewer steps than the warm-up window", false));
    }

    std::string shortfall;
    const double slack = 1 - std::ldexp(1.0, -30);
    for (const auto& rec : cert.stats)
        if (rec.widest_width.to_double() < rec.lemma_width_bound * slack) {
            shortfall = "step " + std::to_string(rec.step) + ": widest " + std::to_string(rec.widest_width.to_double()) +
                    " < bound " + std::to_string(rec.lemma_width_bound);
            break;
        }
    out.push_back(check("brick_width_bound", shortfall.empty(), shortfall.empty() ? "widest >= (vol/surf_delta)^(1/(1-delta)) every step" : shortfall, false));
    return out;
}

}  // namespace

VerificationReport verify(const Certificate& cert) {
    VerificationReport report;
    auto append = [&](std::vector<CheckResult> more) {
        for (auto& c : more) report.checks.push_back(std::move(c));
    };
    append(verify_config(cert));
    append(verify_legality(cert, &report.metrics));
    bool well_formed = report.checks.size() > 1 && report.checks[1].passed;
    if (well_formed) {
        append(verify_sidelengths(cert));
        append(verify_volume_identity(cert, &report.metrics));
        append(verify_batches(cert));
        bool batches_ok = report.checks.back().passed;
        append(monitors(cert, report.metrics));
        if (batches_ok)
            for (std::size_t s = 0; s < cert.stats.size(); ++s) report.metrics.snugness.push_back(snugness_measure(cert, s));
    }
    report.passed = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckResult& c) { return c.passed || !c.mandatory; });
    return report;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.passed ? "PASS " : (c.mandatory ? "FAIL " : "WARN ")) << c.name << ": " << c.detail << "\n";
    os.precision(10);
    os << "rounding deficit: " << static_cast<double>(metrics.rounding_deficit) << " (certified range [0, "
       << static_cast<double>(metrics.rounding_deficit_max) << "])\n";
    os << "tail beyond last cube: " << static_cast<double>(metrics.tail_after_last) << " +- "
       << static_cast<double>(metrics.tail_after_last_error) << "\n";
    os << "container excess: " << metrics.container_excess.to_double() << "\n";
    if (!metrics.snugness.empty()) {
        double worst = 0;
        for (const auto& s : metrics.snugness) worst = std::max(worst, s.eps_hat);
        os << "batches: " << metrics.snugness.size() << ", max eps_hat " << worst << "\n";
    }
    if (metrics.max_pair_violation) os << "violation: " << *metrics.max_pair_violation << "\n";
    os << (passed ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
    return os.str();
}

std::string VerificationReport::to_key_values() const {
    std::ostringstream os;
    os.precision(17);
    os << "passed=" << (passed ? "true" : "false") << "\n";
    for (const auto& c : checks) os << "check." << c.name << "=" << (c.passed ? "pass" : "fail") << "\n";
    os << "metric.rounding_deficit=" << static_cast<double>(metrics.rounding_deficit) << "\n";
    os << "metric.rounding_deficit_max=" << static_cast<double>(metrics.rounding_deficit_max) << "\n";
    os << "metric.tail_after_last=" << static_cast<double>(metrics.tail_after_last) << "\n";
    os << "metric.tail_after_last_error=" << static_cast<double>(metrics.tail_after_last_error) << "\n";
    os << "metric.container_excess=" << metrics.container_excess.to_string() << "\n";
    for (std::size_t i = 0; i < metrics.snugness.size(); ++i)
        os << "metric.eps_hat." << i << "=" << metrics.snugness[i].eps_hat << "\n";
    for (std::size_t i = 0; i < metrics.surf_ratio_series.size(); ++i)
        os << "metric.surf_ratio." << i << "=" << metrics.surf_ratio_series[i] << "\n";
    if (metrics.max_pair_violation) os << "metric.max_pair_violation=" << *metrics.max_pair_violation << "\n";
    return os.str();
}

}  // namespace cubepack
