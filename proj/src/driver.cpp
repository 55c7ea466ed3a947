#include "cubepack/driver.hpp"

#include "cubepack/decomposer.hpp"
#include "cubepack/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cubepack {

std::string to_string(PackingMode mode) {
    return mode == PackingMode::container_cube ? "container_cube" : "given_brick";
}

PackingMode parse_packing_mode(const std::string& text) {
    if (text == "container_cube") return PackingMode::container_cube;
    if (text == "given_brick") return PackingMode::given_brick;
    throw std::invalid_argument("unknown mode '" + text + "' (expected container_cube or given_brick)");
}

double default_delta(std::size_t d, const RationalExponent& t) {
    return static_cast<double>(1.0L / static_cast<long double>(d - 1) - t.value());
}

PackingStuck::PackingStuck(std::string message, std::uint64_t next_n, Dyadic widest, Dyadic required,
                           double surf_ratio, std::string state_dump)
    : std::runtime_error(std::move(message)),
      next_n(next_n),
      widest_width(std::move(widest)),
      required_width(std::move(required)),
      surf_ratio(surf_ratio),
      state_dump(std::move(state_dump)) {}

void validate(const PackingConfig& c) {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (c.d < 2) fail("dimension must satisfy d >= 2");
    // 1/d < a/b < 1/(d-1)  <=>  b < d a  and  (d-1) a < b
    const std::uint64_t a = c.t.num, b = c.t.den;
    if (!(b < c.d * a))
        fail("t = " + std::to_string(a) + "/" + std::to_string(b) + " violates t > 1/d (d = " +
             std::to_string(c.d) + ")");
    if (!((c.d - 1) * a < b))
        fail("t = " + std::to_string(a) + "/" + std::to_string(b) + " violates t < 1/(d-1) (d = " +
             std::to_string(c.d) + ")");
    if (!(c.delta > 0 && c.delta < 1)) fail("delta must satisfy 0 < delta < 1");
    long double lhs = static_cast<long double>(c.d - 1) * c.t.value() + c.delta * c.t.value();
    if (!(lhs < 1)) fail("delta must satisfy (d-1) t + delta t < 1");
    if (c.M < 1) fail("scale M must be positive");
    if (c.n0 < 1) fail("n0 must be positive");
    if (c.n_max < c.n0) fail("n_max must satisfy n_max >= n0");
    if (c.precision < 1 || c.precision > 4096) fail("precision must be in [1, 4096] bits");
    if (c.batch_cap && *c.batch_cap < c.M) fail("batch cap must satisfy batch_cap >= M");
    if (!(c.surf_ratio_limit > 0)) fail("surf_ratio_limit must be positive");
    if (c.mode == PackingMode::given_brick) {
        if (!c.container) fail("given_brick mode requires a container brick");
        if (c.container->dim() != c.d) fail("container dimension does not match d");
    } else if (c.container) {
        fail("a container brick is only accepted in given_brick mode");
    }
}

TailVolume tail_volume(std::uint64_t n0, std::size_t d, const RationalExponent& t, unsigned guard_bits) {
    const long double s = static_cast<long double>(d) * t.value();
    if (!(s > 1)) throw std::domain_error("tail diverges: d t <= 1");
    if (n0 < 1) throw std::domain_error("n0 must be positive");
    auto f = [s](long double x) { return std::pow(x, -s); };
    auto integral_from = [s](long double a) { return std::pow(a, 1 - s) / (s - 1); };
    auto half_width = [&](long double n) { return (integral_from(n - 0.5L) - integral_from(n) - f(n) / 2) / 2; };

    const long double target = std::ldexp(1.0L, -static_cast<int>(guard_bits));
    std::uint64_t cutoff = std::max<std::uint64_t>(n0, 2);
    while (half_width(static_cast<long double>(cutoff)) > target && cutoff < (std::uint64_t{1} << 32)) cutoff *= 2;

    long double partial = 0;
    for (std::uint64_t n = cutoff; n-- > n0;) partial += f(static_cast<long double>(n));  // smallest first
    const auto N = static_cast<long double>(cutoff);
    long double lower = integral_from(N) + f(N) / 2;
    long double upper = integral_from(N - 0.5L);
    TailVolume tv;
    tv.value = partial + (lower + upper) / 2;
    const long double unit = std::ldexp(1.0L, -63);
    tv.error = (upper - lower) / 2 + static_cast<long double>(cutoff - n0 + 16) * unit * tv.value;
    return tv;
}

namespace {

Dyadic dyadic_from(long double x) {
    int e = 0;
    long double frac = std::frexp(x, &e);  // x = frac 2^e, frac in [0.5, 1)
    auto m = static_cast<unsigned long long>(std::ldexp(frac, 64));
    mpz_class mant;
    mpz_import(mant.get_mpz_t(), 1, -1, sizeof(m), 0, 0, &m);
    return Dyadic(mant, 0).mul_pow2(e - 64);
}

Dyadic power(const Dyadic& x, std::size_t d) {
    Dyadic r(1);
    for (std::size_t i = 0; i < d; ++i) r *= x;
    return r;
}

}  // namespace

Container initial_container(const PackingConfig& config) {
    Container out;
    out.tail = tail_volume(config.n0, config.d, config.t);
    if (config.mode == PackingMode::given_brick) {
        out.brick = *config.container;
        return out;
    }
    // Pad by a few ulps so rounding in the sum cannot undercut the bound.
    long double bound_ld = (out.tail.value + out.tail.error) * (1 + std::ldexp(1.0L, -58));
    Dyadic bound = dyadic_from(bound_ld);
    const std::uint32_t p = config.precision;
    auto enough = [&](const mpz_class& m) { return power(Dyadic(m, p), config.d) >= bound; };
    long double side_estimate = std::pow(bound_ld, 1.0L / static_cast<long double>(config.d));
    mpz_class hi(static_cast<double>(std::ldexp(side_estimate, std::min<int>(static_cast<int>(p), 50))) + 2);
    if (p > 50) mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), p - 50);
    while (!enough(hi)) hi *= 2;
    mpz_class lo = 0;  // !enough(lo)
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        if (enough(mid))
            hi = mid;
        else
            lo = mid;
    }
    Dyadic side(hi, p);
    out.brick = Brick::cube(std::vector<Dyadic>(config.d), side);
    out.excess = power(side, config.d) - bound;
    return out;
}

bool FreeInventory::Order::operator()(const Entry& a, const Entry& b) const {
    if (auto c = a.width <=> b.width; c != 0) return c > 0;
    for (std::size_t k = 0; k < a.brick.dim(); ++k)
        if (auto c = a.brick.lo(k) <=> b.brick.lo(k); c != 0) return c < 0;
    for (std::size_t k = 0; k < a.brick.dim(); ++k)
        if (auto c = a.brick.hi(k) <=> b.brick.hi(k); c != 0) return c < 0;
    return false;
}

void FreeInventory::insert(Brick b) {
    volume_ += cubepack::volume(b);
    Dyadic w = width(b);
    if (!entries_.insert(Entry{std::move(w), std::move(b)}).second)
        throw std::logic_error("duplicate free brick");
}

void FreeInventory::erase(const Brick& b) {
    auto it = entries_.find(Entry{width(b), b});
    if (it == entries_.end()) throw std::logic_error("free brick not in inventory");
    volume_ -= cubepack::volume(b);
    entries_.erase(it);
}

const Brick& FreeInventory::widest() const {
    if (entries_.empty()) throw std::logic_error("empty free inventory");
    return entries_.begin()->brick;
}

BrickCollection FreeInventory::sorted() const {
    BrickCollection out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.brick);
    std::sort(out.begin(), out.end(), [](const Brick& a, const Brick& b) {
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (auto c = a.lo(k) <=> b.lo(k); c != 0) return c < 0;
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (auto c = a.hi(k) <=> b.hi(k); c != 0) return c < 0;
        return false;
    });
    return out;
}

double FreeInventory::surf_delta(double delta) const {
    long double total = 0;
    for (const auto& e : entries_) total += cubepack::surf_delta(e.brick, delta);
    return static_cast<double>(total);
}

long double partial_power_sum(std::uint64_t n, long double e) {
    long double total = 0;
    for (std::uint64_t m = n; m-- > 1;) total += std::pow(static_cast<long double>(m), -e);
    return total;
}

namespace {

long double surf_ratio_exponent(const PackingConfig& c) {
    return (static_cast<long double>(c.d - 1) + c.delta) * c.t.value();
}

double surf_ratio(const PackingState& state, const PackingConfig& config) {
    long double denom = partial_power_sum(state.next_n, surf_ratio_exponent(config));
    if (denom == 0) return 0;
    return static_cast<double>(state.free.surf_delta(config.delta) / denom);
}

std::string dump_state(const PackingState& state, const PackingConfig& config) {
    std::ostringstream os;
    os << "next_n=" << state.next_n << " placed=" << state.placements.size() << " free_count=" << state.free.size()
       << " vol_free=" << state.free.volume().to_double()
       << " surf_delta_free=" << state.free.surf_delta(config.delta) << " steps=" << state.stats.size();
    if (!state.free.empty()) os << " widest=" << width(state.free.widest()).to_double();
    return os.str();
}

}  // namespace

PackingState initial_state(const Brick& container, std::uint64_t n0) {
    PackingState state;
    state.container = container;
    state.free.insert(container);
    state.next_n = n0;
    return state;
}

Slice select_and_slice(const PackingState& state, const PackingConfig& config) {
    Dyadic w = cube_sidelength(state.next_n, config.t, config.precision);
    Dyadic required = w.mul_int(mpz_class(static_cast<unsigned long>(config.M)));
    if (state.free.empty())
        throw PackingStuck("no free bricks left", state.next_n, {}, required, surf_ratio(state, config),
                           dump_state(state, config));
    const Brick& source = state.free.widest();
    Dyadic widest = width(source);
    if (widest < required)
        throw PackingStuck("widest free brick has width " + widest.to_string() + " < required " + required.to_string() +
                               " at n = " + std::to_string(state.next_n),
                           state.next_n, widest, required, surf_ratio(state, config), dump_state(state, config));
    Slice slice{source, source, std::nullopt, w};
    if (required + w <= widest) {
        std::size_t axis = shortest_axis(source);
        auto [target, remainder] = source.split(axis, source.lo(axis) + required);
        slice.target = std::move(target);
        slice.remainder = std::move(remainder);
    }
    return slice;
}

void pack_step(PackingState& state, const PackingConfig& config) {
    StepRecord rec;
    rec.step = state.stats.size();
    rec.n0 = state.next_n;
    {
        double sd = state.free.surf_delta(config.delta);
        long double vol = state.free.volume().to_long_double();
        rec.lemma_width_bound =
            sd > 0 ? static_cast<double>(std::pow(vol / sd, 1.0L / (1.0L - config.delta))) : 0.0;
    }

    Slice slice = select_and_slice(state, config);
    rec.widest_width = width(slice.source);
    rec.required_width = slice.cube_width.mul_int(mpz_class(static_cast<unsigned long>(config.M)));

    GridPlan plan = plan_grid(slice.target, slice.cube_width, config.effective_batch_cap());
    const std::size_t batch = plan.cube_count();
    std::vector<Dyadic> widths;
    widths.reserve(batch);
    for (std::size_t j = 0; j < batch; ++j) widths.push_back(cube_sidelength(state.next_n + j, config.t, config.precision));
    std::vector<Placement> placements = compute_positions(widths, plan, state.next_n);
    if (auto claims = certify_claims(placements, plan); !claims.ok())
        throw std::logic_error("grid placement failed its touching/separation claims");

    Brick region = plan.packed_region();
    BrickCollection cubes;
    cubes.reserve(batch);
    for (const auto& p : placements) cubes.push_back(p.brick);
    GapPartition gap = complement_partition(region, cubes, config.delta);

    state.free.erase(slice.source);
    if (slice.remainder) state.free.insert(*slice.remainder);
    for (auto& m : plan.margins()) state.free.insert(std::move(m));
    for (auto& part : gap.parts) state.free.insert(std::move(part));
    for (auto& p : placements) {
        state.placed_volume += volume(p.brick);
        state.placements.push_back(CubeRecord{p.ordinal, p.brick.lo(), p.width});
    }
    state.next_n += batch;

    rec.batch_size = batch;
    rec.dims.assign(plan.dim(), 0);
    for (std::size_t k = 0; k < plan.dim(); ++k) rec.dims[plan.axis_map[k]] = plan.dims[k];
    rec.vol_free = state.free.volume();
    rec.surf_delta_free = state.free.surf_delta(config.delta);
    rec.surf_ratio = surf_ratio(state, config);
    rec.eps_hat = measure_snugness(region, cubes, rec.dims).eps_hat;
    rec.free_count = state.free.size();
    rec.region = std::move(region);
    state.stats.push_back(std::move(rec));
}

Certificate run(const PackingConfig& config, const StepObserver& observer) {
    validate(config);
    Container container = initial_container(config);
    if (config.mode == PackingMode::given_brick) {
        Dyadic w0 = cube_sidelength(config.n0, config.t, config.precision);
        if (config.n_max > config.n0 && width(container.brick) < w0.mul_int(mpz_class(static_cast<unsigned long>(config.M))))
            throw ConfigError("given brick is narrower than M * n0^-t");
        Dyadic needed;
        for (std::uint64_t n = config.n0; n < config.n_max; ++n) needed += power(cube_sidelength(n, config.t, config.precision), config.d);
        if (volume(container.brick) < needed)
            throw ConfigError("given brick volume is smaller than the volume of cubes n0 <= n < n_max");
    }

    PackingState state = initial_state(container.brick, config.n0);
    while (state.next_n < config.n_max) {
        pack_step(state, config);
        if (observer) observer(state);
    }

    Certificate cert;
    cert.config = config;
    cert.container = container.brick;
    cert.placements = std::move(state.placements);
    cert.free = state.free.sorted();
    cert.stats = std::move(state.stats);
    cert.volume_deficit = container.excess;
    cert.tail_value = static_cast<double>(container.tail.value);
    cert.tail_error = static_cast<double>(container.tail.error);
    return cert;
}

}  // namespace cubepack
