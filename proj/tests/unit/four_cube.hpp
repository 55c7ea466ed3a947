#pragma once

#include "cubepack/certificate.hpp"
#include "cubepack/decomposer.hpp"
#include "cubepack/grid_packer.hpp"

// A single 2 x 2 batch of cubes n = 1000..1003 in the square of side 2 w_1000,
// assembled by hand from the position formula.
inline cubepack::Certificate four_cube_certificate() {
    using namespace cubepack;
    PackingConfig config;
    config.M = 2;
    config.n0 = 1000;
    config.n_max = 1004;
    config.mode = PackingMode::given_brick;
    const Dyadic w0 = cube_sidelength(1000, config.t, config.precision);
    const Brick square = Brick::cube({0, 0}, w0.mul_int(2));
    config.container = square;

    GridPlan plan = plan_grid(square, w0);
    std::vector<Dyadic> widths;
    for (std::uint64_t n = 1000; n < 1004; ++n) widths.push_back(cube_sidelength(n, config.t, config.precision));
    auto placements = compute_positions(widths, plan, 1000);

    Certificate cert;
    cert.config = config;
    cert.container = square;
    BrickCollection cubes;
    for (const auto& p : placements) {
        cert.placements.push_back(CubeRecord{p.ordinal, p.brick.lo(), p.width});
        cubes.push_back(p.brick);
    }
    cert.free = complement_partition(square, cubes, config.delta).parts;

    StepRecord rec;
    rec.step = 0;
    rec.n0 = 1000;
    rec.batch_size = 4;
    rec.dims = {2, 2};
    rec.region = square;
    rec.widest_width = w0.mul_int(2);
    rec.required_width = w0.mul_int(2);
    rec.vol_free = volume(std::span<const Brick>(cert.free));
    rec.surf_delta_free = surf_delta(std::span<const Brick>(cert.free), config.delta);
    rec.free_count = cert.free.size();
    cert.stats.push_back(rec);
    return cert;
}
