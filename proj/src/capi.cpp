#include "cubepack/cubepack.h"

#include "cubepack/certificate_io.hpp"
#include "cubepack/driver.hpp"
#include "cubepack/export.hpp"
#include "cubepack/verifier.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

struct cp_config {
    cubepack::PackingConfig config;
    bool delta_set = false;

    cubepack::PackingConfig resolved() const {
        cubepack::PackingConfig c = config;
        if (!delta_set) c.delta = cubepack::default_delta(c.d, c.t);
        return c;
    }
};

struct cp_certificate {
    cubepack::Certificate cert;
};

struct cp_report {
    cubepack::VerificationReport report;
    std::string text;
    std::string key_values;
};

namespace {

thread_local std::string last_error;

cp_status fail(cp_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Runs fn, mapping exceptions onto status codes.
template <class Fn>
cp_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return CP_OK;
    } catch (const cubepack::ConfigError& e) {
        return fail(CP_ERR_CONFIG, e.what());
    } catch (const cubepack::PackingStuck& e) {
        return fail(CP_ERR_PACKING_STUCK, std::string(e.what()) + " [" + e.state_dump + "]");
    } catch (const cubepack::io::SchemaError& e) {
        return fail(CP_ERR_SCHEMA, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(CP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(CP_ERR_IO, e.what());
    } catch (const std::runtime_error& e) {
        return fail(CP_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(CP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CP_ERR_INTERNAL, "unknown error");
    }
}

#define CP_REQUIRE(cond, what) \
    if (!(cond)) return fail(CP_ERR_INVALID_ARGUMENT, what)

void write_file(const char* path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot open ") + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error(std::string("write to ") + path + " failed");
}

}  // namespace

extern "C" {

const char* cp_last_error(void) { return last_error.c_str(); }

const char* cp_status_name(cp_status status) {
    switch (status) {
        case CP_OK: return "ok";
        case CP_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CP_ERR_CONFIG: return "invalid configuration";
        case CP_ERR_PACKING_STUCK: return "packing stuck";
        case CP_ERR_IO: return "i/o error";
        case CP_ERR_SCHEMA: return "schema error";
        case CP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

cp_status cp_config_create(cp_config** out) {
    CP_REQUIRE(out, "null output pointer");
    return guarded([&] {
        auto* c = new cp_config;
        if (const char* env = std::getenv("CUBEPACK_PRECISION"); env && *env) {
            char* end = nullptr;
            unsigned long bits = std::strtoul(env, &end, 10);
            if (*end == '\0' && bits > 0) c->config.precision = static_cast<std::uint32_t>(bits);
        }
        *out = c;
    });
}

void cp_config_destroy(cp_config* config) { delete config; }

cp_status cp_config_set_dimension(cp_config* config, uint32_t d) {
    CP_REQUIRE(config, "null config");
    CP_REQUIRE(d >= 2, "dimension must satisfy d >= 2");
    config->config.d = d;
    return CP_OK;
}

cp_status cp_config_set_exponent(cp_config* config, uint64_t num, uint64_t den) {
    CP_REQUIRE(config, "null config");
    return guarded([&] { config->config.t = cubepack::RationalExponent::make(num, den); });
}

cp_status cp_config_set_delta(cp_config* config, double delta) {
    CP_REQUIRE(config, "null config");
    config->config.delta = delta;
    config->delta_set = true;
    return CP_OK;
}

cp_status cp_config_set_scale(cp_config* config, uint64_t M) {
    CP_REQUIRE(config, "null config");
    CP_REQUIRE(M >= 1, "scale M must be positive");
    config->config.M = M;
    return CP_OK;
}

cp_status cp_config_set_range(cp_config* config, uint64_t n0, uint64_t n_max) {
    CP_REQUIRE(config, "null config");
    config->config.n0 = n0;
    config->config.n_max = n_max;
    return CP_OK;
}

cp_status cp_config_set_precision(cp_config* config, uint32_t bits) {
    CP_REQUIRE(config, "null config");
    config->config.precision = bits;
    return CP_OK;
}

cp_status cp_config_set_batch_cap(cp_config* config, uint64_t cap) {
    CP_REQUIRE(config, "null config");
    if (cap == 0)
        config->config.batch_cap.reset();
    else
        config->config.batch_cap = cap;
    return CP_OK;
}

cp_status cp_config_set_surf_ratio_limit(cp_config* config, double limit) {
    CP_REQUIRE(config, "null config");
    config->config.surf_ratio_limit = limit;
    return CP_OK;
}

cp_status cp_config_set_mode(cp_config* config, cp_mode mode) {
    CP_REQUIRE(config, "null config");
    CP_REQUIRE(mode == CP_MODE_CONTAINER_CUBE || mode == CP_MODE_GIVEN_BRICK, "unknown mode");
    config->config.mode =
        mode == CP_MODE_CONTAINER_CUBE ? cubepack::PackingMode::container_cube : cubepack::PackingMode::given_brick;
    return CP_OK;
}

cp_status cp_config_set_container(cp_config* config, size_t d, const char* const* lo, const char* const* hi) {
    CP_REQUIRE(config && lo && hi, "null argument");
    return guarded([&] {
        std::vector<cubepack::Dyadic> l, h;
        for (size_t k = 0; k < d; ++k) {
            if (!lo[k] || !hi[k]) throw std::invalid_argument("null coordinate");
            l.push_back(cubepack::Dyadic::parse(lo[k]));
            h.push_back(cubepack::Dyadic::parse(hi[k]));
        }
        config->config.container = cubepack::Brick(std::move(l), std::move(h));
    });
}

cp_status cp_config_load(const char* path, cp_config** out) {
    CP_REQUIRE(path && out, "null argument");
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error(std::string("cannot open ") + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        auto* c = new cp_config;
        try {
            c->config = cubepack::io::decode_config(buf.str());
        } catch (...) {
            delete c;
            throw;
        }
        c->delta_set = true;
        *out = c;
    });
}

cp_status cp_config_validate(const cp_config* config) {
    CP_REQUIRE(config, "null config");
    return guarded([&] { cubepack::validate(config->resolved()); });
}

cp_status cp_run(const cp_config* config, cp_certificate** out) {
    CP_REQUIRE(config && out, "null argument");
    return guarded([&] { *out = new cp_certificate{cubepack::run(config->resolved())}; });
}

cp_status cp_certificate_load(const char* path, cp_certificate** out) {
    CP_REQUIRE(path && out, "null argument");
    return guarded([&] { *out = new cp_certificate{cubepack::io::load(path)}; });
}

cp_status cp_certificate_save(const cp_certificate* cert, const char* path) {
    CP_REQUIRE(cert && path, "null argument");
    return guarded([&] { cubepack::io::save(cert->cert, path); });
}

cp_status cp_certificate_write_stats(const cp_certificate* cert, const char* path) {
    CP_REQUIRE(cert && path, "null argument");
    return guarded([&] { write_file(path, cubepack::io::stats_csv(cert->cert)); });
}

void cp_certificate_destroy(cp_certificate* cert) { delete cert; }

size_t cp_certificate_dimension(const cp_certificate* cert) { return cert ? cert->cert.config.d : 0; }
size_t cp_certificate_placement_count(const cp_certificate* cert) { return cert ? cert->cert.placements.size() : 0; }
size_t cp_certificate_free_count(const cp_certificate* cert) { return cert ? cert->cert.free.size() : 0; }
size_t cp_certificate_step_count(const cp_certificate* cert) { return cert ? cert->cert.stats.size() : 0; }

cp_status cp_verify(const cp_certificate* cert, cp_report** out) {
    CP_REQUIRE(cert && out, "null argument");
    return guarded([&] {
        auto* r = new cp_report{cubepack::verify(cert->cert), {}, {}};
        r->text = r->report.to_text();
        r->key_values = r->report.to_key_values();
        *out = r;
    });
}

void cp_report_destroy(cp_report* report) { delete report; }

int cp_report_passed(const cp_report* report) { return report && report->report.passed ? 1 : 0; }

size_t cp_report_check_count(const cp_report* report) { return report ? report->report.checks.size() : 0; }

cp_status cp_report_check(const cp_report* report, size_t index, const char** name, int* passed, int* mandatory,
                          const char** detail) {
    CP_REQUIRE(report, "null report");
    CP_REQUIRE(index < report->report.checks.size(), "check index out of range");
    const auto& c = report->report.checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (mandatory) *mandatory = c.mandatory ? 1 : 0;
    if (detail) *detail = c.detail.c_str();
    return CP_OK;
}

const char* cp_report_text(const cp_report* report) { return report ? report->text.c_str() : ""; }
const char* cp_report_key_values(const cp_report* report) { return report ? report->key_values.c_str() : ""; }

cp_status cp_export(const cp_certificate* cert, const char* format, uint32_t slice_axis, const char* slice_at,
                    const char* path) {
    CP_REQUIRE(cert && format && path, "null argument");
    return guarded([&] {
        cubepack::ExportOptions options;
        options.slice_axis = slice_axis;
        if (slice_at && *slice_at) options.slice_at = cubepack::Dyadic::parse(slice_at);
        write_file(path, cubepack::export_certificate(cert->cert, format, options));
    });
}

}  // extern "C"
