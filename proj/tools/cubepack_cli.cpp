#include <cubepack/cubepack.h>

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kStuck = 3 };

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<cp_config, Deleter<cp_config, cp_config_destroy>>;
using CertPtr = std::unique_ptr<cp_certificate, Deleter<cp_certificate, cp_certificate_destroy>>;
using ReportPtr = std::unique_ptr<cp_report, Deleter<cp_report, cp_report_destroy>>;

struct Failure {
    cp_status status;
    std::string message;
};

void check(cp_status status, const char* what) {
    if (status != CP_OK) throw Failure{status, std::string(what) + ": " + cp_last_error()};
}

int exit_code(cp_status status) {
    switch (status) {
        case CP_ERR_INVALID_ARGUMENT:
        case CP_ERR_CONFIG: return kUsage;
        case CP_ERR_PACKING_STUCK: return kStuck;
        default: return kFailed;
    }
}

struct PackOptions {
    std::string config_path;
    unsigned d = 2;
    std::string t = "3/5";
    double delta = 0;
    std::uint64_t M = 4;
    std::uint64_t n0 = 1000;
    std::uint64_t n_max = 6000;
    unsigned precision = 64;
    std::uint64_t batch_cap = 0;
    double surf_ratio_limit = 2.0;
    std::string mode = "container_cube";
    std::vector<std::string> container_lo, container_hi;
    std::string out = "certificate.json";
    std::string stats;
};

std::pair<std::uint64_t, std::uint64_t> parse_ratio(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("--t", "expected a/b, got '" + s + "'");
    try {
        std::size_t used_a = 0, used_b = 0;
        auto a = std::stoull(s.substr(0, slash), &used_a), b = std::stoull(s.substr(slash + 1), &used_b);
        if (used_a != slash || used_b != s.size() - slash - 1 || b == 0) throw std::invalid_argument(s);
        return {a, b};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--t", "expected a/b with positive integers, got '" + s + "'");
    }
}

std::string default_stats_path(const std::string& out) {
    std::string base = out;
    if (base.size() > 5 && base.compare(base.size() - 5, 5, ".json") == 0) base.resize(base.size() - 5);
    return base + ".stats.csv";
}

int run_pack(const PackOptions& o, const CLI::App& cmd) {
    cp_config* raw = nullptr;
    if (!o.config_path.empty())
        check(cp_config_load(o.config_path.c_str(), &raw), "reading config");
    else
        check(cp_config_create(&raw), "creating config");
    ConfigPtr config(raw);
    auto given = [&](const char* flag) { return cmd.count(flag) > 0 || o.config_path.empty(); };

    if (given("--d")) check(cp_config_set_dimension(config.get(), o.d), "--d");
    if (given("--t")) {
        auto [a, b] = parse_ratio(o.t);
        check(cp_config_set_exponent(config.get(), a, b), "--t");
    }
    if (cmd.count("--delta")) check(cp_config_set_delta(config.get(), o.delta), "--delta");
    if (given("--M")) check(cp_config_set_scale(config.get(), o.M), "--M");
    if (!o.config_path.empty() && cmd.count("--n0") != cmd.count("--n-max"))
        throw CLI::ValidationError("--n0/--n-max", "give both when overriding a config file");
    if (given("--n0")) check(cp_config_set_range(config.get(), o.n0, o.n_max), "--n0/--n-max");
    if (cmd.count("--precision")) check(cp_config_set_precision(config.get(), o.precision), "--precision");
    if (cmd.count("--batch-cap")) check(cp_config_set_batch_cap(config.get(), o.batch_cap), "--batch-cap");
    if (cmd.count("--surf-ratio-limit"))
        check(cp_config_set_surf_ratio_limit(config.get(), o.surf_ratio_limit), "--surf-ratio-limit");
    if (given("--mode"))
        check(cp_config_set_mode(config.get(), o.mode == "given_brick" ? CP_MODE_GIVEN_BRICK : CP_MODE_CONTAINER_CUBE),
              "--mode");
    if (!o.container_lo.empty() || !o.container_hi.empty()) {
        if (o.container_lo.size() != o.container_hi.size())
            throw CLI::ValidationError("--container-lo/--container-hi", "need the same number of coordinates");
        std::vector<const char*> lo, hi;
        for (const auto& s : o.container_lo) lo.push_back(s.c_str());
        for (const auto& s : o.container_hi) hi.push_back(s.c_str());
        check(cp_config_set_container(config.get(), lo.size(), lo.data(), hi.data()), "--container");
    }

    check(cp_config_validate(config.get()), "invalid parameters");
    cp_certificate* cert_raw = nullptr;
    check(cp_run(config.get(), &cert_raw), "packing");
    CertPtr cert(cert_raw);

    check(cp_certificate_save(cert.get(), o.out.c_str()), "writing certificate");
    std::string stats = o.stats.empty() ? default_stats_path(o.out) : o.stats;
    check(cp_certificate_write_stats(cert.get(), stats.c_str()), "writing stats");
    std::printf("placed %zu cubes in %zu steps; %zu free bricks\ncertificate: %s\nstats: %s\n",
                cp_certificate_placement_count(cert.get()), cp_certificate_step_count(cert.get()),
                cp_certificate_free_count(cert.get()), o.out.c_str(), stats.c_str());
    return kOk;
}

int run_verify(const std::string& path, const std::string& format) {
    cp_certificate* cert_raw = nullptr;
    check(cp_certificate_load(path.c_str(), &cert_raw), "reading certificate");
    CertPtr cert(cert_raw);
    cp_report* report_raw = nullptr;
    check(cp_verify(cert.get(), &report_raw), "verifying");
    ReportPtr report(report_raw);
    if (format != "kv") std::fputs(cp_report_text(report.get()), stdout);
    if (format != "text") std::fputs(cp_report_key_values(report.get()), stdout);
    return cp_report_passed(report.get()) ? kOk : kFailed;
}

int run_export(const std::string& path, const std::string& format, unsigned axis, const std::string& at,
               const std::string& out) {
    cp_certificate* cert_raw = nullptr;
    check(cp_certificate_load(path.c_str(), &cert_raw), "reading certificate");
    CertPtr cert(cert_raw);
    check(cp_export(cert.get(), format.c_str(), axis, at.c_str(), out.c_str()), "exporting");
    std::printf("wrote %s\n", out.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact packings of cubes with sidelengths n^-t, with an independent verifier"};
    app.require_subcommand(1);

    PackOptions pack;
    auto* pack_cmd = app.add_subcommand("pack", "run the packing and write a certificate and stats CSV");
    pack_cmd->add_option("--config", pack.config_path, "config JSON; explicit flags override it")->check(CLI::ExistingFile);
    pack_cmd->add_option("--d", pack.d, "dimension");
    pack_cmd->add_option("--t", pack.t, "exponent as a/b");
    pack_cmd->add_option("--delta", pack.delta, "surface exponent (default 1/(d-1) - t)");
    pack_cmd->add_option("--M", pack.M, "batch scale factor");
    pack_cmd->add_option("--n0", pack.n0, "first cube index");
    pack_cmd->add_option("--n-max", pack.n_max, "stop once n reaches this index");
    pack_cmd->add_option("--precision", pack.precision, "binary digits for sidelengths")
        ->envname("CUBEPACK_PRECISION");
    pack_cmd->add_option("--batch-cap", pack.batch_cap, "largest grid extent per axis (default 8 M)");
    pack_cmd->add_option("--surf-ratio-limit", pack.surf_ratio_limit, "allowed growth of the surface ratio");
    pack_cmd->add_option("--mode", pack.mode, "container_cube or given_brick")
        ->check(CLI::IsMember({"container_cube", "given_brick"}));
    pack_cmd->add_option("--container-lo", pack.container_lo, "given brick lower corner (dyadic literals)");
    pack_cmd->add_option("--container-hi", pack.container_hi, "given brick upper corner (dyadic literals)");
    pack_cmd->add_option("--out", pack.out, "certificate path");
    pack_cmd->add_option("--stats", pack.stats, "stats CSV path (default <out>.stats.csv)");

    std::string verify_path, verify_format = "text";
    auto* verify_cmd = app.add_subcommand("verify", "check a certificate; exit status 0 iff it passes");
    verify_cmd->add_option("certificate", verify_path)->required();
    verify_cmd->add_option("--format", verify_format, "text, kv or both")->check(CLI::IsMember({"text", "kv", "both"}));

    std::string export_path, export_format, export_at = "0", export_out;
    unsigned export_axis = 2;
    auto* export_cmd = app.add_subcommand("export", "render a certificate");
    export_cmd->add_option("certificate", export_path)->required();
    export_cmd->add_option("--format", export_format, "svg2d, svg-slice or csv")
        ->required()
        ->check(CLI::IsMember({"svg2d", "svg-slice", "csv"}));
    export_cmd->add_option("--axis", export_axis, "slice axis for svg-slice");
    export_cmd->add_option("--at", export_at, "slice coordinate (dyadic literal)");
    export_cmd->add_option("--out", export_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*pack_cmd) return run_pack(pack, *pack_cmd);
        if (*verify_cmd) return run_verify(verify_path, verify_format);
        if (*export_cmd) return run_export(export_path, export_format, export_axis, export_at, export_out);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return exit_code(f.status);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
