#include "cubepack/certificate_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cubepack::io {

using nlohmann::json;

namespace {

json dyadic_json(const Dyadic& x) { return json{{"m", x.mantissa().get_str()}, {"p", x.exponent()}}; }

json coords_json(const std::vector<Dyadic>& xs) {
    json arr = json::array();
    for (const auto& x : xs) arr.push_back(dyadic_json(x));
    return arr;
}

json brick_json(const Brick& b) { return json{{"lo", coords_json(b.lo())}, {"hi", coords_json(b.hi())}}; }

json config_json(const PackingConfig& c) {
    json j;
    j["d"] = c.d;
    j["t"] = std::to_string(c.t.num) + "/" + std::to_string(c.t.den);
    j["delta"] = c.delta;
    j["M"] = c.M;
    j["n0"] = c.n0;
    j["n_max"] = c.n_max;
    j["precision"] = c.precision;
    j["mode"] = to_string(c.mode);
    j["batch_cap"] = c.batch_cap ? json(*c.batch_cap) : json(nullptr);
    j["surf_ratio_limit"] = c.surf_ratio_limit;
    j["container"] = c.container ? brick_json(*c.container) : json(nullptr);
    return j;
}

json step_json(const StepRecord& r) {
    json j;
    j["step"] = r.step;
    j["n0"] = r.n0;
    j["batch_size"] = r.batch_size;
    j["dims"] = r.dims;
    j["region"] = brick_json(r.region);
    j["widest_width"] = dyadic_json(r.widest_width);
    j["required_width"] = dyadic_json(r.required_width);
    j["vol_free"] = dyadic_json(r.vol_free);
    j["surf_delta_free"] = r.surf_delta_free;
    j["lemma_width_bound"] = r.lemma_width_bound;
    j["surf_ratio"] = r.surf_ratio;
    j["eps_hat"] = r.eps_hat;
    j["free_count"] = r.free_count;
    return j;
}

// JSON access with a running path for error messages.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const json& node() const { return node_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const { throw SchemaError(path_, message); }

    Reader at(const std::string& key) const {
        if (!node_.is_object()) fail("expected an object");
        auto it = node_.find(key);
        if (it == node_.end()) throw SchemaError(join(key), "missing field");
        return Reader(*it, join(key));
    }
    Reader at(std::size_t i) const { return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]"); }
    bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }

    const json& array() const {
        if (!node_.is_array()) fail("expected an array");
        return node_;
    }
    std::uint64_t u64() const {
        if (!node_.is_number_unsigned()) fail("expected a nonnegative integer");
        return node_.get<std::uint64_t>();
    }
    double real() const {
        if (!node_.is_number()) fail("expected a number");
        return node_.get<double>();
    }
    std::string str() const {
        if (!node_.is_string()) fail("expected a string");
        return node_.get<std::string>();
    }

private:
    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& node_;
    std::string path_;
};

Dyadic read_dyadic(const Reader& r) {
    if (!r.node().is_object() || r.node().size() != 2) r.fail("expected {\"m\": <decimal string>, \"p\": <int>}");
    std::string m = r.at("m").str();
    std::string_view digits = m;
    if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
        r.at("m").fail("mantissa is not a decimal integer");
    if (digits.size() > 1 && digits.front() == '0') r.at("m").fail("mantissa has a leading zero");
    if (m == "-0") r.at("m").fail("negative zero");
    std::uint64_t p = r.at("p").u64();
    if (p > 1u << 20) r.at("p").fail("exponent too large");
    mpz_class mant(m, 10);
    if (p > 0 && mpz_even_p(mant.get_mpz_t())) r.fail("not canonical: mantissa must be odd when p > 0");
    return Dyadic(mant, static_cast<std::uint32_t>(p));
}

std::vector<Dyadic> read_coords(const Reader& r) {
    std::vector<Dyadic> out;
    for (std::size_t i = 0; i < r.array().size(); ++i) out.push_back(read_dyadic(r.at(i)));
    return out;
}

Brick read_brick(const Reader& r) {
    auto lo = read_coords(r.at("lo"));
    auto hi = read_coords(r.at("hi"));
    try {
        return Brick(std::move(lo), std::move(hi));
    } catch (const std::invalid_argument& e) {
        r.fail(e.what());
    }
}

PackingConfig read_config(const Reader& r) {
    PackingConfig c;
    c.d = r.at("d").u64();
    {
        std::string t = r.at("t").str();
        auto slash = t.find('/');
        try {
            if (slash == std::string::npos) throw std::invalid_argument("missing '/'");
            auto a = std::stoull(t.substr(0, slash)), b = std::stoull(t.substr(slash + 1));
            c.t = RationalExponent::make(a, b);
            if (c.t.num != a || c.t.den != b) throw std::invalid_argument("not in lowest terms");
        } catch (const std::exception& e) {
            r.at("t").fail(std::string("expected a/b: ") + e.what());
        }
    }
    c.delta = r.at("delta").real();
    c.M = r.at("M").u64();
    c.n0 = r.at("n0").u64();
    c.n_max = r.at("n_max").u64();
    c.precision = static_cast<std::uint32_t>(r.at("precision").u64());
    try {
        c.mode = parse_packing_mode(r.at("mode").str());
    } catch (const std::invalid_argument& e) {
        r.at("mode").fail(e.what());
    }
    if (!r.at("batch_cap").node().is_null()) c.batch_cap = r.at("batch_cap").u64();
    c.surf_ratio_limit = r.at("surf_ratio_limit").real();
    if (!r.at("container").node().is_null()) c.container = read_brick(r.at("container"));
    return c;
}

StepRecord read_step(const Reader& r) {
    StepRecord s;
    s.step = r.at("step").u64();
    s.n0 = r.at("n0").u64();
    s.batch_size = r.at("batch_size").u64();
    for (std::size_t i = 0; i < r.at("dims").array().size(); ++i) s.dims.push_back(r.at("dims").at(i).u64());
    s.region = read_brick(r.at("region"));
    s.widest_width = read_dyadic(r.at("widest_width"));
    s.required_width = read_dyadic(r.at("required_width"));
    s.vol_free = read_dyadic(r.at("vol_free"));
    s.surf_delta_free = r.at("surf_delta_free").real();
    s.lemma_width_bound = r.at("lemma_width_bound").real();
    s.surf_ratio = r.at("surf_ratio").real();
    s.eps_hat = r.at("eps_hat").real();
    s.free_count = r.at("free_count").u64();
    return s;
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("byte " + std::to_string(e.byte), e.what());
    }
}

template <class Range, class Fn>
void write_lines(std::ostringstream& os, const char* key, const Range& items, Fn&& to_json, bool last) {
    os << "\"" << key << "\": [";
    bool first = true;
    for (const auto& item : items) {
        os << (first ? "\n" : ",\n") << to_json(item).dump();
        first = false;
    }
    os << (first ? "]" : "\n]") << (last ? "\n" : ",\n");
}

}  // namespace

std::string encode_dyadic(const Dyadic& x) { return dyadic_json(x).dump(); }

Dyadic decode_dyadic(std::string_view text) { return read_dyadic(Reader(parse(text), "")); }

std::string encode(const Certificate& cert) {
    std::ostringstream os;
    os << "{\n";
    os << "\"format\": \"cubepack-certificate\",\n";
    os << "\"version\": " << kCertificateVersion << ",\n";
    os << "\"config\": " << config_json(cert.config).dump() << ",\n";
    os << "\"container\": " << brick_json(cert.container).dump() << ",\n";
    os << "\"volume_deficit\": " << dyadic_json(cert.volume_deficit).dump() << ",\n";
    os << "\"tail\": " << json{{"value", cert.tail_value}, {"error", cert.tail_error}}.dump() << ",\n";
    write_lines(os, "placements", cert.placements,
                [](const CubeRecord& c) { return json{{"n", c.n}, {"lo", coords_json(c.lo)}, {"w", dyadic_json(c.width)}}; },
                false);
    write_lines(os, "free", cert.free, brick_json, false);
    write_lines(os, "stats", cert.stats, step_json, true);
    os << "}\n";
    return os.str();
}

Certificate decode(std::string_view text) {
    json doc = parse(text);
    Reader root(doc, "");
    if (root.at("format").str() != "cubepack-certificate") root.at("format").fail("unknown format tag");
    if (root.at("version").u64() != kCertificateVersion) root.at("version").fail("unsupported version");

    Certificate cert;
    cert.config = read_config(root.at("config"));
    cert.container = read_brick(root.at("container"));
    cert.volume_deficit = read_dyadic(root.at("volume_deficit"));
    cert.tail_value = root.at("tail").at("value").real();
    cert.tail_error = root.at("tail").at("error").real();

    Reader placements = root.at("placements");
    for (std::size_t i = 0; i < placements.array().size(); ++i) {
        Reader p = placements.at(i);
        CubeRecord c{p.at("n").u64(), read_coords(p.at("lo")), read_dyadic(p.at("w"))};
        if (c.width.sign() <= 0) p.at("w").fail("width must be positive");
        if (c.lo.size() != cert.config.d) p.at("lo").fail("wrong number of coordinates");
        if (i > 0 && c.n <= cert.placements.back().n) p.at("n").fail("placements must be ordered by n");
        cert.placements.push_back(std::move(c));
    }
    Reader free = root.at("free");
    for (std::size_t i = 0; i < free.array().size(); ++i) cert.free.push_back(read_brick(free.at(i)));
    Reader stats = root.at("stats");
    for (std::size_t i = 0; i < stats.array().size(); ++i) cert.stats.push_back(read_step(stats.at(i)));
    return cert;
}

void save(const Certificate& cert, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << encode(cert);
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Certificate load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode(buf.str());
}

std::string encode_config(const PackingConfig& config) { return config_json(config).dump(); }

PackingConfig decode_config(std::string_view text) {
    json doc = parse(text);
    return read_config(Reader(doc, "config"));
}

std::string stats_csv(const Certificate& cert) {
    std::ostringstream os;
    os << "step,n0,batch_size,vol_free,surf_delta_free,widest_width,eps_hat,surf_ratio\n";
    char buf[64];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    for (const auto& r : cert.stats)
        os << r.step << ',' << r.n0 << ',' << r.batch_size << ',' << num(r.vol_free.to_double()) << ','
           << num(r.surf_delta_free) << ',' << num(r.widest_width.to_double()) << ',' << num(r.eps_hat) << ','
           << num(r.surf_ratio) << '\n';
    return os.str();
}

}  // namespace cubepack::io
