#include "cubepack/certificate_io.hpp"
#include "cubepack/driver.hpp"
#include "cubepack/export.hpp"
#include "four_cube.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace cubepack;
using testing_support::dy;

namespace {

std::string schema_location(std::string_view text) {
    try {
        io::decode(text);
    } catch (const io::SchemaError& e) {
        return e.location;
    }
    return "<accepted>";
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("dyadic encoding") {
    CHECK(io::encode_dyadic(dy(181, 8)) == R"({"m":"181","p":8})");
    CHECK(io::encode_dyadic(Dyadic(-3)) == R"({"m":"-3","p":0})");
    CHECK(io::decode_dyadic(R"({"m":"181","p":8})") == dy(181, 8));
    mpz_class big("123456789012345678901234567890123456789");
    CHECK(io::decode_dyadic(io::encode_dyadic(Dyadic(big, 200))) == Dyadic(big, 200));
    CHECK_THROWS_AS(io::decode_dyadic(R"({"m":"182","p":8})"), io::SchemaError);  // even mantissa
    CHECK_THROWS_AS(io::decode_dyadic(R"({"m":"0181","p":8})"), io::SchemaError);
    CHECK_THROWS_AS(io::decode_dyadic(R"({"m":"1e3","p":0})"), io::SchemaError);
    CHECK_THROWS_AS(io::decode_dyadic(R"({"m":181,"p":8})"), io::SchemaError);
    CHECK_THROWS_AS(io::decode_dyadic(R"({"m":"181","p":-8})"), io::SchemaError);
}

TEST_CASE("round trip is bit exact") {
    PackingConfig c;
    c.n_max = 1400;
    Certificate cert = run(c);
    std::string text = io::encode(cert);
    Certificate back = io::decode(text);
    CHECK(back == cert);
    CHECK(io::encode(back) == text);

    Certificate four = four_cube_certificate();
    CHECK(io::decode(io::encode(four)) == four);
}

TEST_CASE("one record per line") {
    std::string text = io::encode(four_cube_certificate());
    auto start = text.find("\"placements\": [\n");
    REQUIRE(start != std::string::npos);
    auto first = text.find('\n', start) + 1;
    auto end = text.find('\n', first);
    std::string line = text.substr(first, end - first);
    CHECK(line.find(R"("n":1000,)") != std::string::npos);
    CHECK(line.back() == ',');
    CHECK(text.compare(end + 1, 5, R"({"lo")") == 0);
}

TEST_CASE("four cube fixture matches the hand assembly") {
    Certificate fixture = io::load(std::filesystem::path(CUBEPACK_FIXTURES) / "four_cube.json");
    CHECK(fixture == four_cube_certificate());
}

TEST_CASE("save and load") {
    auto path = std::filesystem::temp_directory_path() / "cubepack_io_test.json";
    Certificate cert = four_cube_certificate();
    io::save(cert, path);
    CHECK(io::load(path) == cert);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(io::load(path), std::runtime_error);
}

TEST_CASE("schema errors carry a location") {
    std::string text = io::encode(four_cube_certificate());
    CHECK(schema_location(text.substr(0, text.size() / 2)).rfind("byte ", 0) == 0);
    CHECK(schema_location(replace_once(text, R"("n":1001)", R"("n":"1001")")) == "placements[1].n");
    CHECK(schema_location(replace_once(text, R"("n":1002)", R"("n":1000)")) == "placements[2].n");
    CHECK(schema_location(replace_once(text, R"("version": 1)", R"("version": 9)")) == "version");
    CHECK(schema_location(replace_once(text, R"("t":"3/5")", R"("t":"6/10")")) == "config.t");
    CHECK(schema_location(replace_once(text, R"("mode":"given_brick")", R"("mode":"sphere")")) == "config.mode");
    std::string no_free = replace_once(text, "\"free\":", "\"frees\":");
    CHECK(schema_location(no_free) == "free");
}

TEST_CASE("config round trip") {
    PackingConfig c;
    c.d = 3;
    c.t = RationalExponent::make(2, 5);
    c.delta = 0.1;
    c.M = 3;
    c.batch_cap = 30;
    CHECK(io::decode_config(io::encode_config(c)) == c);
    CHECK_THROWS_AS(io::decode_config("{\"d\": 2}"), io::SchemaError);
}

TEST_CASE("stats csv") {
    PackingConfig c;
    c.n_max = 1300;
    Certificate cert = run(c);
    std::string csv = io::stats_csv(cert);
    CHECK(csv.rfind("step,n0,batch_size,vol_free,surf_delta_free,widest_width,eps_hat,surf_ratio\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == cert.stats.size() + 1);
}

TEST_CASE("exports") {
    Certificate four = four_cube_certificate();
    std::string svg = export_certificate(four, "svg2d");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 4);
    CHECK(svg.find("class=\"cube\"") != std::string::npos);
    CHECK(svg.find("class=\"free\"") != std::string::npos);
    CHECK(export_certificate(four, "svg2d") == svg);
    CHECK_THROWS_WITH_AS(export_certificate(four, "svg-slice"), doctest::Contains("svg2d"), std::invalid_argument);
    CHECK_THROWS_AS(export_certificate(four, "png"), std::invalid_argument);
    CHECK(export_certificate(four, "csv") == io::stats_csv(four));

    PackingConfig c3;
    c3.d = 3;
    c3.t = RationalExponent::make(2, 5);
    c3.delta = 0.1;
    c3.M = 3;
    c3.n_max = 1000;
    Certificate empty3 = run(c3);
    CHECK_THROWS_WITH_AS(export_certificate(empty3, "svg2d"), doctest::Contains("svg-slice"), std::invalid_argument);
    ExportOptions bottom;
    bottom.slice_axis = 2;
    std::string slice = export_certificate(empty3, "svg-slice", bottom);
    CHECK(slice.find("class=\"free\"") != std::string::npos);
    bottom.slice_at = Dyadic(5);
    CHECK_THROWS_AS(export_certificate(empty3, "svg-slice", bottom), std::invalid_argument);
}

}  // TEST_SUITE
