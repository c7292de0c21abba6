#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "oracles.hpp"
#include "surecp/image.hpp"
#include "surecp/image_io.hpp"
#include "surecp/rng.hpp"
#include "surecp/synthetic.hpp"
#include "surecp/table.hpp"

using namespace surecp;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "surecp_test_imaging";
    fs::create_directories(dir);
    return dir;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("Image rejects bad shapes and non-finite data") {
    CHECK_THROWS_AS(Image(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 2, std::vector<double>(3, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 1, {0.0, NAN}), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 1, {INFINITY, 0.0}), std::invalid_argument);
    const Image ok(2, 1, {0.25, -3.0});
    CHECK(ok.size() == 2);
    CHECK(ok(0, 1) == -3.0);
}

TEST_CASE("rng is deterministic and normal deviates have unit variance") {
    Rng a(RngSeed{42});
    Rng b(RngSeed{42});
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());

    Rng rng(RngSeed{7});
    std::vector<double> xs(200000);
    for (double& x : xs) x = rng.normal();
    const double se_mean = 1.0 / std::sqrt(double(xs.size()));
    const double se_var = std::sqrt(2.0 / double(xs.size()));
    CHECK(std::abs(oracle::mean(xs)) < 4 * se_mean);
    CHECK(std::abs(oracle::variance(xs) - 1.0) < 4 * se_var);

    CHECK(derive_seed(RngSeed{1}, 1, 0) != derive_seed(RngSeed{1}, 2, 0));
    CHECK(derive_seed(RngSeed{1}, 1, 0) != derive_seed(RngSeed{1}, 1, 1));
    CHECK(derive_seed(RngSeed{1}, 1, 5) == derive_seed(RngSeed{1}, 1, 5));
}

TEST_CASE("generate_smooth_image") {
    const Image a = generate_smooth_image(64, 64, 8.0, RngSeed{1});
    const Image b = generate_smooth_image(64, 64, 8.0, RngSeed{1});
    CHECK(a == b);

    const auto [lo, hi] = std::minmax_element(a.data().begin(), a.data().end());
    CHECK(*lo == 0.0);
    CHECK(*hi == 1.0);

    const Image c = generate_smooth_image(64, 64, 8.0, RngSeed{2});
    CHECK_FALSE(a == c);

    // Larger correlation length => smoother field: smaller mean squared
    // neighbour difference.
    auto roughness = [](const Image& img) {
        double acc = 0.0;
        for (std::size_t r = 0; r < img.height(); ++r)
            for (std::size_t q = 0; q + 1 < img.width(); ++q)
                acc += std::pow(img(r, q + 1) - img(r, q), 2);
        return acc;
    };
    CHECK(roughness(generate_smooth_image(64, 64, 2.0, RngSeed{3})) >
          roughness(generate_smooth_image(64, 64, 8.0, RngSeed{3})));

    CHECK_THROWS_AS(generate_smooth_image(7, 64, 8.0, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_smooth_image(64, 64, 0.0, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_smooth_image(64, 64, -1.0, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("read 8-bit P5 PGM") {
    const auto path = temp_dir() / "tiny.pgm";
    write_bytes(path, std::string("P5\n# comment\n2 2\n255\n") + std::string("\x00\x80\xff\x40", 4));
    const Image img = read_image(path);
    CHECK(img.width() == 2);
    CHECK(img.height() == 2);
    CHECK(img.data()[0] == 0.0);
    CHECK(img.data()[1] == 128.0 / 255.0);
    CHECK(img.data()[2] == 1.0);
    CHECK(img.data()[3] == 64.0 / 255.0);
}

TEST_CASE("read 16-bit P5 PGM maps maxval to exactly 1") {
    const auto path = temp_dir() / "tiny16.pgm";
    write_bytes(path, std::string("P5 3 1 65535\n") + std::string("\x00\x00\xff\xff\x80\x00", 6));
    const Image img = read_image(path);
    CHECK(img.data()[0] == 0.0);
    CHECK(img.data()[1] == 1.0);
    CHECK(img.data()[2] == 32768.0 / 65535.0);
}

TEST_CASE("PGM errors") {
    const auto dir = temp_dir();
    write_bytes(dir / "ascii.pgm", "P2\n2 2\n255\n0 1 2 3\n");
    CHECK_THROWS_WITH_AS(read_image(dir / "ascii.pgm"), doctest::Contains("P2"), FormatError);

    write_bytes(dir / "trunc.pgm", std::string("P5\n2 2\n255\n") + std::string("\x01\x02", 2));
    CHECK_THROWS_WITH_AS(read_image(dir / "trunc.pgm"), doctest::Contains("truncated"),
                         FormatError);

    write_bytes(dir / "bad.pgm", "P5\nx 2\n255\n");
    CHECK_THROWS_AS(read_image(dir / "bad.pgm"), FormatError);

    write_bytes(dir / "junk.bin", "hello");
    CHECK_THROWS_AS(read_image(dir / "junk.bin"), FormatError);

    CHECK_THROWS(read_image(dir / "does_not_exist.pgm"));
}

TEST_CASE("flat-float round trip is bit exact") {
    const auto path = temp_dir() / "rt.imgf";
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(RngSeed{seed});
        const std::size_t w = 1 + rng.next_u64() % 17;
        const std::size_t h = 1 + rng.next_u64() % 17;
        Image img(w, h);
        for (double& v : img.data()) v = rng.normal() * std::pow(10.0, double(rng.next_u64() % 40) - 20);
        img.data()[0] = -0.0;
        write_image(path, img);
        const Image back = read_image(path);
        REQUIRE(back.width() == w);
        REQUIRE(back.height() == h);
        for (std::size_t i = 0; i < img.size(); ++i) {
            CHECK(std::bit_cast<std::uint64_t>(back.data()[i]) ==
                  std::bit_cast<std::uint64_t>(img.data()[i]));
        }
    }
    const std::string bytes = slurp(path);
    CHECK(bytes.rfind("IMGF64\n", 0) == 0);
}

TEST_CASE("flat-float layout is little-endian f64 after the header") {
    const auto path = temp_dir() / "layout.imgf";
    write_image(path, Image(1, 1, {1.0}));
    const std::string bytes = slurp(path);
    CHECK(bytes == std::string("IMGF64\n1 1\n") + std::string("\x00\x00\x00\x00\x00\x00\xf0\x3f", 8));
}

TEST_CASE("PGM write then read quantizes to maxval") {
    const auto path = temp_dir() / "w.pgm";
    const Image img(3, 1, {0.0, 0.5, 1.2});
    write_image(path, img, ImageFormat::pgm8);
    const Image back = read_image(path);
    CHECK(back.data()[0] == 0.0);
    CHECK(back.data()[1] == 128.0 / 255.0);
    CHECK(back.data()[2] == 1.0);
    write_image(path, img, ImageFormat::pgm16);
    CHECK(std::abs(read_image(path).data()[1] - 0.5) < 1.0 / 65535.0);
}

TEST_CASE("center_crop") {
    Image img(4, 4);
    for (std::size_t i = 0; i < 16; ++i) img.data()[i] = double(i);
    const Image c = center_crop(img, 2, 2);
    CHECK(c(0, 0) == 5.0);
    CHECK(c(1, 1) == 10.0);
    CHECK_THROWS_AS(center_crop(img, 5, 2), std::invalid_argument);
}

TEST_CASE("write_table") {
    const auto dir = temp_dir();
    write_table(dir / "t.csv", {"alpha", "coverage"}, {{0.1, 0.95}});
    const std::string text = slurp(dir / "t.csv");
    CHECK(text.rfind("alpha,coverage\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    const Table t = read_table(dir / "t.csv");
    CHECK(t.rows.at(0).at(0) == 0.1);
    CHECK(t.rows.at(0).at(1) == 0.95);

    write_table(dir / "empty.csv", {"a", "b"}, {});
    CHECK(slurp(dir / "empty.csv") == "a,b\n");

    CHECK_THROWS_AS(write_table(dir / "jag.csv", {"a", "b"}, {{1.0}}), std::invalid_argument);

    write_table(dir / "q.csv", {"x,y", "say \"hi\""}, {{INFINITY, -1e-300}});
    CHECK(slurp(dir / "q.csv") == "\"x,y\",\"say \"\"hi\"\"\"\ninf,-1e-300\n");
    const Table q = read_table(dir / "q.csv");
    CHECK(q.column_names.at(0) == "x,y");
    CHECK(q.rows.at(0).at(0) == INFINITY);
}

TEST_CASE("format_double round-trips") {
    Rng rng(RngSeed{9});
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.normal() * std::pow(10.0, double(rng.next_u64() % 60) - 30);
        CHECK(std::stod(format_double(v)) == v);
    }
}
