#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "surecp/fft.hpp"
#include "surecp/operators.hpp"

using namespace surecp;

namespace {

constexpr double kPi6 = std::numbers::pi / 6.0;

// Frozen from a dense-DFT evaluation of the explicit 64x64 kernel
// (bandwidths 2 and 0.3, angle pi/6).
constexpr double kFixtureMinSymbol = 0.012507354841105572;
constexpr double kFixtureCondition = 79.95295669660608;

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

double rel_diff(const Image& a, const Image& b) {
    return std::sqrt(squared_norm(linear_combination(1.0, a, -1.0, b))) /
           std::max(std::sqrt(squared_norm(b)), 1e-300);
}

}  // namespace

TEST_CASE("identity operator") {
    const auto op = CirculantOperator::identity(16, 8);
    const Image x = oracle::random_image(16, 8, 3);
    CHECK(op.apply(x) == x);
    CHECK(op.apply_adjoint(x) == x);
    CHECK(op.condition_number() == 1.0);
    CHECK(op.is_identity());
    std::complex<double> trace = 0.0;
    for (auto v : op.symbol()) trace += v;
    CHECK(trace.real() == doctest::Approx(128.0));
    CHECK(trace.imag() == 0.0);
}

TEST_CASE("blur: unit DC gain and constant images pass through") {
    const auto op = CirculantOperator::gaussian_blur(64, 64, 2.0, 0.3, kPi6);
    CHECK(std::abs(op.symbol()[0] - std::complex<double>(1.0, 0.0)) < 1e-12);
    const Image c(64, 64, std::vector<double>(64 * 64, 0.37));
    const Image out = op.apply(c);
    for (double v : out.data()) CHECK(std::abs(v - 0.37) < 1e-10);
    CHECK(op.apply(Image(64, 64)) == Image(64, 64));
}

TEST_CASE("blur impulse response equals the explicit periodized kernel") {
    for (auto [w, h] : {std::pair<std::size_t, std::size_t>{64, 64}, {32, 48}, {17, 9}}) {
        const auto op = CirculantOperator::gaussian_blur(w, h, 2.0, 0.3, kPi6, 0.0);
        const Image kernel = oracle::explicit_blur_kernel(w, h, 2.0, 0.3, kPi6);
        // Impulse at the center: the response is the kernel shifted there.
        Image impulse(w, h);
        const std::size_t r0 = h / 2;
        const std::size_t c0 = w / 2;
        impulse(r0, c0) = 1.0;
        const Image out = op.apply(impulse);
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t q = 0; q < w; ++q) {
                const double expected = kernel((r + h - r0) % h, (q + w - c0) % w);
                CHECK(std::abs(out(r, q) - expected) < 1e-10);
            }
        }
    }
}

TEST_CASE("blur fixture symbol extremes match the dense-DFT oracle") {
    const Image kernel = oracle::explicit_blur_kernel(64, 64, 2.0, 0.3, kPi6);
    const auto dft = oracle::dense_dft2(kernel);
    double lo = INFINITY;
    double hi = 0.0;
    for (auto v : dft) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    CHECK(rel_err(lo, kFixtureMinSymbol) < 1e-9);
    CHECK(rel_err(hi / lo, kFixtureCondition) < 1e-9);

    const auto op = CirculantOperator::gaussian_blur(64, 64, 2.0, 0.3, kPi6);
    CHECK(rel_err(op.min_symbol_magnitude(), kFixtureMinSymbol) < 1e-9);
    CHECK(rel_err(op.condition_number(), kFixtureCondition) < 1e-9);
    CHECK(op.max_symbol_magnitude() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("library fft agrees with the dense DFT") {
    const Image x = oracle::random_image(12, 10, 77);
    const auto a = fft2(x);
    const auto b = oracle::dense_dft2(x);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
}

TEST_CASE("linearity and adjoint identity on random inputs") {
    Rng shapes(RngSeed{123});
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const std::size_t w = 8 + shapes.next_u64() % 57;
        const std::size_t h = 8 + shapes.next_u64() % 57;
        const auto op = CirculantOperator::gaussian_blur(w, h, 0.5 + 3 * shapes.uniform(),
                                                         0.2 + shapes.uniform(),
                                                         std::numbers::pi * shapes.uniform());
        const Image x = oracle::random_image(w, h, 1000 + trial);
        const Image z = oracle::random_image(w, h, 2000 + trial);
        const double a = shapes.normal();
        const double b = shapes.normal();

        const Image lhs = op.apply(linear_combination(a, x, b, z));
        const Image rhs = linear_combination(a, op.apply(x), b, op.apply(z));
        CHECK(rel_diff(lhs, rhs) < 1e-10);

        const double ax_z = dot(op.apply(x), z);
        const double x_atz = dot(x, op.apply_adjoint(z));
        CHECK(std::abs(ax_z - x_atz) / std::max(std::abs(ax_z), 1e-12) < 1e-10);
    }
    const auto big = CirculantOperator::gaussian_blur(256, 256, 2.0, 0.3, kPi6);
    const Image x = oracle::random_image(256, 256, 5);
    const Image z = oracle::random_image(256, 256, 6);
    CHECK(std::abs(dot(big.apply(x), z) - dot(x, big.apply_adjoint(z))) <
          1e-10 * std::abs(dot(big.apply(x), z)));
}

TEST_CASE("even kernel is self-adjoint") {
    const auto op = CirculantOperator::gaussian_blur(32, 32, 2.0, 0.7, 0.0);
    const Image x = oracle::random_image(32, 32, 8);
    CHECK(rel_diff(op.apply_adjoint(x), op.apply(x)) < 1e-12);
}

TEST_CASE("A^T A is positive semidefinite") {
    const auto op = CirculantOperator::gaussian_blur(32, 32, 2.0, 0.3, kPi6);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Image x = oracle::random_image(32, 32, 40 + s);
        CHECK(dot(x, op.apply_adjoint(op.apply(x))) >= 0.0);
    }
}

TEST_CASE("rank floor bounds the condition number") {
    for (double r : {1e-1, 1e-2, 1e-3}) {
        const auto op = CirculantOperator::gaussian_blur(32, 32, 6.0, 4.0, 0.3, r);
        CHECK(op.min_symbol_magnitude() >= r * (1 - 1e-12));
        CHECK(op.condition_number() <= (1.0 / r) * (1 + 1e-12));
        // Even after flooring, the operator stays a real convolution.
        const Image x = oracle::random_image(32, 32, 9);
        CHECK_NOTHROW(op.apply(x));
    }
    CHECK_THROWS_AS(CirculantOperator::gaussian_blur(32, 32, 2, 0.3, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(CirculantOperator::gaussian_blur(32, 32, 2, 0.3, 0.0, -0.1),
                    std::invalid_argument);
}

TEST_CASE("operator shape mismatch") {
    const auto op = CirculantOperator::identity(8, 8);
    CHECK_THROWS_AS(op.apply(Image(8, 9)), std::invalid_argument);
    const auto blur = CirculantOperator::gaussian_blur(8, 8, 1.0, 0.5, 0.0);
    CHECK_THROWS_AS(blur.apply_adjoint(Image(9, 8)), std::invalid_argument);
}

TEST_CASE("noise model") {
    CHECK_THROWS_AS(NoiseModel(0.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseModel(NAN), std::invalid_argument);

    const Image x = oracle::random_image(64, 64, 1, 0.2, 0.5);
    CHECK(max_abs(linear_combination(1.0, add_noise(NoiseModel(1e-12), x, RngSeed{3}), -1.0, x)) <
          1e-10);

    CHECK(add_noise(NoiseModel(0.1), x, RngSeed{4}) == add_noise(NoiseModel(0.1), x, RngSeed{4}));
    CHECK_FALSE(add_noise(NoiseModel(0.1), x, RngSeed{4}) ==
                add_noise(NoiseModel(0.1), x, RngSeed{5}));

    const Image big(1000, 1000);
    const Image y = add_noise(NoiseModel(0.1), big, RngSeed{11});
    const std::vector<double> v(y.data().begin(), y.data().end());
    const double n = double(v.size());
    const double se = 0.01 * std::sqrt(2.0 / (n - 1));
    CHECK(std::abs(oracle::variance(v) - 0.01) < 3 * se);
}

TEST_CASE("build_operator") {
    OperatorSpec spec;
    spec.width = 16;
    spec.height = 16;
    CHECK(build_operator(spec).is_identity());
    spec.type = "gaussian_blur";
    CHECK_FALSE(build_operator(spec).is_identity());
    spec.type = "motion";
    CHECK_THROWS_AS(build_operator(spec), std::invalid_argument);
}
