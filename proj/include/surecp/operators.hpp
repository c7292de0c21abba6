#pragma once

#include <cstddef>
#include <numbers>
#include <string>

#include "surecp/fft.hpp"
#include "surecp/image.hpp"
#include "surecp/rng.hpp"

namespace surecp {

inline constexpr double kDefaultRankFloor = 1e-3;

/// Convolution with periodic boundary, stored as its eigenvalues on the 2-D
/// DFT grid (the symbol). The symbol always comes from a real kernel, so it
/// is conjugate-symmetric, and min |symbol| > 0 holds after construction.
class CirculantOperator {
public:
    static CirculantOperator identity(std::size_t width, std::size_t height);

    /// Rotated anisotropic Gaussian blur. `bandwidth_major` / `bandwidth_minor`
    /// are standard deviations in pixels; the major axis makes `angle` radians
    /// with the +x (column) axis. The kernel is evaluated over the whole grid,
    /// periodized and normalized to unit sum. Symbol entries with magnitude
    /// below `rank_floor` are raised to it, keeping their phase.
    static CirculantOperator gaussian_blur(std::size_t width, std::size_t height,
                                           double bandwidth_major, double bandwidth_minor,
                                           double angle, double rank_floor = kDefaultRankFloor);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return width_ * height_; }
    const Spectrum& symbol() const { return symbol_; }
    bool is_identity() const { return identity_; }

    /// A x. Throws std::invalid_argument on shape mismatch and
    /// std::runtime_error if the discarded imaginary part exceeds 1e-9 of
    /// the result norm.
    Image apply(const Image& x) const;

    /// A^T x (conjugated symbol).
    Image apply_adjoint(const Image& x) const;

    /// max |symbol| / min |symbol|.
    double condition_number() const;

    double min_symbol_magnitude() const;
    double max_symbol_magnitude() const;

private:
    CirculantOperator(std::size_t width, std::size_t height, Spectrum symbol, bool identity);

    Image filter(const Image& x, bool conjugate) const;

    std::size_t width_;
    std::size_t height_;
    Spectrum symbol_;
    bool identity_;
};

/// Unit-sum periodized Gaussian kernel used by gaussian_blur, centered at
/// pixel (0, 0).
Image periodized_gaussian_kernel(std::size_t width, std::size_t height, double bandwidth_major,
                                 double bandwidth_minor, double angle);

/// Additive white Gaussian noise, Y | X = x ~ N(Ax, sigma^2 I).
class NoiseModel {
public:
    /// Throws std::invalid_argument unless sigma is finite and > 0.
    explicit NoiseModel(double sigma);

    double sigma() const { return sigma_; }
    double variance() const { return sigma_ * sigma_; }

private:
    double sigma_;
};

/// clean + sigma * n with n i.i.d. standard normal drawn from `seed`.
Image add_noise(const NoiseModel& noise, const Image& clean_measurement, RngSeed seed);

/// Serializable description of a forward operator (CLI configuration).
struct OperatorSpec {
    std::string type = "identity";  // "identity" | "gaussian_blur"
    std::size_t width = 64;
    std::size_t height = 64;
    double bandwidth_major = 2.0;
    double bandwidth_minor = 0.3;
    double angle = std::numbers::pi / 6.0;
    double rank_floor = kDefaultRankFloor;
    double sigma = 0.1;
};

CirculantOperator build_operator(const OperatorSpec& spec);

}  // namespace surecp
