#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace surecp {

/// Single-channel raster of real intensities, row-major. Nominal range is
/// [0, 1] but nothing clamps it: noisy measurements leave that range.
class Image {
public:
    /// Zero image. Throws std::invalid_argument on a zero dimension.
    Image(std::size_t width, std::size_t height);

    /// Throws std::invalid_argument if data.size() != width * height or any
    /// entry is non-finite.
    Image(std::size_t width, std::size_t height, std::vector<double> data);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    double operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }
    double& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }

    bool same_shape(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

/// Throws std::invalid_argument naming `what` when shapes differ.
void require_same_shape(const Image& a, const Image& b, const char* what);

double dot(const Image& a, const Image& b);
double squared_norm(const Image& a);
double max_abs(const Image& a);

/// a * x + b * z
Image linear_combination(double a, const Image& x, double b, const Image& z);

}  // namespace surecp
