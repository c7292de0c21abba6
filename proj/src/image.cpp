#include "surecp/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace surecp {

Image::Image(std::size_t width, std::size_t height)
    : width_(width), height_(height), data_(width * height, 0.0) {
    if (width == 0 || height == 0) {
        throw std::invalid_argument("Image: dimensions must be positive");
    }
}

Image::Image(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width == 0 || height == 0) {
        throw std::invalid_argument("Image: dimensions must be positive");
    }
    if (data_.size() != width * height) {
        throw std::invalid_argument("Image: data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("Image: non-finite intensity");
    }
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                    " vs " + std::to_string(b.width()) + "x" +
                                    std::to_string(b.height()) + ")");
    }
}

double dot(const Image& a, const Image& b) {
    require_same_shape(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a.data()[i] * b.data()[i];
    }
    return acc;
}

double squared_norm(const Image& a) {
    double acc = 0.0;
    for (double v : a.data()) {
        acc += v * v;
    }
    return acc;
}

double max_abs(const Image& a) {
    double m = 0.0;
    for (double v : a.data()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Image linear_combination(double a, const Image& x, double b, const Image& z) {
    require_same_shape(x, z, "linear_combination");
    Image out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.data()[i] = a * x.data()[i] + b * z.data()[i];
    }
    return out;
}

}  // namespace surecp
