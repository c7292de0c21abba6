#include "surecp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "surecp/fft.hpp"

namespace surecp {

Image generate_smooth_image(std::size_t width, std::size_t height, double correlation_length,
                            RngSeed seed) {
    if (width < 8 || height < 8) {
        throw std::invalid_argument("generate_smooth_image: dimensions must be at least 8x8");
    }
    if (!(correlation_length > 0.0) || !std::isfinite(correlation_length)) {
        throw std::invalid_argument("generate_smooth_image: correlation length must be positive");
    }

    Rng rng(seed);
    Image noise(width, height);
    for (double& v : noise.data()) v = rng.normal();

    Spectrum spectrum = fft2(noise);
    const double c = 2.0 * std::numbers::pi * std::numbers::pi * correlation_length *
                     correlation_length;
    for (std::size_t r = 0; r < height; ++r) {
        const double fy = static_cast<double>(signed_frequency(r, height)) / height;
        for (std::size_t col = 0; col < width; ++col) {
            const double fx = static_cast<double>(signed_frequency(col, width)) / width;
            spectrum[r * width + col] *= std::exp(-c * (fx * fx + fy * fy));
        }
    }
    double imag_norm = 0.0;
    Image field = ifft2_real(spectrum, width, height, imag_norm);

    const auto [lo_it, hi_it] = std::minmax_element(field.data().begin(), field.data().end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    if (!(range > 0.0)) {
        throw std::runtime_error("generate_smooth_image: degenerate field (zero range)");
    }
    for (double& v : field.data()) v = (v - lo) / range;
    return field;
}

}  // namespace surecp
