#pragma once

#include <cstddef>

#include "surecp/image.hpp"
#include "surecp/rng.hpp"

namespace surecp {

/// Gaussian random field: white normal noise low-pass filtered in the Fourier
/// domain by exp(-2 pi^2 l^2 |f|^2) (a spatial Gaussian of standard deviation
/// l = correlation_length pixels, periodic), then rescaled affinely so that
/// min = 0 and max = 1 exactly.
///
/// Throws std::invalid_argument for width or height < 8 or a non-positive
/// correlation length.
Image generate_smooth_image(std::size_t width, std::size_t height, double correlation_length,
                            RngSeed seed);

}  // namespace surecp
