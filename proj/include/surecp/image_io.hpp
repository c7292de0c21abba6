#pragma once

#include <filesystem>
#include <stdexcept>

#include "surecp/image.hpp"

namespace surecp {

/// Malformed, truncated or unsupported image file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ImageFormat {
    /// "IMGF64\n", "width height\n", then width*height little-endian f64.
    /// Round-trips bit-exactly.
    flat_float,
    /// Binary P5, maxval 255. Values are clamped to [0, 1] and rounded.
    pgm8,
    /// Binary P5, maxval 65535, big-endian samples.
    pgm16,
};

/// Reads a binary PGM (P5, 8 or 16 bit, intensities divided by maxval) or a
/// flat-float file; the format is detected from the magic bytes.
Image read_image(const std::filesystem::path& path);

void write_image(const std::filesystem::path& path, const Image& image,
                 ImageFormat format = ImageFormat::flat_float);

/// Center crop to width x height. Throws std::invalid_argument if the image is
/// smaller than the requested size in either dimension.
Image center_crop(const Image& image, std::size_t width, std::size_t height);

}  // namespace surecp
