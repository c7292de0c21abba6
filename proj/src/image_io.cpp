#include "surecp/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace surecp {

namespace {

constexpr std::string_view kFlatMagic = "IMGF64\n";

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class HeaderReader {
public:
    HeaderReader(const std::vector<unsigned char>& bytes, std::size_t pos, std::string file)
        : bytes_(bytes), pos_(pos), file_(std::move(file)) {}

    // Skips whitespace and '#' comments, then reads a decimal integer.
    std::uint64_t integer(const char* what) {
        skip_space_and_comments();
        std::uint64_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_]) && digits < 12) {
            value = value * 10 + (bytes_[pos_] - '0');
            ++pos_;
            ++digits;
        }
        if (digits == 0) {
            throw FormatError(file_ + ": malformed header, expected " + what);
        }
        return value;
    }

    // Exactly one whitespace byte separates the header from the payload.
    void single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw FormatError(file_ + ": malformed header, missing separator before payload");
        }
        ++pos_;
    }

    std::size_t position() const { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::size_t pos_;
    std::string file_;
};

Image read_pgm(const std::vector<unsigned char>& bytes, const std::string& file) {
    HeaderReader header(bytes, 2, file);
    const auto width = header.integer("width");
    const auto height = header.integer("height");
    const auto maxval = header.integer("maxval");
    header.single_whitespace();
    if (width == 0 || height == 0) {
        throw FormatError(file + ": zero image dimension");
    }
    if (maxval == 0 || maxval > 65535) {
        throw FormatError(file + ": maxval out of range [1, 65535]");
    }
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t count = width * height;
    const std::size_t start = header.position();
    if (bytes.size() - start < count * bytes_per_sample) {
        throw FormatError(file + ": truncated payload");
    }
    std::vector<double> data(count);
    const double scale = static_cast<double>(maxval);
    for (std::size_t i = 0; i < count; ++i) {
        unsigned value = bytes[start + i * bytes_per_sample];
        if (bytes_per_sample == 2) {
            value = (value << 8) | bytes[start + 2 * i + 1];
        }
        if (value > maxval) {
            throw FormatError(file + ": sample exceeds maxval");
        }
        data[i] = static_cast<double>(value) / scale;
    }
    return Image(width, height, std::move(data));
}

Image read_flat(const std::vector<unsigned char>& bytes, const std::string& file) {
    HeaderReader header(bytes, kFlatMagic.size(), file);
    const auto width = header.integer("width");
    const auto height = header.integer("height");
    header.single_whitespace();
    if (width == 0 || height == 0) {
        throw FormatError(file + ": zero image dimension");
    }
    const std::size_t count = width * height;
    const std::size_t start = header.position();
    if (bytes.size() - start < count * sizeof(double)) {
        throw FormatError(file + ": truncated payload");
    }
    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t word = 0;
        for (int b = 7; b >= 0; --b) {
            word = (word << 8) | bytes[start + i * 8 + b];
        }
        data[i] = std::bit_cast<double>(word);
    }
    return Image(width, height, std::move(data));
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
    const auto bytes = slurp(path);
    const std::string file = path.string();
    if (bytes.size() >= kFlatMagic.size() &&
        std::equal(kFlatMagic.begin(), kFlatMagic.end(), bytes.begin())) {
        return read_flat(bytes, file);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        if (bytes[1] == '5') {
            return read_pgm(bytes, file);
        }
        if (bytes[1] == '2') {
            throw FormatError(file + ": unsupported PGM variant P2 (ASCII); convert to binary P5");
        }
        throw FormatError(file + ": unsupported Netpbm variant P" + static_cast<char>(bytes[1]));
    }
    throw FormatError(file + ": unrecognized image format");
}

void write_image(const std::filesystem::path& path, const Image& image, ImageFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    if (format == ImageFormat::flat_float) {
        out << kFlatMagic << image.width() << ' ' << image.height() << '\n';
        for (double v : image.data()) {
            auto word = std::bit_cast<std::uint64_t>(v);
            char le[8];
            for (int b = 0; b < 8; ++b) {
                le[b] = static_cast<char>(word & 0xFF);
                word >>= 8;
            }
            out.write(le, 8);
        }
    } else {
        const unsigned maxval = format == ImageFormat::pgm8 ? 255 : 65535;
        out << "P5\n" << image.width() << ' ' << image.height() << '\n' << maxval << '\n';
        for (double v : image.data()) {
            const auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
            if (maxval > 255) {
                out.put(static_cast<char>(q >> 8));
            }
            out.put(static_cast<char>(q & 0xFF));
        }
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

Image center_crop(const Image& image, std::size_t width, std::size_t height) {
    if (image.width() < width || image.height() < height) {
        throw std::invalid_argument("center_crop: image " + std::to_string(image.width()) + "x" +
                                    std::to_string(image.height()) + " smaller than " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    const std::size_t x0 = (image.width() - width) / 2;
    const std::size_t y0 = (image.height() - height) / 2;
    Image out(width, height);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            out(r, c) = image(y0 + r, x0 + c);
        }
    }
    return out;
}

}  // namespace surecp
