#include "surecp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace surecp {

namespace {

// Periodic images within +-kWraps periods; the Gaussian tail beyond that is
// below double precision for any bandwidth smaller than the grid.
constexpr int kWraps = 3;

void require_positive_dims(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) {
        throw std::invalid_argument("operator dimensions must be positive");
    }
}

}  // namespace

CirculantOperator::CirculantOperator(std::size_t width, std::size_t height, Spectrum symbol,
                                     bool identity)
    : width_(width), height_(height), symbol_(std::move(symbol)), identity_(identity) {}

CirculantOperator CirculantOperator::identity(std::size_t width, std::size_t height) {
    require_positive_dims(width, height);
    return CirculantOperator(width, height, Spectrum(width * height, 1.0), true);
}

Image periodized_gaussian_kernel(std::size_t width, std::size_t height, double bandwidth_major,
                                 double bandwidth_minor, double angle) {
    require_positive_dims(width, height);
    if (!(bandwidth_major > 0.0) || !(bandwidth_minor > 0.0)) {
        throw std::invalid_argument("gaussian blur: bandwidths must be positive");
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double inv_major = 1.0 / (2.0 * bandwidth_major * bandwidth_major);
    const double inv_minor = 1.0 / (2.0 * bandwidth_minor * bandwidth_minor);
    const auto w = static_cast<double>(width);
    const auto h = static_cast<double>(height);

    Image kernel(width, height);
    double total = 0.0;
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t col = 0; col < width; ++col) {
            double value = 0.0;
            for (int py = -kWraps; py <= kWraps; ++py) {
                const double dy = static_cast<double>(signed_frequency(r, height)) + py * h;
                for (int px = -kWraps; px <= kWraps; ++px) {
                    const double dx = static_cast<double>(signed_frequency(col, width)) + px * w;
                    const double u = c * dx + s * dy;
                    const double v = -s * dx + c * dy;
                    value += std::exp(-u * u * inv_major - v * v * inv_minor);
                }
            }
            kernel(r, col) = value;
            total += value;
        }
    }
    for (double& v : kernel.data()) v /= total;
    return kernel;
}

CirculantOperator CirculantOperator::gaussian_blur(std::size_t width, std::size_t height,
                                                   double bandwidth_major, double bandwidth_minor,
                                                   double angle, double rank_floor) {
    if (!(rank_floor >= 0.0 && rank_floor < 1.0)) {
        throw std::invalid_argument("gaussian blur: rank_floor must lie in [0, 1)");
    }
    const Image kernel =
        periodized_gaussian_kernel(width, height, bandwidth_major, bandwidth_minor, angle);
    const Spectrum raw = fft2(kernel);
    // Project onto exact conjugate symmetry, lambda(-k) = conj(lambda(k)).
    Spectrum symbol(raw.size());
    for (std::size_t r = 0; r < height; ++r) {
        const std::size_t nr = (height - r) % height;
        for (std::size_t col = 0; col < width; ++col) {
            const std::size_t nc = (width - col) % width;
            symbol[r * width + col] = 0.5 * (raw[r * width + col] + std::conj(raw[nr * width + nc]));
        }
    }
    for (auto& lambda : symbol) {
        const double mag = std::abs(lambda);
        if (mag < rank_floor) {
            lambda = mag > 0.0 ? lambda * (rank_floor / mag) : std::complex<double>(rank_floor);
        }
    }
    CirculantOperator op(width, height, std::move(symbol), false);
    if (!(op.min_symbol_magnitude() > 0.0)) {
        throw std::invalid_argument("gaussian blur: operator is rank deficient; use rank_floor > 0");
    }
    return op;
}

Image CirculantOperator::filter(const Image& x, bool conjugate) const {
    if (x.width() != width_ || x.height() != height_) {
        throw std::invalid_argument("operator apply: image " + std::to_string(x.width()) + "x" +
                                    std::to_string(x.height()) + " does not match operator " +
                                    std::to_string(width_) + "x" + std::to_string(height_));
    }
    if (identity_) {
        return x;
    }
    Spectrum spectrum = fft2(x);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        spectrum[k] *= conjugate ? std::conj(symbol_[k]) : symbol_[k];
    }
    double imag_norm = 0.0;
    Image result = ifft2_real(spectrum, width_, height_, imag_norm);
    if (imag_norm > 1e-9 * std::sqrt(squared_norm(result))) {
        throw std::runtime_error("operator apply: imaginary residue " + std::to_string(imag_norm) +
                                 " exceeds tolerance; symbol is not conjugate-symmetric");
    }
    return result;
}

Image CirculantOperator::apply(const Image& x) const { return filter(x, false); }

Image CirculantOperator::apply_adjoint(const Image& x) const { return filter(x, true); }

double CirculantOperator::min_symbol_magnitude() const {
    double m = INFINITY;
    for (const auto& v : symbol_) m = std::min(m, std::abs(v));
    return m;
}

double CirculantOperator::max_symbol_magnitude() const {
    double m = 0.0;
    for (const auto& v : symbol_) m = std::max(m, std::abs(v));
    return m;
}

double CirculantOperator::condition_number() const {
    return max_symbol_magnitude() / min_symbol_magnitude();
}

NoiseModel::NoiseModel(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("noise sigma must be finite and positive");
    }
}

Image add_noise(const NoiseModel& noise, const Image& clean_measurement, RngSeed seed) {
    Rng rng(seed);
    Image out = clean_measurement;
    for (double& v : out.data()) v += noise.sigma() * rng.normal();
    return out;
}

CirculantOperator build_operator(const OperatorSpec& spec) {
    if (spec.type == "identity") {
        return CirculantOperator::identity(spec.width, spec.height);
    }
    if (spec.type == "gaussian_blur") {
        return CirculantOperator::gaussian_blur(spec.width, spec.height, spec.bandwidth_major,
                                                spec.bandwidth_minor, spec.angle, spec.rank_floor);
    }
    throw std::invalid_argument("unknown operator type '" + spec.type + "'");
}

}  // namespace surecp
