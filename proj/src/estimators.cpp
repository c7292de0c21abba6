#include "surecp/estimators.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "surecp/fft.hpp"

namespace surecp {

Estimator::Estimator(std::string name, std::size_t width, std::size_t height,
                     ReconstructFn reconstruct, std::optional<DivergenceFn> exact_divergence)
    : name_(std::move(name)),
      width_(width),
      height_(height),
      reconstruct_(std::move(reconstruct)),
      exact_divergence_(std::move(exact_divergence)) {
    if (!reconstruct_) {
        throw std::invalid_argument("Estimator: missing reconstruction rule");
    }
}

void Estimator::check_shape(const Image& y) const {
    if (y.width() != width_ || y.height() != height_) {
        throw std::invalid_argument("estimator '" + name_ + "': measurement " +
                                    std::to_string(y.width()) + "x" + std::to_string(y.height()) +
                                    " does not match " + std::to_string(width_) + "x" +
                                    std::to_string(height_));
    }
}

Image Estimator::reconstruct(const Image& y) const {
    check_shape(y);
    return reconstruct_(y);
}

double Estimator::exact_divergence(const Image& y) const {
    if (!exact_divergence_) {
        throw std::logic_error("estimator '" + name_ + "' has no closed-form divergence");
    }
    check_shape(y);
    return (*exact_divergence_)(y);
}

double PriorPower::at(double frequency) const {
    if (exponent == 0.0) return p0;
    const double ratio = frequency / cutoff;
    return p0 * std::pow(1.0 + ratio * ratio, -0.5 * exponent);
}

namespace {

// x_hat = F^{-1}(g . F y). The divergence of A x_hat is the trace of the
// circulant A G, i.e. sum_k Re(l_k g_k); it does not depend on y.
Estimator fourier_filter_estimator(std::string name, const CirculantOperator& op, Spectrum gain) {
    double trace = 0.0;
    for (std::size_t k = 0; k < gain.size(); ++k) {
        trace += (op.symbol()[k] * gain[k]).real();
    }
    const std::size_t width = op.width();
    const std::size_t height = op.height();
    auto shared_gain = std::make_shared<const Spectrum>(std::move(gain));
    auto reconstruct = [shared_gain, width, height](const Image& y) {
        Spectrum spectrum = fft2(y);
        for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= (*shared_gain)[k];
        double imag_norm = 0.0;
        Image x = ifft2_real(spectrum, width, height, imag_norm);
        if (imag_norm > 1e-9 * std::sqrt(squared_norm(x)) + 1e-300) {
            throw std::runtime_error("linear estimator: imaginary residue exceeds tolerance");
        }
        return x;
    };
    return Estimator(std::move(name), width, height, std::move(reconstruct),
                     [trace](const Image&) { return trace; });
}

}  // namespace

Estimator wiener_estimator(const CirculantOperator& op, double sigma, PriorPower prior) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("wiener_estimator: sigma must be positive");
    }
    if (!(prior.p0 > 0.0) || (prior.exponent != 0.0 && !(prior.cutoff > 0.0))) {
        throw std::invalid_argument("wiener_estimator: prior power must be positive");
    }
    const std::size_t width = op.width();
    const std::size_t height = op.height();
    Spectrum gain(op.size());
    for (std::size_t r = 0; r < height; ++r) {
        const double fy = static_cast<double>(signed_frequency(r, height)) / height;
        for (std::size_t c = 0; c < width; ++c) {
            const double fx = static_cast<double>(signed_frequency(c, width)) / width;
            const std::size_t k = r * width + c;
            const auto lambda = op.symbol()[k];
            const double regularizer = sigma * sigma / prior.at(std::hypot(fx, fy));
            gain[k] = std::conj(lambda) / (std::norm(lambda) + regularizer);
        }
    }
    return fourier_filter_estimator("wiener", op, std::move(gain));
}

Estimator polynomial_deblur_estimator(const CirculantOperator& op, int degree) {
    if (degree < 0 || degree > 5) {
        throw std::invalid_argument("polynomial_deblur_estimator: degree must lie in [0, 5]");
    }
    Spectrum gain(op.size());
    for (std::size_t k = 0; k < gain.size(); ++k) {
        const auto residual = 1.0 - op.symbol()[k];
        std::complex<double> term = 1.0;
        std::complex<double> sum = 1.0;
        for (int j = 1; j <= degree; ++j) {
            term *= residual;
            sum += term;
        }
        gain[k] = sum;
    }
    return fourier_filter_estimator("polynomial_deblur", op, std::move(gain));
}

Estimator soft_threshold_denoiser(const CirculantOperator& op, double threshold) {
    if (!op.is_identity()) {
        throw std::invalid_argument(
            "soft_threshold_denoiser: configuration error, requires the identity operator");
    }
    if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
        throw std::invalid_argument("soft_threshold_denoiser: threshold must be >= 0");
    }
    auto reconstruct = [threshold](const Image& y) {
        Image x = y;
        for (double& v : x.data()) {
            const double d = v - 0.5;
            const double shrunk = std::max(std::abs(d) - threshold, 0.0);
            v = 0.5 + std::copysign(shrunk, d);
        }
        return x;
    };
    auto divergence = [threshold](const Image& y) {
        double count = 0.0;
        for (double v : y.data()) {
            if (std::abs(v - 0.5) > threshold) count += 1.0;
        }
        return count;
    };
    return Estimator("soft_threshold", op.width(), op.height(), std::move(reconstruct),
                     std::move(divergence));
}

Estimator build_estimator(const EstimatorSpec& spec, const CirculantOperator& op, double sigma) {
    if (spec.name == "soft_threshold") return soft_threshold_denoiser(op, spec.threshold);
    if (spec.name == "wiener") return wiener_estimator(op, sigma, spec.prior);
    if (spec.name == "polynomial_deblur") return polynomial_deblur_estimator(op, spec.degree);
    throw std::invalid_argument("unknown estimator '" + spec.name + "'");
}

}  // namespace surecp
