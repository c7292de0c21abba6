#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "surecp/image.hpp"
#include "surecp/operators.hpp"

namespace surecp {

/// A named reconstruction rule y -> x_hat(y), usable as a black box. When a
/// closed form exists it also carries div(A x_hat(y)), the divergence of the
/// predicted measurement with respect to y.
///
/// Estimators are immutable and reconstruct() is reentrant.
class Estimator {
public:
    using ReconstructFn = std::function<Image(const Image&)>;
    using DivergenceFn = std::function<double(const Image&)>;

    Estimator(std::string name, std::size_t width, std::size_t height, ReconstructFn reconstruct,
              std::optional<DivergenceFn> exact_divergence = std::nullopt);

    const std::string& name() const { return name_; }
    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }

    /// Throws std::invalid_argument if y does not have the estimator's shape.
    Image reconstruct(const Image& y) const;

    bool has_exact_divergence() const { return exact_divergence_.has_value(); }

    /// Throws std::logic_error when no closed form is available.
    double exact_divergence(const Image& y) const;

private:
    void check_shape(const Image& y) const;

    std::string name_;
    std::size_t width_;
    std::size_t height_;
    ReconstructFn reconstruct_;
    std::optional<DivergenceFn> exact_divergence_;
};

/// Prior power spectrum p(f) = p0 * (1 + (|f| / cutoff)^2)^(-exponent / 2),
/// f in cycles per pixel. exponent = 0 gives the flat spectrum p0.
struct PriorPower {
    double p0 = 1.0;
    double cutoff = 0.05;
    double exponent = 0.0;

    double at(double frequency) const;
};

/// Fourier-domain Wiener filter X_hat = conj(l) Y / (|l|^2 + sigma^2 / p).
/// Linear in y; div(A x_hat) = sum_k |l_k|^2 / (|l_k|^2 + sigma^2 / p_k).
Estimator wiener_estimator(const CirculantOperator& op, double sigma, PriorPower prior = {});

/// Truncated Neumann series for A^{-1}: x_hat = sum_{j=0}^{degree} (I - A)^j y.
/// Linear in y; div(A x_hat) = sum_k Re(l_k p(l_k)). degree in [0, 5].
Estimator polynomial_deblur_estimator(const CirculantOperator& op, int degree);

/// Pixelwise soft thresholding of deviations from mid-gray:
/// x_hat_i = 0.5 + sign(y_i - 0.5) max(|y_i - 0.5| - threshold, 0).
/// Weakly differentiable and 1-Lipschitz; div = #{i : |y_i - 0.5| > threshold}.
/// Only valid for denoising: throws std::invalid_argument unless `op` is the
/// identity.
Estimator soft_threshold_denoiser(const CirculantOperator& op, double threshold);

/// Serializable description of an estimator (CLI configuration).
struct EstimatorSpec {
    std::string name = "soft_threshold";  // "soft_threshold" | "wiener" | "polynomial_deblur"
    double threshold = 0.1;
    PriorPower prior;
    int degree = 3;
};

Estimator build_estimator(const EstimatorSpec& spec, const CirculantOperator& op, double sigma);

}  // namespace surecp
