#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "surecp/image.hpp"
#include "surecp/operators.hpp"

namespace surecp {

enum class Provenance { supervised, sure };

const char* to_string(Provenance p);

/// One calibration unit: a supervised score s(x_i, y_i) (>= 0) or an
/// estimate SURE(y_i) (may be negative).
struct ScoreSample {
    double value = 0.0;
    Provenance provenance = Provenance::supervised;
    std::size_t sample_id = 0;
};

struct CalibrationResult {
    double alpha = 0.0;
    /// +inf when the required order statistic does not exist.
    double q_hat = 0.0;
    /// Number of scores the quantile was taken over.
    std::size_t sample_size = 0;
    /// 1-based order statistic used.
    std::size_t rank = 0;
    /// rank / sample_size, the quantile level actually used.
    double corrected_level = 0.0;
    Provenance provenance = Provenance::supervised;

    bool degenerate() const { return rank > sample_size; }
};

/// Non-conformity measure with Sigma = A^T A:
///   s(x, x_hat) = |A x - A x_hat|^2 / m.
double score(const CirculantOperator& op, const Image& x, const Image& x_hat);

/// ceil(n * (1 - alpha)). Products within 1e-9 (relative) of an integer are
/// snapped to it so that decimal alphas such as 0.1 give the intended rank.
std::size_t conformal_rank(std::size_t n, double alpha);

/// Split-conformal quantile: the k-th smallest of the M scores with
/// k = ceil((M + 1)(1 - alpha)), or +inf when k > M. No interpolation.
/// Throws std::invalid_argument on an empty sample, mixed provenance,
/// non-finite scores or alpha outside (0, 1).
CalibrationResult calibrate(std::span<const ScoreSample> scores, double alpha);

/// Leave-one-out quantile for sample `holdout_index`: drop it, then take the
/// k-th smallest of the remaining M - 1 with k = ceil(M (1 - alpha)), +inf
/// when k > M - 1. Requires M >= 2.
CalibrationResult calibrate_loo(std::span<const ScoreSample> scores, double alpha,
                                std::size_t holdout_index);

/// {x : |A x - A center|^2 / m <= q_hat}
class PredictionSet {
public:
    PredictionSet(Image center, std::shared_ptr<const CirculantOperator> op, double q_hat);

    const Image& center() const { return center_; }
    const CirculantOperator& op() const { return *op_; }
    double q_hat() const { return q_hat_; }
    std::size_t m() const { return center_.size(); }

    /// score(op, x, center) <= q_hat, compared exactly.
    bool contains(const Image& x) const;

    /// q_hat itself: at fixed A the ellipsoid volume is monotone in it.
    double size_proxy() const { return q_hat_; }

private:
    Image center_;
    std::shared_ptr<const CirculantOperator> op_;
    double q_hat_;
};

std::vector<ScoreSample> make_samples(std::span<const double> values, Provenance provenance);

}  // namespace surecp
