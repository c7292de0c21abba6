#include "surecp/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace surecp {

const char* to_string(Provenance p) {
    return p == Provenance::supervised ? "supervised" : "sure";
}

double score(const CirculantOperator& op, const Image& x, const Image& x_hat) {
    require_same_shape(x, x_hat, "score");
    const Image residual = op.apply(linear_combination(1.0, x, -1.0, x_hat));
    return squared_norm(residual) / static_cast<double>(residual.size());
}

std::size_t conformal_rank(std::size_t n, double alpha) {
    const double target = static_cast<double>(n) * (1.0 - alpha);
    const double nearest = std::round(target);
    if (std::abs(target - nearest) <= 1e-9 * std::max(1.0, target)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::ceil(target));
}

namespace {

void validate(std::span<const ScoreSample> scores, double alpha) {
    if (scores.empty()) {
        throw std::invalid_argument("calibrate: empty score list");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("calibrate: alpha must lie in (0, 1)");
    }
    for (const auto& s : scores) {
        if (!std::isfinite(s.value)) {
            throw std::invalid_argument("calibrate: non-finite score for sample " +
                                        std::to_string(s.sample_id));
        }
        if (s.provenance != scores.front().provenance) {
            throw std::invalid_argument("calibrate: mixed supervised and SURE scores");
        }
    }
}

CalibrationResult order_statistic(std::vector<double> values, std::size_t rank, double alpha,
                                  Provenance provenance) {
    CalibrationResult result;
    result.alpha = alpha;
    result.sample_size = values.size();
    result.rank = rank;
    result.corrected_level = static_cast<double>(rank) / static_cast<double>(values.size());
    result.provenance = provenance;
    if (rank == 0) {
        // Only reachable for alpha close to 1 with tiny samples.
        result.q_hat = -INFINITY;
    } else if (rank > values.size()) {
        result.q_hat = INFINITY;
    } else {
        auto nth = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
        std::nth_element(values.begin(), nth, values.end());
        result.q_hat = *nth;
    }
    return result;
}

}  // namespace

CalibrationResult calibrate(std::span<const ScoreSample> scores, double alpha) {
    validate(scores, alpha);
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& s : scores) values.push_back(s.value);
    const std::size_t rank = conformal_rank(scores.size() + 1, alpha);
    return order_statistic(std::move(values), rank, alpha, scores.front().provenance);
}

CalibrationResult calibrate_loo(std::span<const ScoreSample> scores, double alpha,
                                std::size_t holdout_index) {
    validate(scores, alpha);
    if (scores.size() < 2) {
        throw std::invalid_argument("calibrate_loo: need at least two scores");
    }
    if (holdout_index >= scores.size()) {
        throw std::out_of_range("calibrate_loo: holdout index " + std::to_string(holdout_index) +
                                " out of range");
    }
    std::vector<double> values;
    values.reserve(scores.size() - 1);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i != holdout_index) values.push_back(scores[i].value);
    }
    const std::size_t rank = conformal_rank(scores.size(), alpha);
    return order_statistic(std::move(values), rank, alpha, scores.front().provenance);
}

PredictionSet::PredictionSet(Image center, std::shared_ptr<const CirculantOperator> op,
                             double q_hat)
    : center_(std::move(center)), op_(std::move(op)), q_hat_(q_hat) {
    if (!op_) {
        throw std::invalid_argument("PredictionSet: missing operator");
    }
    if (center_.width() != op_->width() || center_.height() != op_->height()) {
        throw std::invalid_argument("PredictionSet: center does not match operator");
    }
    if (std::isnan(q_hat_)) {
        throw std::invalid_argument("PredictionSet: q_hat is NaN");
    }
}

bool PredictionSet::contains(const Image& x) const {
    if (q_hat_ == INFINITY) {
        require_same_shape(x, center_, "contains");
        return true;
    }
    return score(*op_, x, center_) <= q_hat_;
}

std::vector<ScoreSample> make_samples(std::span<const double> values, Provenance provenance) {
    std::vector<ScoreSample> samples;
    samples.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        samples.push_back({values[i], provenance, i});
    }
    return samples;
}

}  // namespace surecp
