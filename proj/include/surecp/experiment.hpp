#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "surecp/config.hpp"
#include "surecp/conformal.hpp"
#include "surecp/coverage.hpp"
#include "surecp/estimators.hpp"
#include "surecp/image.hpp"
#include "surecp/operators.hpp"
#include "surecp/sure.hpp"

namespace surecp {

// Seed streams derived from the master seed, indexed by sample.
inline constexpr std::uint64_t kTruthStream = 1;
inline constexpr std::uint64_t kNoiseStream = 2;
inline constexpr std::uint64_t kScaleStream = 4;

/// Truth/measurement pairs. The first m_calibration entries form the
/// calibration pool, the remaining ones the test set.
struct Dataset {
    std::vector<Image> truths;
    std::vector<Image> measurements;
    std::size_t m_calibration = 0;

    std::span<const Image> calibration_measurements() const {
        return std::span(measurements).first(m_calibration);
    }
};

/// Correlation length of synthetic image i: fixed, or log-uniform over the
/// configured range with seed derive_seed(seed, kScaleStream, i).
double correlation_length_for(const ExperimentConfig& config, std::size_t index);

/// Ground-truth images: synthetic fields with seeds derive_seed(seed,
/// kTruthStream, i), or the directory's PGM files in name order,
/// center-cropped.
std::vector<Image> load_truths(const ExperimentConfig& config);

/// y_i = A x_i + noise with seed derive_seed(seed, kNoiseStream, i).
Dataset simulate_dataset(const ExperimentConfig& config, const CirculantOperator& op);

/// Everything the self-supervised path produces. It is computed from
/// measurements alone.
struct SureCalibration {
    std::vector<SureValue> sure;
    std::vector<CalibrationResult> per_alpha;  // pooled quantile per grid alpha
};

SureCalibration calibrate_from_measurements(const ExperimentConfig& config, const Estimator& est,
                                            const CirculantOperator& op,
                                            std::span<const Image> measurements);

struct ExperimentResult {
    CoverageCurve curve;
    std::vector<double> supervised_scores;  // s(x_i, y_i) on the calibration pool
    SureCalibration sure_calibration;
    std::vector<double> test_scores;  // s(x_j, y_j) on the test set
};

/// Calibrates both ways on the pool and evaluates coverage for every grid
/// alpha: on the disjoint test set with the pooled quantile, or, with
/// leave_one_out, on the pool itself with per-sample leave-one-out quantiles.
ExperimentResult evaluate(const ExperimentConfig& config, const Dataset& dataset);

/// simulate_dataset + evaluate.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string render_scores(const ExperimentResult& result);
std::string render_sure_calibration(const ExperimentResult& result);

/// coverage.csv, scores.csv, histogram.csv, sure_calibration.csv,
/// config_echo.json, coverage.svg and histogram.svg in `dir`.
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                   const std::filesystem::path& dir);

/// data/truth_NNNNN.imgf and data/measurement_NNNNN.imgf under `dir`.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

}  // namespace surecp
