#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "surecp/estimators.hpp"
#include "surecp/operators.hpp"
#include "surecp/rng.hpp"
#include "surecp/sure.hpp"

namespace surecp {

struct ImageSource {
    std::string type = "synthetic";  // "synthetic" | "pgm_directory"
    double correlation_length = 8.0;
    /// When > correlation_length, image i draws its correlation length
    /// log-uniformly from [correlation_length, correlation_length_max].
    double correlation_length_max = 0.0;
    /// PGM files (*.pgm, sorted by name), center-cropped to the image size.
    std::filesystem::path directory;
};

struct ExperimentConfig {
    std::string problem = "denoise";  // "denoise" | "deblur"
    ImageSource source;
    std::size_t width = 64;
    std::size_t height = 64;
    OperatorSpec op;
    double noise_sigma = 0.1;
    EstimatorSpec estimator;
    std::size_t m_calibration = 500;
    std::size_t n_test = 200;
    std::vector<double> alpha_grid = default_alpha_grid();
    SureOptions sure;
    RngSeed seed{1};
    std::filesystem::path output_dir = "out";
    bool leave_one_out = false;
    /// Worker threads, 0 = all cores. Never changes results.
    unsigned threads = 0;

    /// 0.05, 0.10, ..., 0.95
    static std::vector<double> default_alpha_grid();

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// Strict parse: unknown keys at any level are rejected. Missing keys keep
/// their defaults; operator width/height/sigma default to the top-level
/// values and must agree with them when given.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace surecp
