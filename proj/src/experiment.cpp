#include "surecp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "surecp/image_io.hpp"
#include "surecp/parallel.hpp"
#include "surecp/plot.hpp"
#include "surecp/synthetic.hpp"
#include "surecp/table.hpp"

namespace surecp {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

double fraction(std::size_t hits, std::size_t total) {
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

double correlation_length_for(const ExperimentConfig& config, std::size_t index) {
    const double lo = config.source.correlation_length;
    const double hi = config.source.correlation_length_max;
    if (!(hi > lo)) return lo;
    Rng rng(derive_seed(config.seed, kScaleStream, index));
    return lo * std::exp(rng.uniform() * std::log(hi / lo));
}

std::vector<Image> load_truths(const ExperimentConfig& config) {
    const std::size_t count = config.m_calibration + config.n_test;
    std::vector<Image> truths;
    if (config.source.type == "synthetic") {
        truths.assign(count, Image(config.width, config.height));
        parallel_for(
            count,
            [&](std::size_t i) {
                truths[i] = generate_smooth_image(config.width, config.height,
                                                  correlation_length_for(config, i),
                                                  derive_seed(config.seed, kTruthStream, i));
            },
            config.threads);
        return truths;
    }

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(config.source.directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.size() < count) {
        throw std::invalid_argument("image directory " + config.source.directory.string() +
                                    " holds " + std::to_string(files.size()) +
                                    " PGM files; the experiment needs " + std::to_string(count));
    }
    files.resize(count);
    for (const auto& f : files) {
        truths.push_back(center_crop(read_image(f), config.width, config.height));
    }
    return truths;
}

Dataset simulate_dataset(const ExperimentConfig& config, const CirculantOperator& op) {
    Dataset data;
    data.m_calibration = config.m_calibration;
    data.truths = load_truths(config);
    const NoiseModel noise(config.noise_sigma);
    data.measurements.assign(data.truths.size(), Image(config.width, config.height));
    parallel_for(
        data.truths.size(),
        [&](std::size_t i) {
            data.measurements[i] = add_noise(noise, op.apply(data.truths[i]),
                                             derive_seed(config.seed, kNoiseStream, i));
        },
        config.threads);
    return data;
}

SureCalibration calibrate_from_measurements(const ExperimentConfig& config, const Estimator& est,
                                            const CirculantOperator& op,
                                            std::span<const Image> measurements) {
    SureCalibration out;
    out.sure = sure_pool(est, op, NoiseModel(config.noise_sigma), measurements, config.sure,
                         config.seed, config.threads);
    std::vector<double> values;
    for (const auto& s : out.sure) values.push_back(s.value);
    const auto samples = make_samples(values, Provenance::sure);
    for (double alpha : config.alpha_grid) {
        out.per_alpha.push_back(calibrate(samples, alpha));
    }
    return out;
}

ExperimentResult evaluate(const ExperimentConfig& config, const Dataset& dataset) {
    config.validate();
    if (dataset.truths.size() != dataset.measurements.size() ||
        dataset.m_calibration != config.m_calibration ||
        dataset.measurements.size() != config.m_calibration + config.n_test) {
        throw std::invalid_argument("evaluate: dataset does not match configuration");
    }
    const auto op = std::make_shared<const CirculantOperator>(build_operator(config.op));
    const Estimator est = build_estimator(config.estimator, *op, config.noise_sigma);
    const std::size_t m = config.m_calibration;
    const std::size_t total = dataset.measurements.size();

    std::vector<Image> estimates(total, Image(config.width, config.height));
    parallel_for(
        total, [&](std::size_t i) { estimates[i] = est.reconstruct(dataset.measurements[i]); },
        config.threads);

    ExperimentResult result;
    result.sure_calibration =
        calibrate_from_measurements(config, est, *op, dataset.calibration_measurements());

    std::vector<double> scores(total);
    parallel_for(
        total, [&](std::size_t i) { scores[i] = score(*op, dataset.truths[i], estimates[i]); },
        config.threads);
    result.supervised_scores.assign(scores.begin(), scores.begin() + m);
    result.test_scores.assign(scores.begin() + m, scores.end());

    const auto supervised = make_samples(result.supervised_scores, Provenance::supervised);
    std::vector<double> sure_values;
    for (const auto& s : result.sure_calibration.sure) sure_values.push_back(s.value);
    const auto sure_samples = make_samples(sure_values, Provenance::sure);

    for (std::size_t a = 0; a < config.alpha_grid.size(); ++a) {
        const double alpha = config.alpha_grid[a];
        const CalibrationResult sup = calibrate(supervised, alpha);
        const CalibrationResult self = result.sure_calibration.per_alpha[a];
        CoverageRow row;
        row.alpha = alpha;
        row.nominal = 1.0 - alpha;
        row.q_hat_supervised = sup.q_hat;
        row.q_hat_sure = self.q_hat;
        if (!config.leave_one_out) {
            row.corrected_level = sup.corrected_level;
            std::size_t hit_sup = 0;
            std::size_t hit_sure = 0;
            for (std::size_t j = m; j < total; ++j) {
                hit_sup += PredictionSet(estimates[j], op, sup.q_hat).contains(dataset.truths[j]);
                hit_sure += PredictionSet(estimates[j], op, self.q_hat).contains(dataset.truths[j]);
            }
            row.coverage_supervised = fraction(hit_sup, config.n_test);
            row.coverage_sure = fraction(hit_sure, config.n_test);
        } else {
            std::size_t hit_sup = 0;
            std::size_t hit_sure = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const auto loo_sup = calibrate_loo(supervised, alpha, i);
                const auto loo_sure = calibrate_loo(sure_samples, alpha, i);
                row.corrected_level = loo_sure.corrected_level;
                hit_sup += PredictionSet(estimates[i], op, loo_sup.q_hat).contains(dataset.truths[i]);
                hit_sure +=
                    PredictionSet(estimates[i], op, loo_sure.q_hat).contains(dataset.truths[i]);
            }
            row.coverage_supervised = fraction(hit_sup, m);
            row.coverage_sure = fraction(hit_sure, m);
        }
        result.curve.rows.push_back(row);
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const CirculantOperator op = build_operator(config.op);
    return evaluate(config, simulate_dataset(config, op));
}

std::string render_scores(const ExperimentResult& result) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < result.supervised_scores.size(); ++i) {
        const auto& s = result.sure_calibration.sure[i];
        rows.push_back({static_cast<double>(i), result.supervised_scores[i], s.value,
                        s.residual_term, s.divergence_term, s.divergence.value});
    }
    return render_table(
        {"sample_id", "supervised", "sure", "sure_residual", "sure_divergence_term", "divergence"},
        rows);
}

std::string render_sure_calibration(const ExperimentResult& result) {
    std::vector<std::vector<double>> rows;
    for (const auto& c : result.sure_calibration.per_alpha) {
        rows.push_back({c.alpha, c.corrected_level, static_cast<double>(c.rank),
                        static_cast<double>(c.sample_size), c.q_hat});
    }
    std::string text = render_table({"alpha", "corrected_level", "rank", "sample_size", "q_hat_sure"},
                                    rows);
    std::vector<std::vector<double>> values;
    for (std::size_t i = 0; i < result.sure_calibration.sure.size(); ++i) {
        values.push_back({static_cast<double>(i), result.sure_calibration.sure[i].value});
    }
    return text + render_table({"sample_id", "sure"}, values);
}

void write_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_coverage(dir / "coverage.csv", result.curve);
    write_text(dir / "scores.csv", render_scores(result));
    write_text(dir / "sure_calibration.csv", render_sure_calibration(result));

    std::vector<double> sure_values;
    for (const auto& s : result.sure_calibration.sure) sure_values.push_back(s.value);
    const Histogram h = shared_histogram(result.supervised_scores, sure_values);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        rows.push_back({h.edges[i], h.edges[i + 1], static_cast<double>(h.counts_a[i]),
                        static_cast<double>(h.counts_b[i])});
    }
    write_table(dir / "histogram.csv", {"bin_lo", "bin_hi", "count_supervised", "count_sure"}, rows);
    write_text(dir / "config_echo.json", config_to_json(config).dump(2) + "\n");
    plot_coverage(result.curve, dir / "coverage.svg");
    write_text(dir / "histogram.svg", render_histogram_svg(h));
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
    const auto data_dir = dir / "data";
    std::filesystem::create_directories(data_dir);
    for (std::size_t i = 0; i < dataset.truths.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "truth_%05zu.imgf", i);
        write_image(data_dir / name, dataset.truths[i]);
        std::snprintf(name, sizeof name, "measurement_%05zu.imgf", i);
        write_image(data_dir / name, dataset.measurements[i]);
    }
}

}  // namespace surecp
