#include "surecp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace surecp {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: '" + where + "' must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("config: bad value for '") + key +
                                        "': " + e.what());
        }
    }
}

const char* backend_name(DivergenceBackend b) {
    return b == DivergenceBackend::exact ? "exact" : "hutchinson";
}

const char* probe_name(ProbeDistribution p) {
    return p == ProbeDistribution::normal ? "normal" : "rademacher";
}

}  // namespace

std::vector<double> ExperimentConfig::default_alpha_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
    return grid;
}

void ExperimentConfig::validate() const {
    if (problem != "denoise" && problem != "deblur") {
        throw std::invalid_argument("config: problem must be 'denoise' or 'deblur'");
    }
    if (source.type != "synthetic" && source.type != "pgm_directory") {
        throw std::invalid_argument("config: image_source.type must be 'synthetic' or 'pgm_directory'");
    }
    if (source.type == "synthetic" && !(source.correlation_length > 0.0)) {
        throw std::invalid_argument("config: correlation_length must be positive");
    }
    if (source.correlation_length_max != 0.0 &&
        !(source.correlation_length_max >= source.correlation_length)) {
        throw std::invalid_argument("config: correlation_length_max must be >= correlation_length");
    }
    if (source.type == "pgm_directory" && source.directory.empty()) {
        throw std::invalid_argument("config: image_source.directory is required for pgm_directory");
    }
    if (width < 8 || height < 8) {
        throw std::invalid_argument("config: image size must be at least 8x8");
    }
    if (op.width != width || op.height != height) {
        throw std::invalid_argument("config: operator size differs from image size");
    }
    if (op.sigma != noise_sigma) {
        throw std::invalid_argument("config: operator sigma differs from noise_sigma");
    }
    if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma)) {
        throw std::invalid_argument("config: noise_sigma must be positive");
    }
    if (problem == "denoise" && op.type != "identity") {
        throw std::invalid_argument("config: denoise requires the identity operator");
    }
    if (problem == "deblur" && op.type != "gaussian_blur") {
        throw std::invalid_argument("config: deblur requires the gaussian_blur operator");
    }
    if (m_calibration < 2) {
        throw std::invalid_argument("config: m_calibration must be at least 2");
    }
    if (n_test < 1) {
        throw std::invalid_argument("config: n_test must be at least 1");
    }
    if (alpha_grid.empty()) {
        throw std::invalid_argument("config: alpha_grid is empty");
    }
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0 && alpha_grid[i] < 1.0)) {
            throw std::invalid_argument("config: alpha_grid values must lie in (0, 1)");
        }
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1])) {
            throw std::invalid_argument("config: alpha_grid must be strictly increasing");
        }
    }
    if (sure.probes < 1) {
        throw std::invalid_argument("config: sure.probes must be at least 1");
    }
    if (!(sure.fd_step > 0.0)) {
        throw std::invalid_argument("config: sure.fd_step must be positive");
    }
}

ExperimentConfig config_from_json(const json& j) {
    reject_unknown(j,
                   {"problem", "image_source", "width", "height", "operator", "noise_sigma",
                    "estimator", "m_calibration", "n_test", "alpha_grid", "sure", "seed",
                    "output_dir", "leave_one_out", "threads"},
                   "config");
    ExperimentConfig c;
    read(j, "problem", c.problem);
    read(j, "width", c.width);
    read(j, "height", c.height);
    read(j, "noise_sigma", c.noise_sigma);
    read(j, "m_calibration", c.m_calibration);
    read(j, "n_test", c.n_test);
    read(j, "alpha_grid", c.alpha_grid);
    read(j, "seed", c.seed.value);
    read(j, "leave_one_out", c.leave_one_out);
    read(j, "threads", c.threads);
    if (j.contains("output_dir")) {
        c.output_dir = j.at("output_dir").get<std::string>();
    }

    if (j.contains("image_source")) {
        const auto& s = j.at("image_source");
        reject_unknown(s, {"type", "correlation_length", "correlation_length_max", "directory"},
                       "image_source");
        read(s, "type", c.source.type);
        read(s, "correlation_length", c.source.correlation_length);
        read(s, "correlation_length_max", c.source.correlation_length_max);
        if (s.contains("directory")) c.source.directory = s.at("directory").get<std::string>();
    }

    c.op.width = c.width;
    c.op.height = c.height;
    c.op.sigma = c.noise_sigma;
    c.op.type = c.problem == "deblur" ? "gaussian_blur" : "identity";
    if (j.contains("operator")) {
        const auto& o = j.at("operator");
        reject_unknown(o,
                       {"type", "width", "height", "bandwidth_major", "bandwidth_minor", "angle",
                        "rank_floor", "sigma"},
                       "operator");
        read(o, "type", c.op.type);
        read(o, "width", c.op.width);
        read(o, "height", c.op.height);
        read(o, "bandwidth_major", c.op.bandwidth_major);
        read(o, "bandwidth_minor", c.op.bandwidth_minor);
        read(o, "angle", c.op.angle);
        read(o, "rank_floor", c.op.rank_floor);
        read(o, "sigma", c.op.sigma);
    }

    if (j.contains("estimator")) {
        const auto& e = j.at("estimator");
        reject_unknown(e,
                       {"name", "threshold", "prior_power", "prior_cutoff", "prior_exponent",
                        "degree"},
                       "estimator");
        read(e, "name", c.estimator.name);
        read(e, "threshold", c.estimator.threshold);
        read(e, "prior_power", c.estimator.prior.p0);
        read(e, "prior_cutoff", c.estimator.prior.cutoff);
        read(e, "prior_exponent", c.estimator.prior.exponent);
        read(e, "degree", c.estimator.degree);
    }

    if (j.contains("sure")) {
        const auto& s = j.at("sure");
        reject_unknown(s, {"backend", "probes", "fd_step", "probe_distribution"}, "sure");
        std::string backend = backend_name(c.sure.backend);
        std::string probe = probe_name(c.sure.probe_distribution);
        read(s, "backend", backend);
        read(s, "probes", c.sure.probes);
        read(s, "fd_step", c.sure.fd_step);
        read(s, "probe_distribution", probe);
        if (backend == "exact") {
            c.sure.backend = DivergenceBackend::exact;
        } else if (backend == "hutchinson") {
            c.sure.backend = DivergenceBackend::hutchinson;
        } else {
            throw std::invalid_argument("config: sure.backend must be 'exact' or 'hutchinson'");
        }
        if (probe == "normal") {
            c.sure.probe_distribution = ProbeDistribution::normal;
        } else if (probe == "rademacher") {
            c.sure.probe_distribution = ProbeDistribution::rademacher;
        } else {
            throw std::invalid_argument(
                "config: sure.probe_distribution must be 'normal' or 'rademacher'");
        }
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["problem"] = c.problem;
    j["image_source"] = {{"type", c.source.type},
                         {"correlation_length", c.source.correlation_length},
                         {"correlation_length_max", c.source.correlation_length_max},
                         {"directory", c.source.directory.string()}};
    j["width"] = c.width;
    j["height"] = c.height;
    j["operator"] = {{"type", c.op.type},
                     {"width", c.op.width},
                     {"height", c.op.height},
                     {"bandwidth_major", c.op.bandwidth_major},
                     {"bandwidth_minor", c.op.bandwidth_minor},
                     {"angle", c.op.angle},
                     {"rank_floor", c.op.rank_floor},
                     {"sigma", c.op.sigma}};
    j["noise_sigma"] = c.noise_sigma;
    j["estimator"] = {{"name", c.estimator.name},
                      {"threshold", c.estimator.threshold},
                      {"prior_power", c.estimator.prior.p0},
                      {"prior_cutoff", c.estimator.prior.cutoff},
                      {"prior_exponent", c.estimator.prior.exponent},
                      {"degree", c.estimator.degree}};
    j["m_calibration"] = c.m_calibration;
    j["n_test"] = c.n_test;
    j["alpha_grid"] = c.alpha_grid;
    j["sure"] = {{"backend", backend_name(c.sure.backend)},
                 {"probes", c.sure.probes},
                 {"fd_step", c.sure.fd_step},
                 {"probe_distribution", probe_name(c.sure.probe_distribution)}};
    j["seed"] = c.seed.value;
    j["output_dir"] = c.output_dir.string();
    j["leave_one_out"] = c.leave_one_out;
    j["threads"] = c.threads;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config " + path.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace surecp
