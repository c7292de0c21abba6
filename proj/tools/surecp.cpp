// surecp: SURE-calibrated conformal prediction experiments.
//
//   surecp run      --config exp.json [--seed N] [--loo] [--out DIR]
//   surecp gen-data --config exp.json [--seed N] [--out DIR]
//   surecp plot     --curve coverage.csv --out coverage.svg

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "surecp/config.hpp"
#include "surecp/experiment.hpp"
#include "surecp/plot.hpp"

namespace {

surecp::ExperimentConfig resolve(const std::string& path, std::optional<std::uint64_t> seed,
                                 bool loo, const std::string& out) {
    auto config = surecp::load_config(path);
    if (seed) config.seed = surecp::RngSeed{*seed};
    if (loo) config.leave_one_out = true;
    if (!out.empty()) config.output_dir = out;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-supervised conformal prediction calibrated with SURE"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool loo = false;
    std::string out_dir;

    auto* run = app.add_subcommand("run", "Calibrate (supervised and SURE) and evaluate coverage");
    run->add_option("--config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the master seed");
    run->add_flag("--loo", loo, "Leave-one-out quantiles on the calibration pool");
    run->add_option("--out", out_dir, "Override the output directory");

    auto* gen = app.add_subcommand("gen-data", "Write truth and measurement images");
    gen->add_option("--config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
    gen->add_option("--seed", seed, "Override the master seed");
    gen->add_option("--out", out_dir, "Override the output directory");

    std::string curve_path;
    std::string svg_path;
    auto* plot = app.add_subcommand("plot", "Render a coverage CSV as SVG");
    plot->add_option("--curve", curve_path, "coverage.csv")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", svg_path, "Output SVG")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto config = resolve(config_path, seed, loo, out_dir);
            const auto result = surecp::run_experiment(config);
            surecp::write_outputs(config, result, config.output_dir);
            std::printf("%-6s %-8s %-10s %-10s %-10s\n", "alpha", "nominal", "corrected",
                        "cov_sup", "cov_sure");
            for (const auto& r : result.curve.rows) {
                std::printf("%-6.3f %-8.3f %-10.4f %-10.3f %-10.3f\n", r.alpha, r.nominal,
                            r.corrected_level, r.coverage_supervised, r.coverage_sure);
            }
            std::printf("outputs written to %s\n", config.output_dir.string().c_str());
        } else if (*gen) {
            const auto config = resolve(config_path, seed, false, out_dir);
            const auto op = surecp::build_operator(config.op);
            surecp::write_dataset(surecp::simulate_dataset(config, op), config.output_dir);
            std::printf("wrote %zu pairs to %s/data\n", config.m_calibration + config.n_test,
                        config.output_dir.string().c_str());
        } else if (*plot) {
            surecp::plot_coverage(surecp::read_coverage(curve_path), svg_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
