#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "surecp/coverage.hpp"

namespace surecp {

/// Two samples binned on shared edges.
struct Histogram {
    std::vector<double> edges;  // bins + 1 entries
    std::vector<std::size_t> counts_a;
    std::vector<std::size_t> counts_b;

    std::size_t bins() const { return counts_a.size(); }
};

/// Freedman-Diaconis width 2 IQR n^(-1/3) on the pooled sample, at least
/// `min_bins` and at most `max_bins` bins spanning [min, max].
/// Throws std::invalid_argument if either sample is empty.
Histogram shared_histogram(std::span<const double> a, std::span<const double> b,
                           std::size_t min_bins = 10, std::size_t max_bins = 200);

/// Self-contained SVG: y = x reference diagonal, supervised and SURE coverage
/// polylines with markers, axes on [0, 1]. Throws std::invalid_argument on an
/// empty curve.
std::string render_coverage_svg(const CoverageCurve& curve);
void plot_coverage(const CoverageCurve& curve, const std::filesystem::path& path);

/// Overlaid semi-transparent histograms of the supervised and SURE scores.
std::string render_histogram_svg(const Histogram& histogram);
void plot_histogram(std::span<const double> scores_supervised, std::span<const double> scores_sure,
                    const std::filesystem::path& path);

}  // namespace surecp
