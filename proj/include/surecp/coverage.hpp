#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace surecp {

struct CoverageRow {
    double alpha = 0.0;
    double nominal = 0.0;  // 1 - alpha
    double corrected_level = 0.0;
    double coverage_supervised = 0.0;
    double coverage_sure = 0.0;
    double q_hat_supervised = 0.0;
    double q_hat_sure = 0.0;
};

/// Desired confidence level vs empirical coverage, one row per grid alpha.
struct CoverageCurve {
    std::vector<CoverageRow> rows;
};

const std::vector<std::string>& coverage_columns();

void write_coverage(const std::filesystem::path& path, const CoverageCurve& curve);
std::string render_coverage(const CoverageCurve& curve);
CoverageCurve read_coverage(const std::filesystem::path& path);

}  // namespace surecp
