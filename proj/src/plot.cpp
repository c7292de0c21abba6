#include "surecp/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "surecp/table.hpp"

namespace surecp {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 60.0;
constexpr double kPlot = kSize - 2.0 * kMargin;
constexpr const char* kSupervisedColor = "#1f77b4";
constexpr const char* kSureColor = "#ff7f0e";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double px(double unit_x) { return kMargin + unit_x * kPlot; }
double py(double unit_y) { return kSize - kMargin - unit_y * kPlot; }

std::string svg_open(const std::string& title) {
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" +
         num(kSize) + "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
         "\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(kSize / 2) + "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + title + "</text>\n";
    return s;
}

std::string axes(const std::string& x_label, const std::string& y_label, double x_lo, double x_hi,
                 double y_lo, double y_hi) {
    std::string s;
    s += "<g stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(1)) +
         "\" y2=\"" + num(py(0)) + "\"/>\n";
    s += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(0)) +
         "\" y2=\"" + num(py(1)) + "\"/>\n";
    s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double t = i / 5.0;
        s += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(t)) +
             "\" y2=\"" + num(py(0) + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(px(t)) + "\" y=\"" + num(py(0) + 18) +
             "\" text-anchor=\"middle\">" + label(x_lo + t * (x_hi - x_lo)) + "</text>\n";
        s += "<line x1=\"" + num(px(0) - 5) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(px(0)) +
             "\" y2=\"" + num(py(t)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(px(0) - 8) + "\" y=\"" + num(py(t) + 4) +
             "\" text-anchor=\"end\">" + label(y_lo + t * (y_hi - y_lo)) + "</text>\n";
    }
    s += "<text x=\"" + num(kSize / 2) + "\" y=\"" + num(kSize - 15) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + x_label + "</text>\n";
    s += "<text x=\"18\" y=\"" + num(kSize / 2) + "\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " + num(kSize / 2) + ")\">" + y_label + "</text>\n";
    s += "</g>\n";
    return s;
}

std::string legend(double x, double y) {
    std::string s = "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    const char* names[] = {"supervised", "SURE (self-supervised)"};
    const char* colors[] = {kSupervisedColor, kSureColor};
    for (int i = 0; i < 2; ++i) {
        const double yy = y + 18.0 * i;
        s += "<rect x=\"" + num(x) + "\" y=\"" + num(yy - 9) +
             "\" width=\"12\" height=\"12\" fill=\"" + colors[i] + "\" fill-opacity=\"0.7\"/>\n";
        s += "<text x=\"" + num(x + 18) + "\" y=\"" + num(yy + 1) + "\">" + names[i] + "</text>\n";
    }
    return s + "</g>\n";
}

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

// Linear interpolation between order statistics.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

const std::vector<std::string>& coverage_columns() {
    static const std::vector<std::string> columns = {
        "alpha",         "nominal",          "corrected_level", "coverage_supervised",
        "coverage_sure", "q_hat_supervised", "q_hat_sure"};
    return columns;
}

namespace {

std::vector<std::vector<double>> coverage_rows(const CoverageCurve& curve) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : curve.rows) {
        rows.push_back({r.alpha, r.nominal, r.corrected_level, r.coverage_supervised,
                        r.coverage_sure, r.q_hat_supervised, r.q_hat_sure});
    }
    return rows;
}

}  // namespace

void write_coverage(const std::filesystem::path& path, const CoverageCurve& curve) {
    write_table(path, coverage_columns(), coverage_rows(curve));
}

std::string render_coverage(const CoverageCurve& curve) {
    return render_table(coverage_columns(), coverage_rows(curve));
}

CoverageCurve read_coverage(const std::filesystem::path& path) {
    const Table table = read_table(path);
    CoverageCurve curve;
    const auto& cols = coverage_columns();
    std::vector<std::size_t> idx;
    for (const auto& name : cols) idx.push_back(table.column(name));
    for (const auto& row : table.rows) {
        curve.rows.push_back({row[idx[0]], row[idx[1]], row[idx[2]], row[idx[3]], row[idx[4]],
                              row[idx[5]], row[idx[6]]});
    }
    return curve;
}

Histogram shared_histogram(std::span<const double> a, std::span<const double> b,
                           std::size_t min_bins, std::size_t max_bins) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("shared_histogram: both samples must be non-empty");
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    double lo = pooled.front();
    double hi = pooled.back();
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double iqr = quantile_sorted(pooled, 0.75) - quantile_sorted(pooled, 0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));
    std::size_t bins = min_bins;
    if (width > 0.0) {
        const double wanted = std::ceil((hi - lo) / width);
        bins = static_cast<std::size_t>(std::clamp(wanted, static_cast<double>(min_bins),
                                                   static_cast<double>(max_bins)));
    }

    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    h.edges.back() = hi;
    auto fill = [&](std::span<const double> sample, std::vector<std::size_t>& counts) {
        counts.assign(bins, 0);
        for (double v : sample) {
            auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
            counts[std::min(k, bins - 1)]++;
        }
    };
    fill(a, h.counts_a);
    fill(b, h.counts_b);
    return h;
}

std::string render_coverage_svg(const CoverageCurve& curve) {
    if (curve.rows.empty()) {
        throw std::invalid_argument("plot_coverage: empty curve");
    }
    std::string s = svg_open("Empirical coverage");
    s += axes("desired confidence level 1 - alpha", "empirical coverage", 0, 1, 0, 1);
    s += "<line x1=\"" + num(px(0)) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(px(1)) +
         "\" y2=\"" + num(py(1)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

    auto series = [&](auto pick, const char* color) {
        std::string points;
        std::string markers;
        for (const auto& r : curve.rows) {
            const double x = px(std::clamp(r.nominal, 0.0, 1.0));
            const double y = py(std::clamp(pick(r), 0.0, 1.0));
            if (!points.empty()) points += ' ';
            points += num(x) + "," + num(y);
            markers += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"" +
                       color + "\"/>\n";
        }
        return "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n" + markers;
    };
    s += series([](const CoverageRow& r) { return r.coverage_supervised; }, kSupervisedColor);
    s += series([](const CoverageRow& r) { return r.coverage_sure; }, kSureColor);
    s += legend(px(0) + 12, py(1) + 14);
    return s + "</svg>\n";
}

void plot_coverage(const CoverageCurve& curve, const std::filesystem::path& path) {
    write_text(path, render_coverage_svg(curve));
}

std::string render_histogram_svg(const Histogram& h) {
    std::size_t peak = 1;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        peak = std::max({peak, h.counts_a[i], h.counts_b[i]});
    }
    const double lo = h.edges.front();
    const double hi = h.edges.back();
    std::string s = svg_open("Calibration score histograms");
    s += axes("score s(x, y) / SURE(y)", "count", lo, hi, 0, static_cast<double>(peak));
    auto bars = [&](const std::vector<std::size_t>& counts, const char* color) {
        std::string out = "<g fill=\"" + std::string(color) + "\" fill-opacity=\"0.5\">\n";
        for (std::size_t i = 0; i < h.bins(); ++i) {
            if (counts[i] == 0) continue;
            const double x0 = px((h.edges[i] - lo) / (hi - lo));
            const double x1 = px((h.edges[i + 1] - lo) / (hi - lo));
            const double top = py(static_cast<double>(counts[i]) / static_cast<double>(peak));
            out += "<rect x=\"" + num(x0) + "\" y=\"" + num(top) + "\" width=\"" +
                   num(x1 - x0) + "\" height=\"" + num(py(0) - top) + "\"/>\n";
        }
        return out + "</g>\n";
    };
    s += bars(h.counts_a, kSupervisedColor);
    s += bars(h.counts_b, kSureColor);
    s += legend(px(0.55), py(1) + 14);
    return s + "</svg>\n";
}

void plot_histogram(std::span<const double> scores_supervised, std::span<const double> scores_sure,
                    const std::filesystem::path& path) {
    write_text(path, render_histogram_svg(shared_histogram(scores_supervised, scores_sure)));
}

}  // namespace surecp
