#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "surecp/config.hpp"
#include "surecp/experiment.hpp"
#include "surecp/plot.hpp"

using namespace surecp;
using nlohmann::json;

namespace {

// Minimal XML well-formedness: balanced tags, quoted attributes, no stray '<'.
bool well_formed_xml(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while ((i = text.find('<', i)) != std::string::npos) {
        const std::size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
        if (tag.find('<') != std::string::npos) return false;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.back() == '/';
        const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.width = 16;
    c.height = 16;
    c.op.width = 16;
    c.op.height = 16;
    c.source.correlation_length = 3.0;
    c.m_calibration = 60;
    c.n_test = 30;
    c.alpha_grid = {0.1, 0.5, 0.9};
    return c;
}

}  // namespace

TEST_CASE("config parsing is strict") {
    const json base = json::parse(R"({"problem": "denoise", "width": 32, "height": 32})");
    const auto c = config_from_json(base);
    CHECK(c.op.width == 32);
    CHECK(c.op.type == "identity");
    CHECK(c.alpha_grid.size() == 19);
    CHECK(c.alpha_grid.front() == doctest::Approx(0.05));

    json bad = base;
    bad["colour"] = true;
    CHECK_THROWS_WITH_AS(config_from_json(bad), doctest::Contains("colour"), std::invalid_argument);
    bad = base;
    bad["sure"] = {{"probes", 3}, {"step", 1e-3}};
    CHECK_THROWS_WITH_AS(config_from_json(bad), doctest::Contains("step"), std::invalid_argument);
    bad = base;
    bad["estimator"] = {{"name", "wiener"}, {"prior", 1.0}};
    CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    bad = base;
    bad["operator"] = {{"type", "gaussian_blur"}};
    CHECK_THROWS_WITH_AS(config_from_json(bad), doctest::Contains("identity"),
                         std::invalid_argument);
    bad = base;
    bad["operator"] = {{"sigma", 0.5}};
    CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    bad = base;
    bad["alpha_grid"] = {0.5, 0.1};
    CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
    bad = base;
    bad["m_calibration"] = "many";
    CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);

    const auto deblur = config_from_json(json::parse(R"({"problem": "deblur", "noise_sigma": 0.01})"));
    CHECK(deblur.op.type == "gaussian_blur");
    CHECK(deblur.op.sigma == 0.01);
}

TEST_CASE("config round trips through json") {
    ExperimentConfig c = small_config();
    c.sure.backend = DivergenceBackend::exact;
    c.estimator.name = "wiener";
    const auto back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("shipped configs load") {
    const std::filesystem::path root = SURECP_SOURCE_DIR;
    const auto d = load_config(root / "configs" / "denoise.json");
    CHECK(d.problem == "denoise");
    CHECK(d.noise_sigma == 0.1);
    const auto b = load_config(root / "configs" / "deblur.json");
    CHECK(b.op.type == "gaussian_blur");
    CHECK(b.noise_sigma == 0.01);
    CHECK(b.estimator.degree == 3);
}

TEST_CASE("shared histogram") {
    const std::vector<double> a = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    const auto same = shared_histogram(a, a);
    CHECK(same.counts_a == same.counts_b);
    CHECK(same.bins() >= 10);
    CHECK(same.edges.size() == same.bins() + 1);
    CHECK(same.edges.front() == 1.0);
    CHECK(same.edges.back() == 8.0);

    const std::vector<double> lo = {0.0, 0.1, 0.2};
    const std::vector<double> hi = {10.0, 10.1, 10.2};
    const auto split = shared_histogram(lo, hi);
    for (std::size_t i = 0; i < split.bins(); ++i) {
        CHECK((split.counts_a[i] == 0 || split.counts_b[i] == 0));
    }
    std::size_t total = 0;
    for (auto n : split.counts_a) total += n;
    CHECK(total == 3);

    const std::vector<double> flat = {2.0, 2.0};
    CHECK(shared_histogram(flat, flat).bins() >= 10);
    CHECK_THROWS_AS(shared_histogram(std::vector<double>{}, a), std::invalid_argument);
}

TEST_CASE("coverage svg") {
    CHECK_THROWS_AS(render_coverage_svg(CoverageCurve{}), std::invalid_argument);

    CoverageCurve one;
    one.rows.push_back({0.1, 0.9, 0.91, 0.92, 0.88, 0.01, 0.012});
    const std::string svg = render_coverage_svg(one);
    CHECK(well_formed_xml(svg));
    CHECK(count_of(svg, "<circle") == 2);

    CoverageCurve many;
    for (int i = 1; i < 20; ++i) {
        const double a = i / 20.0;
        many.rows.push_back({a, 1 - a, 1 - a, 1 - a, 1 - a, 0.1, 0.1});
    }
    const std::string svg2 = render_coverage_svg(many);
    CHECK(well_formed_xml(svg2));
    CHECK(count_of(svg2, "<circle") == 38);

    const std::vector<double> s = {0.1, 0.2, 0.3};
    CHECK(well_formed_xml(render_histogram_svg(shared_histogram(s, s))));
    CHECK_FALSE(well_formed_xml("<svg><g></svg>"));
}

TEST_CASE("coverage csv round trip") {
    CoverageCurve c;
    c.rows.push_back({0.05, 0.95, 0.96, 0.95, 0.945, 0.0123, INFINITY});
    const auto path = std::filesystem::temp_directory_path() / "surecp_cov.csv";
    write_coverage(path, c);
    const auto back = read_coverage(path);
    REQUIRE(back.rows.size() == 1);
    CHECK(back.rows[0].q_hat_sure == INFINITY);
    CHECK(back.rows[0].coverage_sure == 0.945);
}

TEST_CASE("small experiment is deterministic and thread-count independent") {
    ExperimentConfig c = small_config();
    c.threads = 1;
    const auto a = run_experiment(c);
    c.threads = 5;
    const auto b = run_experiment(c);
    CHECK(render_coverage(a.curve) == render_coverage(b.curve));
    CHECK(render_scores(a) == render_scores(b));
    CHECK(render_sure_calibration(a) == render_sure_calibration(b));

    c.seed = RngSeed{2};
    CHECK(render_scores(run_experiment(c)) != render_scores(a));
}

TEST_CASE("SURE outputs never read the truths") {
    const ExperimentConfig c = small_config();
    const auto op = build_operator(c.op);
    const Dataset clean = simulate_dataset(c, op);
    Dataset corrupted = clean;
    for (std::size_t i = 0; i < corrupted.truths.size(); ++i) {
        corrupted.truths[i] = oracle::random_image(16, 16, 999 + i, 5.0, -2.0);
    }
    const auto a = evaluate(c, clean);
    const auto b = evaluate(c, corrupted);
    CHECK(render_sure_calibration(a) == render_sure_calibration(b));
    CHECK(render_scores(a) != render_scores(b));
}

TEST_CASE("write_outputs produces every artifact") {
    const ExperimentConfig c = small_config();
    const auto result = run_experiment(c);
    const auto dir = std::filesystem::temp_directory_path() / "surecp_outputs";
    std::filesystem::remove_all(dir);
    write_outputs(c, result, dir);
    for (const char* f : {"coverage.csv", "scores.csv", "sure_calibration.csv", "histogram.csv",
                          "config_echo.json", "coverage.svg", "histogram.svg"}) {
        CHECK(std::filesystem::exists(dir / f));
    }
    CHECK(well_formed_xml(slurp(dir / "coverage.svg")));
    CHECK(well_formed_xml(slurp(dir / "histogram.svg")));
    CHECK(read_coverage(dir / "coverage.csv").rows.size() == 3);
    CHECK(config_from_json(json::parse(slurp(dir / "config_echo.json"))).m_calibration == 60);
}

TEST_CASE("pgm directory source") {
    const auto dir = std::filesystem::temp_directory_path() / "surecp_pgms";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    for (int i = 0; i < 4; ++i) {
        std::ofstream out(dir / ("img" + std::to_string(i) + ".pgm"), std::ios::binary);
        out << "P5\n20 20\n255\n";
        for (int p = 0; p < 400; ++p) out.put(char((p * 7 + i * 31) % 256));
    }
    ExperimentConfig c = small_config();
    c.source.type = "pgm_directory";
    c.source.directory = dir;
    c.m_calibration = 2;
    c.n_test = 2;
    const auto truths = load_truths(c);
    REQUIRE(truths.size() == 4);
    CHECK(truths[0].width() == 16);
    c.n_test = 3;
    CHECK_THROWS_WITH_AS(load_truths(c), doctest::Contains("needs 5"), std::invalid_argument);
}
