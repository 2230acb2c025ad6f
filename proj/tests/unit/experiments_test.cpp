#include "dauction/errors.hpp"
#include "dauction/experiments.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace dauction;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_baseline() {
    ExperimentConfig c = ExperimentConfig::baseline_defaults();
    c.mechanisms = {"cda", "ch", "mv"};
    c.strategies = {"tt", "zic", "gd"};
    c.repetitions = 12;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dauction_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST(ExperimentConfig, DefaultsDescribeBothStudies) {
    const auto b = ExperimentConfig::baseline_defaults();
    EXPECT_EQ(b.mechanisms.size() * b.strategies.size(), 35u);
    EXPECT_EQ(b.rounds, std::vector<int>{1});
    EXPECT_EQ(b.traders, 20);
    EXPECT_EQ(b.repetitions, 100);
    EXPECT_EQ(b.value_min, Money::from_units(50));
    EXPECT_EQ(b.value_max, Money::from_units(150));
    const auto m = ExperimentConfig::multiround_defaults();
    EXPECT_EQ(m.mechanisms, (std::vector<std::string>{"cda", "ch", "mv"}));
    EXPECT_EQ(m.rounds.size(), 10u);
    EXPECT_EQ(m.rounds.front(), 1);
    EXPECT_EQ(m.rounds.back(), 10);
}

TEST(ExperimentConfig, JsonOverlaysDefaults) {
    const auto c = ExperimentConfig::from_json_text(
        R"({"repetitions": 7, "strategies": ["tt"], "value_max": 120.5, "pricing": "uniform"})",
        ExperimentConfig::baseline_defaults());
    EXPECT_EQ(c.repetitions, 7);
    EXPECT_EQ(c.strategies, std::vector<std::string>{"tt"});
    EXPECT_EQ(c.value_max, Money::from_ticks(12050));
    EXPECT_EQ(c.pricing, PricingRule::UniformMidOfInterval);
    EXPECT_EQ(c.mechanisms.size(), 5u);

    const auto round_trip = ExperimentConfig::from_json_text(c.to_json_text(), ExperimentConfig{});
    EXPECT_EQ(round_trip.to_json_text(), c.to_json_text());
}

TEST(ExperimentConfig, RejectsBadDocuments) {
    const auto d = ExperimentConfig::baseline_defaults();
    EXPECT_THROW(ExperimentConfig::from_json_text("{", d), ParseError);
    EXPECT_THROW(ExperimentConfig::from_json_text("[]", d), ParseError);
    EXPECT_THROW(ExperimentConfig::from_json_text(R"({"repetitons": 3})", d), ParseError);
    EXPECT_THROW(ExperimentConfig::from_json_text(R"({"traders": "many"})", d), ParseError);
    EXPECT_THROW(ExperimentConfig::load("/nonexistent/config.json", d), ParseError);
}

TEST(ExperimentConfig, EmptyConfigFailsBeforeAnyRun) {
    ExperimentConfig c = small_baseline();
    c.mechanisms.clear();
    EXPECT_THROW(run_suite(c), InvalidArgument);
    c = small_baseline();
    c.strategies.clear();
    EXPECT_THROW(run_suite(c), InvalidArgument);
    c = small_baseline();
    c.repetitions = 0;
    EXPECT_THROW(run_suite(c), InvalidArgument);
    c = small_baseline();
    c.traders = 7;
    EXPECT_THROW(run_suite(c), InvalidArgument);
    c = small_baseline();
    c.rounds = {1, 2};
    EXPECT_THROW(run_baseline_suite(c), InvalidArgument);
}

TEST(Experiments, DrawProfileSplitsTradersEvenly) {
    const auto p = draw_profile(20, Money::from_units(50), Money::from_units(150), 3);
    ASSERT_EQ(p.buyers.size(), 10u);
    ASSERT_EQ(p.sellers.size(), 10u);
    std::set<std::uint64_t> ids;
    for (const auto& t : p.buyers) {
        ids.insert(t.trader.value);
        EXPECT_GE(t.value, Money::from_units(50));
        EXPECT_LE(t.value, Money::from_units(150));
    }
    for (const auto& t : p.sellers) ids.insert(t.trader.value);
    EXPECT_EQ(ids.size(), 20u);
}

TEST(Experiments, SeedsDifferAcrossCellsAndRuns) {
    std::set<std::uint64_t> seeds;
    for (const char* m : {"CDA", "CH", "MV"}) {
        for (const char* s : {"tt", "zic"}) {
            for (int r : {1, 2}) {
                for (int run = 0; run < 50; ++run) seeds.insert(run_seed(2013, m, s, r, run));
            }
        }
    }
    EXPECT_EQ(seeds.size(), 3u * 2u * 2u * 50u);
}

TEST(Experiments, CellStatisticsAreConsistent) {
    const auto t = run_baseline_suite(small_baseline());
    ASSERT_EQ(t.rows.size(), 9u);
    ASSERT_EQ(t.runs.size(), 9u * 12u);
    for (const auto& r : t.rows) {
        EXPECT_EQ(r.runs, 12);
        EXPECT_GE(r.volume_mean, r.volume_min);
        EXPECT_LE(r.volume_mean, r.volume_max);
    }
    const auto& tt_ch = t.at("CH", "tt", 1);
    EXPECT_EQ(tt_ch.ea_runs, 12);
    EXPECT_DOUBLE_EQ(tt_ch.ea_mean, 1.0);
    for (const char* m : {"CDA", "CH", "MV"}) EXPECT_EQ(t.at(m, "gd", 1).volume_mean, 0.0);
    EXPECT_THROW(t.at("CH", "tt", 2), InvalidArgument);
}

TEST(Experiments, CsvRowCounts) {
    const auto dir = scratch("rows");
    const auto t = run_baseline_suite(small_baseline());
    emit_csv(t, dir / "agg.csv", false);
    emit_csv(t, dir / "raw.csv", true);
    EXPECT_EQ(line_count(dir / "agg.csv"), 1u + 9u);
    EXPECT_EQ(line_count(dir / "raw.csv"), 1u + 9u * 12u);
    EXPECT_EQ(slurp(dir / "raw.csv").substr(0, 55), "mechanism,strategy,theta,day,round_count,run,volume,pe,");
}

TEST(Experiments, RerunIsByteIdenticalAndThreadCountInvariant) {
    const auto dir = scratch("determinism");
    auto cfg = small_baseline();
    cfg.rounds = {1, 3};
    emit_csv(run_suite(cfg, 1), dir / "a.csv", true);
    emit_csv(run_suite(cfg, 1), dir / "b.csv", true);
    emit_csv(run_suite(cfg, 4), dir / "c.csv", true);
    emit_csv(run_suite(cfg, 3), dir / "d.csv", false);
    emit_csv(run_suite(cfg, 1), dir / "e.csv", false);
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "c.csv"));
    EXPECT_EQ(slurp(dir / "d.csv"), slurp(dir / "e.csv"));
}

TEST(Experiments, EmptyTableCannotBeWritten) {
    const auto dir = scratch("empty");
    EXPECT_THROW(emit_csv(ExperimentTable{}, dir / "x.csv", false), InvalidArgument);
    EXPECT_THROW(emit_plots(ExperimentTable{}, dir), InvalidArgument);
    const auto t = run_baseline_suite(small_baseline());
    EXPECT_THROW(emit_csv(t, "/nonexistent/dir/x.csv", false), AuctionError);
}

TEST(Experiments, PlotsOnePerMetric) {
    const auto dir = scratch("plots");
    const auto files = emit_plots(run_baseline_suite(small_baseline()), dir);
    ASSERT_EQ(files.size(), 2u);
    for (const auto& f : files) {
        ASSERT_TRUE(fs::exists(f));
        EXPECT_EQ(slurp(f).rfind("<svg", 0), 0u);
    }

    auto cfg = small_baseline();
    cfg.rounds = {1, 2, 3};
    cfg.repetitions = 3;
    const auto multi = emit_plots(run_multiround_suite(cfg), dir);
    EXPECT_EQ(multi.size(), 3u * 2u);
}

TEST(Experiments, TrendChecksReportEveryAssertion) {
    auto cfg = ExperimentConfig::baseline_defaults();
    cfg.repetitions = 10;
    const auto checks = check_baseline(run_baseline_suite(cfg));
    EXPECT_EQ(checks.size(), 6u);
    for (const auto& c : checks) {
        EXPECT_FALSE(c.name.empty());
        EXPECT_FALSE(c.detail.empty());
    }
}

TEST(Experiments, GdLearnsOnceItHasSeenARoundOfQuotes) {
    auto cfg = ExperimentConfig::multiround_defaults();
    cfg.strategies = {"gd"};
    cfg.rounds = {1, 3, 5};
    cfg.repetitions = 30;
    const auto t = run_multiround_suite(cfg);
    for (const char* m : {"CDA", "CH", "MV"}) {
        EXPECT_EQ(t.at(m, "gd", 1).volume_mean, 0.0);
        EXPECT_GT(t.at(m, "gd", 3).volume_mean, 0.0) << m;
        EXPECT_GT(t.at(m, "gd", 5).volume_mean, t.at(m, "gd", 3).volume_mean * 0.5) << m;
    }
}
