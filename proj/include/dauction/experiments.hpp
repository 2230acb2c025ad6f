#pragma once

#include "dauction/core.hpp"
#include "dauction/market.hpp"
#include "dauction/pricing.hpp"
#include "dauction/traders.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dauction {

struct ExperimentConfig {
    /// Mechanism specs as accepted by MechanismSpec::parse.
    std::vector<std::string> mechanisms;
    /// Strategy specs as accepted by StrategySpec::parse.
    std::vector<std::string> strategies;
    /// Total traders, split evenly between buyers and sellers.
    int traders = 20;
    Money value_min = Money::from_units(50);
    Money value_max = Money::from_units(150);
    int repetitions = 100;
    std::vector<int> rounds;
    std::uint64_t base_seed = 2013;
    PricingRule pricing = PricingRule::PairMidpoint;

    /// Five mechanisms x seven strategies, one round.
    static ExperimentConfig baseline_defaults();
    /// CDA, CH and MV x seven strategies, 1..10 rounds.
    static ExperimentConfig multiround_defaults();

    /// Overlays the fields present in a JSON document on `defaults`.
    static ExperimentConfig from_json_text(const std::string& text, ExperimentConfig defaults);
    static ExperimentConfig load(const std::filesystem::path& path, ExperimentConfig defaults);
    std::string to_json_text() const;

    /// Throws InvalidArgument on an empty or inconsistent configuration.
    void validate() const;
};

/// Outcome of one seeded market run.
struct RunRecord {
    std::string mechanism;
    std::string strategy;
    double theta = 0.0;
    int day = 0;
    int rounds = 1;
    int run = 0;
    Quantity volume = 0;
    Money pe;
    Money pa;
    std::optional<double> ea;
};

/// Statistics of one (mechanism, strategy, rounds) cell over all repetitions.
struct AggregateRow {
    std::string mechanism;
    std::string strategy;
    double theta = 0.0;
    int rounds = 1;
    int runs = 0;
    double volume_mean = 0.0;
    double volume_sd = 0.0;
    double volume_min = 0.0;
    double volume_max = 0.0;
    double pe_mean = 0.0;
    double pa_mean = 0.0;
    /// Mean and sd of per-run efficiency ratios over runs where it is defined.
    double ea_mean = 0.0;
    double ea_sd = 0.0;
    int ea_runs = 0;

    double volume_se() const;
    double ea_se() const;
};

struct ExperimentTable {
    std::vector<AggregateRow> rows;
    std::vector<RunRecord> runs;

    /// Throws InvalidArgument when the cell is absent.
    const AggregateRow& at(const std::string& mechanism, const std::string& strategy, int rounds) const;
};

/// Seed of run `run` in the cell keyed by (mechanism, strategy, rounds).
std::uint64_t run_seed(std::uint64_t base_seed, const std::string& mechanism, const std::string& strategy, int rounds,
                       int run);

/// Draws a fresh value profile (buyers get ids 1..n/2, sellers the rest).
ValueProfile draw_profile(int traders, Money lo, Money hi, std::uint64_t seed);

/// One market run: a single day of `rounds` rounds on a freshly drawn profile.
RunRecord run_once(const MechanismSpec& mechanism, const StrategySpec& strategy, int rounds, const ExperimentConfig& cfg,
                   int run);

/// Runs every cell of the configuration. `jobs` worker threads; results are
/// identical for any job count.
ExperimentTable run_suite(const ExperimentConfig& cfg, unsigned jobs = 1);
/// Requires rounds == {1}.
ExperimentTable run_baseline_suite(const ExperimentConfig& cfg, unsigned jobs = 1);
ExperimentTable run_multiround_suite(const ExperimentConfig& cfg, unsigned jobs = 1);

/// Aggregated CSV (one row per cell) or raw CSV (one row per run).
void emit_csv(const ExperimentTable& table, const std::filesystem::path& path, bool raw);
/// Bar charts per metric when the table has a single round count, otherwise
/// one line chart per (mechanism, metric) against rounds. Returns files written.
std::vector<std::filesystem::path> emit_plots(const ExperimentTable& table, const std::filesystem::path& dir);

struct TrendCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Trend assertions over the single-round table, at 3 standard errors.
std::vector<TrendCheck> check_baseline(const ExperimentTable& table);
/// Trend assertions over the rounds sweep, at 3 standard errors.
std::vector<TrendCheck> check_multiround(const ExperimentTable& table);

} // namespace dauction
