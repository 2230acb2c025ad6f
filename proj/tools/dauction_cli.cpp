// dauction: command-line front end for clearing order files, simulating
// markets and running the experiment suites.

#include "dauction/errors.hpp"
#include "dauction/experiments.hpp"
#include "dauction/market.hpp"
#include "dauction/matching.hpp"
#include "dauction/metrics.hpp"
#include "dauction/order_file.hpp"
#include "dauction/pricing.hpp"
#include "dauction/seeding.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

namespace {

using namespace dauction;

int run_clear(const std::string& policy_name, double theta, const std::string& pricing_name,
              const std::string& order_file) {
    const Policy policy = parse_policy(policy_name);
    const PricingRule pricing = parse_pricing_rule(pricing_name);
    const OrderBook book = normalize(OrderBook(read_orders(order_file)));

    const ClearingResult r = clear(book, policy, Theta{theta});
    const auto trades = price_matching(r.matching, pricing, r.price_interval);

    std::cout << "bid_id,ask_id,bid_price,ask_price,trade_price,qty\n";
    for (std::size_t i = 0; i < trades.size(); ++i) {
        const auto& pair = r.matching.pairs[i];
        std::cout << trades[i].bid_id.to_string() << ',' << trades[i].ask_id.to_string() << ',' << pair.bid.price
                  << ',' << pair.ask.price << ',' << trades[i].price << ',' << trades[i].quantity << '\n';
    }
    std::cout << "q_me,q_mv,q_target,reported_profit\n";
    std::cout << r.q_me << ',' << r.q_mv << ',' << r.q_target << ',' << reported_profit(r.matching) << '\n';
    return 0;
}

ValueProfile profile_from_file(const std::string& path) {
    ValueProfile p;
    for (const auto& s : read_orders(path)) {
        if (s.quantity != 1) throw ParseError(path + ": every trader is entitled to exactly one unit per day");
        (s.side == Side::Buy ? p.buyers : p.sellers).push_back(TraderValue{s.trader, s.price, 1});
    }
    return p;
}

struct SimulateArgs {
    std::string mechanism = "cda";
    double theta = 0.0;
    std::string strategy = "tt";
    std::string pricing = "midpoint";
    int traders = 20;
    int rounds = 1;
    int days = 1;
    std::uint64_t seed = 1;
    std::string values_file;
    std::string trades_file;
};

int run_simulate(const SimulateArgs& a) {
    const PricingRule pricing = parse_pricing_rule(a.pricing);
    MechanismSpec mechanism = a.mechanism == "cda" ? MechanismSpec::cda(pricing)
                                                   : MechanismSpec::clearing_house(Theta{a.theta}, pricing);
    const StrategySpec strategy = StrategySpec::parse(a.strategy);

    ExperimentConfig defaults;
    const ValueProfile profile = a.values_file.empty()
                                     ? draw_profile(a.traders, defaults.value_min, defaults.value_max,
                                                    derive_seed(a.seed, {1}))
                                     : profile_from_file(a.values_file);
    Market market = Market::homogeneous(mechanism, profile, strategy, derive_seed(a.seed, {2}));

    std::optional<std::ofstream> trade_log;
    if (!a.trades_file.empty()) {
        trade_log.emplace(a.trades_file);
        if (!*trade_log) throw AuctionError("cannot write " + a.trades_file);
        *trade_log << "day,round,bid_id,ask_id,buyer,seller,price,qty\n";
    }

    std::cout << "mechanism,strategy,theta,day,round_count,run,volume,pe,pa,ea\n";
    for (int day = 0; day < a.days; ++day) {
        const DayResult r = market.run_day(day, a.rounds);
        std::cout << mechanism.label() << ',' << strategy.label() << ',' << mechanism.theta.value() << ',' << day << ','
                  << a.rounds << ",0," << r.report.volume << ',' << r.report.equilibrium_profit << ','
                  << r.report.actual_profit << ',';
        if (r.report.efficiency) std::cout << *r.report.efficiency * 100.0;
        std::cout << '\n';
        if (trade_log) {
            for (const auto& t : r.trades) {
                *trade_log << t.day << ',' << t.round << ',' << t.bid_id.to_string() << ',' << t.ask_id.to_string()
                           << ',' << t.buyer.value << ',' << t.seller.value << ',' << t.price << ',' << t.quantity
                           << '\n';
            }
        }
    }
    return 0;
}

int run_experiment(const std::string& suite, const std::string& config_file, const std::string& out_dir,
                   unsigned jobs, bool raw, bool check) {
    const bool baseline = suite == "baseline";
    ExperimentConfig cfg = baseline ? ExperimentConfig::baseline_defaults() : ExperimentConfig::multiround_defaults();
    if (!config_file.empty()) cfg = ExperimentConfig::load(config_file, cfg);
    cfg.validate();

    const ExperimentTable table = baseline ? run_baseline_suite(cfg, jobs) : run_multiround_suite(cfg, jobs);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    emit_csv(table, dir / (suite + ".csv"), raw);
    {
        std::ofstream meta(dir / (suite + ".meta.json"));
        meta << "{\n  \"efficiency_aggregation\": \"mean of per-run ratios\",\n  \"efficiency_unit\": \"percent\",\n"
             << "  \"csv_mode\": \"" << (raw ? "raw" : "aggregate") << "\",\n  \"config\": " << cfg.to_json_text()
             << "\n}\n";
    }
    for (const auto& p : emit_plots(table, dir)) std::cerr << "wrote " << p.string() << '\n';
    std::cerr << "wrote " << (dir / (suite + ".csv")).string() << '\n';

    if (!check) return 0;
    const auto checks = baseline ? check_baseline(table) : check_multiround(table);
    bool ok = true;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " :: " << c.detail << '\n';
        ok = ok && c.passed;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double-auction clearing, market simulation and experiments"};
    app.require_subcommand(1);

    std::string policy = "mv";
    double theta = 0.0;
    std::string pricing = "midpoint";
    std::string order_file;
    auto* clear_cmd = app.add_subcommand("clear", "Clear an order file and print the trades as CSV");
    clear_cmd->add_option("--policy", policy, "me | mv | mtheta")->check(CLI::IsMember({"me", "mv", "mtheta"}));
    clear_cmd->add_option("--theta", theta, "Mixing parameter for mtheta, in [-1, 1]")->check(CLI::Range(-1.0, 1.0));
    clear_cmd->add_option("--pricing", pricing, "uniform | midpoint")->check(CLI::IsMember({"uniform", "midpoint"}));
    clear_cmd->add_option("orderfile", order_file, "BID|ASK <price> <quantity> [trader_id] per line")
        ->required()
        ->check(CLI::ExistingFile);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run one market and print per-day metrics as CSV");
    sim_cmd->add_option("--mechanism", sim.mechanism, "cda | ch")->check(CLI::IsMember({"cda", "ch"}));
    sim_cmd->add_option("--theta", sim.theta, "Clearing-house theta in [-1, 1]")->check(CLI::Range(-1.0, 1.0));
    sim_cmd->add_option("--strategy", sim.strategy, "tt | ps:<delta> | zic | gd[:memory,grid]");
    sim_cmd->add_option("--pricing", sim.pricing, "uniform | midpoint")->check(CLI::IsMember({"uniform", "midpoint"}));
    sim_cmd->add_option("--traders", sim.traders, "Number of traders, half buyers and half sellers")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--rounds", sim.rounds, "Rounds per day")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--days", sim.days, "Trading days")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "Base random seed");
    sim_cmd->add_option("--values", sim.values_file, "Private values as BID|ASK <value> 1 <trader_id> lines")
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("--trades", sim.trades_file, "Write a per-trade log to this CSV file");

    std::string suite;
    std::string config_file;
    std::string out_dir = "results";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool raw = false;
    bool check = false;
    auto* exp_cmd = app.add_subcommand("experiment", "Run the baseline or multi-round experiment suite");
    exp_cmd->add_option("suite", suite, "baseline | multiround")
        ->required()
        ->check(CLI::IsMember({"baseline", "multiround"}));
    exp_cmd->add_option("--config", config_file, "JSON experiment configuration")->check(CLI::ExistingFile);
    exp_cmd->add_option("--out", out_dir, "Output directory for CSV and SVG files");
    exp_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    exp_cmd->add_flag("--raw", raw, "One CSV row per run instead of per cell");
    exp_cmd->add_flag("--check", check, "Evaluate the trend assertions; exit 1 if any fails");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*clear_cmd) return run_clear(policy, theta, pricing, order_file);
        if (*sim_cmd) {
            if (sim.traders % 2 != 0 && sim.values_file.empty()) throw InvalidArgument("--traders must be even");
            return run_simulate(sim);
        }
        if (*exp_cmd) return run_experiment(suite, config_file, out_dir, jobs, raw, check);
    } catch (const AuctionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
