#include "dauction/experiments.hpp"

#include "dauction/errors.hpp"
#include "dauction/plots.hpp"
#include "dauction/seeding.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace dauction {

using nlohmann::json;

ExperimentConfig ExperimentConfig::baseline_defaults() {
    ExperimentConfig c;
    c.mechanisms = {"cda", "mtheta:-0.5", "ch", "mtheta:0.5", "mv"};
    c.strategies = {"tt", "ps:5", "ps:10", "ps:15", "ps:20", "zic", "gd"};
    c.rounds = {1};
    return c;
}

ExperimentConfig ExperimentConfig::multiround_defaults() {
    ExperimentConfig c = baseline_defaults();
    c.mechanisms = {"cda", "ch", "mv"};
    c.rounds.clear();
    for (int r = 1; r <= 10; ++r) c.rounds.push_back(r);
    return c;
}

namespace {

Money money_field(const json& v, const char* name) {
    if (v.is_string()) return Money::parse(v.get<std::string>());
    if (v.is_number_integer()) return Money::from_units(v.get<std::int64_t>());
    if (v.is_number()) return Money::from_ticks(std::llround(v.get<double>() * kPriceScale));
    throw ParseError(std::string("config field '") + name + "' must be a number");
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text, ExperimentConfig c) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    try {
        if (doc.contains("mechanisms")) c.mechanisms = doc["mechanisms"].get<std::vector<std::string>>();
        if (doc.contains("strategies")) c.strategies = doc["strategies"].get<std::vector<std::string>>();
        if (doc.contains("traders")) c.traders = doc["traders"].get<int>();
        if (doc.contains("value_min")) c.value_min = money_field(doc["value_min"], "value_min");
        if (doc.contains("value_max")) c.value_max = money_field(doc["value_max"], "value_max");
        if (doc.contains("repetitions")) c.repetitions = doc["repetitions"].get<int>();
        if (doc.contains("base_seed")) c.base_seed = doc["base_seed"].get<std::uint64_t>();
        if (doc.contains("pricing")) c.pricing = parse_pricing_rule(doc["pricing"].get<std::string>());
        if (doc.contains("rounds")) {
            const auto& r = doc["rounds"];
            c.rounds = r.is_array() ? r.get<std::vector<int>>() : std::vector<int>{r.get<int>()};
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad config field: ") + e.what());
    }
    for (const auto& [key, _] : doc.items()) {
        static const std::set<std::string> known{"mechanisms",  "strategies", "traders", "value_min", "value_max",
                                                 "repetitions", "base_seed",  "pricing", "rounds"};
        if (!known.contains(key)) throw ParseError("unknown config field '" + key + "'");
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path, ExperimentConfig defaults) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return from_json_text(text.str(), std::move(defaults));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string ExperimentConfig::to_json_text() const {
    json doc{{"mechanisms", mechanisms},
             {"strategies", strategies},
             {"traders", traders},
             {"value_min", value_min.to_string()},
             {"value_max", value_max.to_string()},
             {"repetitions", repetitions},
             {"rounds", rounds},
             {"base_seed", base_seed},
             {"pricing", std::string(to_string(pricing))}};
    return doc.dump(2);
}

void ExperimentConfig::validate() const {
    if (mechanisms.empty()) throw InvalidArgument("experiment config lists no mechanisms");
    if (strategies.empty()) throw InvalidArgument("experiment config lists no strategies");
    if (rounds.empty()) throw InvalidArgument("experiment config lists no round counts");
    if (repetitions < 1) throw InvalidArgument("repetitions must be at least 1");
    if (traders < 2 || traders % 2 != 0) throw InvalidArgument("traders must be a positive even number");
    if (value_min < Money{} || value_max < value_min) throw InvalidArgument("value range must satisfy 0 <= min <= max");
    for (int r : rounds) {
        if (r < 1) throw InvalidArgument("round counts must be at least 1");
    }
    for (const auto& m : mechanisms) MechanismSpec::parse(m, pricing);
    for (const auto& s : strategies) StrategySpec::parse(s);
}

double AggregateRow::volume_se() const { return runs > 0 ? volume_sd / std::sqrt(static_cast<double>(runs)) : 0.0; }
double AggregateRow::ea_se() const { return ea_runs > 0 ? ea_sd / std::sqrt(static_cast<double>(ea_runs)) : 0.0; }

const AggregateRow& ExperimentTable::at(const std::string& mechanism, const std::string& strategy, int rounds) const {
    for (const auto& r : rows) {
        if (r.mechanism == mechanism && r.strategy == strategy && r.rounds == rounds) return r;
    }
    throw InvalidArgument("no cell " + mechanism + "/" + strategy + "/" + std::to_string(rounds) + " in table");
}

std::uint64_t run_seed(std::uint64_t base_seed, const std::string& mechanism, const std::string& strategy, int rounds,
                       int run) {
    const std::string cell = mechanism + "|" + strategy + "|" + std::to_string(rounds);
    return derive_seed(base_seed, {stable_hash(cell), static_cast<std::uint64_t>(run)});
}

ValueProfile draw_profile(int traders, Money lo, Money hi, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_int_distribution<std::int64_t> value(lo.ticks, hi.ticks);
    ValueProfile p;
    const int half = traders / 2;
    for (int i = 0; i < half; ++i) {
        p.buyers.push_back(TraderValue{TraderId{static_cast<std::uint64_t>(i + 1)}, Money::from_ticks(value(rng)), 1});
    }
    for (int i = 0; i < traders - half; ++i) {
        p.sellers.push_back(
            TraderValue{TraderId{static_cast<std::uint64_t>(half + i + 1)}, Money::from_ticks(value(rng)), 1});
    }
    return p;
}

RunRecord run_once(const MechanismSpec& mechanism, const StrategySpec& strategy, int rounds, const ExperimentConfig& cfg,
                   int run) {
    const std::uint64_t seed = run_seed(cfg.base_seed, mechanism.label(), strategy.label(), rounds, run);
    const ValueProfile profile = draw_profile(cfg.traders, cfg.value_min, cfg.value_max, derive_seed(seed, {1}));
    Market market = Market::homogeneous(mechanism, profile, strategy, derive_seed(seed, {2}));
    const DayResult day = market.run_day(0, rounds);

    RunRecord rec;
    rec.mechanism = mechanism.label();
    rec.strategy = strategy.label();
    rec.theta = mechanism.theta.value();
    rec.day = day.day;
    rec.rounds = rounds;
    rec.run = run;
    rec.volume = day.report.volume;
    rec.pe = day.report.equilibrium_profit;
    rec.pa = day.report.actual_profit;
    rec.ea = day.report.efficiency;
    return rec;
}

namespace {

struct Cell {
    MechanismSpec mechanism;
    StrategySpec strategy;
    int rounds;
};

void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0.0;
    sd = 0.0;
    if (xs.empty()) return;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

AggregateRow aggregate(const Cell& cell, std::span<const RunRecord> runs) {
    AggregateRow row;
    row.mechanism = cell.mechanism.label();
    row.strategy = cell.strategy.label();
    row.theta = cell.mechanism.theta.value();
    row.rounds = cell.rounds;
    row.runs = static_cast<int>(runs.size());

    std::vector<double> volume, ea;
    double pe = 0.0, pa = 0.0;
    for (const auto& r : runs) {
        volume.push_back(static_cast<double>(r.volume));
        pe += r.pe.to_double();
        pa += r.pa.to_double();
        if (r.ea) ea.push_back(*r.ea);
    }
    mean_sd(volume, row.volume_mean, row.volume_sd);
    mean_sd(ea, row.ea_mean, row.ea_sd);
    row.ea_runs = static_cast<int>(ea.size());
    if (!volume.empty()) {
        row.volume_min = *std::min_element(volume.begin(), volume.end());
        row.volume_max = *std::max_element(volume.begin(), volume.end());
        row.pe_mean = pe / static_cast<double>(runs.size());
        row.pa_mean = pa / static_cast<double>(runs.size());
    }
    return row;
}

} // namespace

ExperimentTable run_suite(const ExperimentConfig& cfg, unsigned jobs) {
    cfg.validate();
    std::vector<Cell> cells;
    for (const auto& m : cfg.mechanisms) {
        for (const auto& s : cfg.strategies) {
            for (int r : cfg.rounds) cells.push_back(Cell{MechanismSpec::parse(m, cfg.pricing), StrategySpec::parse(s), r});
        }
    }

    const std::size_t reps = static_cast<std::size_t>(cfg.repetitions);
    const std::size_t total = cells.size() * reps;
    std::vector<RunRecord> runs(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                const Cell& c = cells[i / reps];
                runs[i] = run_once(c.mechanism, c.strategy, c.rounds, cfg, static_cast<int>(i % reps));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const unsigned n = std::max(1u, jobs);
        for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentTable table;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        table.rows.push_back(aggregate(cells[c], std::span<const RunRecord>(runs).subspan(c * reps, reps)));
    }
    table.runs = std::move(runs);
    return table;
}

ExperimentTable run_baseline_suite(const ExperimentConfig& cfg, unsigned jobs) {
    if (cfg.rounds != std::vector<int>{1}) throw InvalidArgument("the baseline suite runs exactly one round");
    return run_suite(cfg, jobs);
}

ExperimentTable run_multiround_suite(const ExperimentConfig& cfg, unsigned jobs) {
    return run_suite(cfg, jobs);
}

namespace {

std::string fixed(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string percent(const std::optional<double>& ratio) { return ratio ? fixed(*ratio * 100.0) : std::string{}; }

} // namespace

void emit_csv(const ExperimentTable& table, const std::filesystem::path& path, bool raw) {
    if (table.rows.empty()) throw InvalidArgument("nothing to write: experiment table is empty");
    std::ofstream out(path);
    if (!out) throw AuctionError("cannot write " + path.string());
    if (raw) {
        out << "mechanism,strategy,theta,day,round_count,run,volume,pe,pa,ea\n";
        for (const auto& r : table.runs) {
            out << r.mechanism << ',' << r.strategy << ',' << r.theta << ',' << r.day << ',' << r.rounds << ','
                << r.run << ',' << r.volume << ',' << r.pe << ',' << r.pa << ',' << percent(r.ea) << '\n';
        }
    } else {
        out << "mechanism,strategy,theta,round_count,runs,volume_mean,volume_sd,pe_mean,pa_mean,ea_mean,ea_sd,"
               "ea_runs\n";
        for (const auto& r : table.rows) {
            out << r.mechanism << ',' << r.strategy << ',' << r.theta << ',' << r.rounds << ',' << r.runs << ','
                << fixed(r.volume_mean) << ',' << fixed(r.volume_sd) << ',' << fixed(r.pe_mean) << ','
                << fixed(r.pa_mean) << ',' << fixed(r.ea_mean * 100.0) << ',' << fixed(r.ea_sd * 100.0) << ','
                << r.ea_runs << '\n';
        }
    }
    if (!out) throw AuctionError("failed writing " + path.string());
}

std::vector<std::filesystem::path> emit_plots(const ExperimentTable& table, const std::filesystem::path& dir) {
    if (table.rows.empty()) throw InvalidArgument("nothing to plot: experiment table is empty");
    std::filesystem::create_directories(dir);

    std::vector<std::string> mechanisms, strategies;
    std::vector<int> rounds;
    for (const auto& r : table.rows) {
        if (std::find(mechanisms.begin(), mechanisms.end(), r.mechanism) == mechanisms.end()) mechanisms.push_back(r.mechanism);
        if (std::find(strategies.begin(), strategies.end(), r.strategy) == strategies.end()) strategies.push_back(r.strategy);
        if (std::find(rounds.begin(), rounds.end(), r.rounds) == rounds.end()) rounds.push_back(r.rounds);
    }
    std::sort(rounds.begin(), rounds.end());

    struct Metric {
        const char* file;
        const char* label;
        double (*get)(const AggregateRow&);
    };
    const Metric metrics[] = {
        {"volume", "Trading volume", [](const AggregateRow& r) { return r.volume_mean; }},
        {"efficiency", "Allocative efficiency (%)", [](const AggregateRow& r) { return r.ea_mean * 100.0; }},
    };

    std::vector<std::filesystem::path> written;
    if (rounds.size() == 1) {
        for (const auto& m : metrics) {
            std::vector<plots::Series> series;
            for (const auto& mech : mechanisms) {
                plots::Series s{mech, {}};
                for (const auto& strat : strategies) s.values.push_back(m.get(table.at(mech, strat, rounds[0])));
                series.push_back(std::move(s));
            }
            const auto path = dir / (std::string("baseline_") + m.file + ".svg");
            plots::write_bar_chart(path, m.label, m.label, strategies, series);
            written.push_back(path);
        }
        return written;
    }

    const std::vector<double> xs(rounds.begin(), rounds.end());
    for (const auto& mech : mechanisms) {
        for (const auto& m : metrics) {
            std::vector<plots::Series> series;
            for (const auto& strat : strategies) {
                plots::Series s{strat, {}};
                for (int r : rounds) s.values.push_back(m.get(table.at(mech, strat, r)));
                series.push_back(std::move(s));
            }
            const auto path = dir / ("multiround_" + mech + "_" + m.file + ".svg");
            plots::write_line_chart(path, std::string(m.label) + " - " + mech, "rounds", m.label, xs, series);
            written.push_back(path);
        }
    }
    return written;
}

namespace {

constexpr double kConfidence = 3.0;

double joint_se(double a, double b) { return std::sqrt(a * a + b * b); }

/// lhs is not significantly below rhs.
bool not_below(double lhs, double lhs_se, double rhs, double rhs_se) {
    return lhs >= rhs - kConfidence * joint_se(lhs_se, rhs_se);
}

/// lhs is significantly above rhs.
bool clearly_above(double lhs, double lhs_se, double rhs, double rhs_se) {
    return lhs - rhs > kConfidence * joint_se(lhs_se, rhs_se);
}

std::string describe(const AggregateRow& r, bool efficiency) {
    std::ostringstream os;
    os << r.mechanism << '/' << r.strategy << "@" << r.rounds << '=';
    if (efficiency) {
        os << std::setprecision(4) << r.ea_mean * 100.0 << "%+-" << r.ea_se() * 100.0;
    } else {
        os << std::setprecision(4) << r.volume_mean << "+-" << r.volume_se();
    }
    return os.str();
}

struct Collector {
    TrendCheck check;
    explicit Collector(std::string name) { check.name = std::move(name); check.passed = true; }
    void fail(const std::string& why) {
        check.passed = false;
        if (!check.detail.empty()) check.detail += "; ";
        check.detail += why;
    }
    TrendCheck done(std::string ok_detail) {
        if (check.passed) check.detail = std::move(ok_detail);
        return check;
    }
};

std::vector<std::string> strategies_in(const ExperimentTable& t) {
    std::vector<std::string> out;
    for (const auto& r : t.rows) {
        if (std::find(out.begin(), out.end(), r.strategy) == out.end()) out.push_back(r.strategy);
    }
    return out;
}

std::vector<std::string> mechanisms_in(const ExperimentTable& t) {
    std::vector<std::string> out;
    for (const auto& r : t.rows) {
        if (std::find(out.begin(), out.end(), r.mechanism) == out.end()) out.push_back(r.mechanism);
    }
    return out;
}

bool has_mechanism(const ExperimentTable& t, const std::string& m) {
    return std::any_of(t.rows.begin(), t.rows.end(), [&](const AggregateRow& r) { return r.mechanism == m; });
}

bool is_markup(const std::string& label) { return label == "tt" || label.starts_with("ps:"); }

/// TT and PS strategies ordered by markup (TT is markup 0).
std::vector<std::string> by_markup(const ExperimentTable& t) {
    std::vector<std::pair<Money, std::string>> found;
    for (const auto& s : strategies_in(t)) {
        if (is_markup(s)) found.emplace_back(StrategySpec::parse(s).delta, s);
    }
    std::sort(found.begin(), found.end());
    std::vector<std::string> out;
    for (auto& [_, s] : found) out.push_back(s);
    return out;
}

} // namespace

std::vector<TrendCheck> check_baseline(const ExperimentTable& t) {
    std::vector<TrendCheck> out;
    const std::vector<std::string> theta_order{"MT-0.5", "CH", "MT0.5", "MV"};
    const auto strategies = strategies_in(t);

    {
        Collector c("volume non-decreasing across theta -0.5, 0, 0.5, 1");
        for (const auto& m : theta_order) {
            if (!has_mechanism(t, m)) c.fail("missing mechanism " + m);
        }
        if (c.check.passed) {
            for (const auto& s : strategies) {
                for (std::size_t k = 0; k + 1 < theta_order.size(); ++k) {
                    const auto& lo = t.at(theta_order[k], s, 1);
                    const auto& hi = t.at(theta_order[k + 1], s, 1);
                    if (!not_below(hi.volume_mean, hi.volume_se(), lo.volume_mean, lo.volume_se())) {
                        c.fail(describe(hi, false) + " < " + describe(lo, false));
                    }
                }
            }
        }
        out.push_back(c.done("all " + std::to_string(strategies.size()) + " strategies"));
    }
    {
        Collector c("volume strictly higher under MV than CH for TT/PS");
        const bool ready = has_mechanism(t, "CH") && has_mechanism(t, "MV");
        if (!ready) c.fail("missing CH or MV");
        std::string summary;
        for (const auto& s : strategies) {
            if (!is_markup(s) || !ready) continue;
            const auto& ch = t.at("CH", s, 1);
            const auto& mv = t.at("MV", s, 1);
            if (!clearly_above(mv.volume_mean, mv.volume_se(), ch.volume_mean, ch.volume_se())) {
                c.fail(describe(mv, false) + " vs " + describe(ch, false));
            }
            summary += describe(mv, false) + " > " + describe(ch, false) + " ";
        }
        out.push_back(c.done(summary));
    }
    {
        Collector c("TT efficiency strictly lower under MV than CH");
        std::string summary;
        if (!has_mechanism(t, "CH") || !has_mechanism(t, "MV") ||
            std::find(strategies.begin(), strategies.end(), "tt") == strategies.end()) {
            c.fail("missing CH/MV or tt");
        } else {
            const auto& ch = t.at("CH", "tt", 1);
            const auto& mv = t.at("MV", "tt", 1);
            summary = describe(mv, true) + " < " + describe(ch, true);
            if (!clearly_above(ch.ea_mean, ch.ea_se(), mv.ea_mean, mv.ea_se())) c.fail(summary);
        }
        out.push_back(c.done(summary));
    }
    {
        Collector c("MT0.5 efficiency not below CDA for every strategy");
        const bool ready = has_mechanism(t, "MT0.5") && has_mechanism(t, "CDA");
        if (!ready) c.fail("missing MT0.5 or CDA");
        std::string summary;
        for (const auto& s : strategies) {
            if (!ready) break;
            const auto& mt = t.at("MT0.5", s, 1);
            const auto& cda = t.at("CDA", s, 1);
            summary += describe(mt, true) + " vs " + describe(cda, true) + " ";
            if (!not_below(mt.ea_mean, mt.ea_se(), cda.ea_mean, cda.ea_se())) {
                c.fail(describe(mt, true) + " < " + describe(cda, true));
            }
        }
        out.push_back(c.done(summary));
    }
    {
        Collector c("GD makes no trade in any single-round run");
        std::size_t gd_runs = 0;
        for (const auto& r : t.runs) {
            if (!r.strategy.starts_with("gd") || r.rounds != 1) continue;
            ++gd_runs;
            if (r.volume != 0) c.fail(r.mechanism + " run " + std::to_string(r.run) + " traded " + std::to_string(r.volume));
        }
        if (gd_runs == 0) c.fail("no single-round GD runs");
        out.push_back(c.done(std::to_string(gd_runs) + " runs, all zero volume"));
    }
    {
        Collector c("volume non-increasing in PS markup 0, 5, 10, 15, 20");
        const auto ladder = by_markup(t);
        if (ladder.size() < 2) c.fail("fewer than two markup strategies");
        for (const auto& m : mechanisms_in(t)) {
            for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
                const auto& lo = t.at(m, ladder[k], 1);
                const auto& hi = t.at(m, ladder[k + 1], 1);
                if (!not_below(lo.volume_mean, lo.volume_se(), hi.volume_mean, hi.volume_se())) {
                    c.fail(describe(hi, false) + " > " + describe(lo, false));
                }
            }
        }
        out.push_back(c.done("all mechanisms"));
    }
    return out;
}

std::vector<TrendCheck> check_multiround(const ExperimentTable& t) {
    std::vector<TrendCheck> out;
    int max_rounds = 0;
    int min_rounds = std::numeric_limits<int>::max();
    for (const auto& r : t.rows) {
        max_rounds = std::max(max_rounds, r.rounds);
        min_rounds = std::min(min_rounds, r.rounds);
    }
    const auto strategies = strategies_in(t);
    const bool complete = has_mechanism(t, "MV") && has_mechanism(t, "CH") && has_mechanism(t, "CDA");

    {
        Collector c("MV volume above CH and CDA at " + std::to_string(max_rounds) + " rounds");
        if (!complete) c.fail("missing MV, CH or CDA");
        std::string summary;
        for (const auto& s : strategies) {
            if (!complete) break;
            const auto& mv = t.at("MV", s, max_rounds);
            for (const char* other : {"CH", "CDA"}) {
                const auto& o = t.at(other, s, max_rounds);
                if (!clearly_above(mv.volume_mean, mv.volume_se(), o.volume_mean, o.volume_se())) {
                    c.fail(describe(mv, false) + " vs " + describe(o, false));
                }
            }
            summary += describe(mv, false) + " ";
        }
        out.push_back(c.done(summary));
    }
    {
        Collector c("ZI-C efficiency under CDA higher at " + std::to_string(max_rounds) + " rounds than at " +
                    std::to_string(min_rounds));
        std::string summary;
        if (!has_mechanism(t, "CDA") || std::find(strategies.begin(), strategies.end(), "zic") == strategies.end() ||
            max_rounds == min_rounds) {
            c.fail("missing CDA/zic or a rounds sweep");
        } else {
            const auto& late = t.at("CDA", "zic", max_rounds);
            const auto& early = t.at("CDA", "zic", min_rounds);
            summary = describe(late, true) + " > " + describe(early, true);
            if (!clearly_above(late.ea_mean, late.ea_se(), early.ea_mean, early.ea_se())) c.fail(summary);
        }
        out.push_back(c.done(summary));
    }
    {
        Collector c("GD volume higher at " + std::to_string(max_rounds) + " rounds than at " + std::to_string(min_rounds));
        std::string summary;
        const bool has_gd = std::find(strategies.begin(), strategies.end(), "gd") != strategies.end();
        if (!has_gd || max_rounds == min_rounds) c.fail("missing gd or a rounds sweep");
        for (const auto& m : mechanisms_in(t)) {
            if (!has_gd || max_rounds == min_rounds) break;
            const auto& late = t.at(m, "gd", max_rounds);
            const auto& early = t.at(m, "gd", min_rounds);
            summary += describe(late, false) + " > " + describe(early, false) + " ";
            if (!clearly_above(late.volume_mean, late.volume_se(), early.volume_mean, early.volume_se())) {
                c.fail(describe(late, false) + " vs " + describe(early, false));
            }
        }
        out.push_back(c.done(summary));
    }
    return out;
}

} // namespace dauction
