// Python bindings. Prices cross the boundary as floats in currency units and
// are rounded to the nearest tick on the way in.

#include "dauction/errors.hpp"
#include "dauction/experiments.hpp"
#include "dauction/market.hpp"
#include "dauction/matching.hpp"
#include "dauction/metrics.hpp"
#include "dauction/pricing.hpp"
#include "dauction/seeding.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace dauction;

namespace {

Money to_money(double units) {
    if (!std::isfinite(units)) throw InvalidArgument("price must be finite");
    return Money::from_ticks(std::llround(units * static_cast<double>(kPriceScale)));
}

double from_money(Money m) { return m.to_double(); }

OrderBook book_from_prices(const std::vector<double>& bids, const std::vector<double>& asks) {
    std::vector<Shout> shouts;
    std::uint64_t seq = 0;
    for (double b : bids) {
        ++seq;
        shouts.push_back(Shout{ShoutId{seq, 0}, TraderId{seq}, Side::Buy, to_money(b), 1});
    }
    for (double a : asks) {
        ++seq;
        shouts.push_back(Shout{ShoutId{seq, 0}, TraderId{seq}, Side::Sell, to_money(a), 1});
    }
    return OrderBook(std::move(shouts));
}

py::object interval_or_none(const std::optional<PriceInterval>& i) {
    if (!i) return py::none();
    return py::make_tuple(from_money(i->lo), from_money(i->hi));
}

std::optional<PriceInterval> interval_from(const std::optional<std::pair<double, double>>& i) {
    if (!i) return std::nullopt;
    return PriceInterval{to_money(i->first), to_money(i->second)};
}

py::dict clearing_dict(const ClearingResult& r) {
    py::dict d;
    d["matching"] = r.matching;
    d["q_me"] = r.q_me;
    d["q_mv"] = r.q_mv;
    d["q_target"] = r.q_target;
    d["price_interval"] = interval_or_none(r.price_interval);
    return d;
}

py::dict report_dict(const EfficiencyReport& r) {
    py::dict d;
    d["volume"] = r.volume;
    d["q0"] = r.q0;
    d["pe"] = from_money(r.equilibrium_profit);
    d["pa"] = from_money(r.actual_profit);
    d["ea"] = r.efficiency ? py::cast(*r.efficiency) : py::none();
    d["p0_interval"] = interval_or_none(r.p0_interval);
    return d;
}

ValueProfile profile_from(const std::vector<double>& buyers, const std::vector<double>& sellers) {
    ValueProfile p;
    std::uint64_t id = 0;
    for (double v : buyers) p.buyers.push_back({TraderId{++id}, to_money(v), 1});
    for (double v : sellers) p.sellers.push_back({TraderId{++id}, to_money(v), 1});
    return p;
}

py::list simulate(const std::string& mechanism, const std::string& strategy, int traders, int rounds, int days,
                  std::uint64_t seed, const std::string& pricing, const std::optional<std::vector<double>>& buyers,
                  const std::optional<std::vector<double>>& sellers) {
    const MechanismSpec mech = MechanismSpec::parse(mechanism, parse_pricing_rule(pricing));
    const StrategySpec strat = StrategySpec::parse(strategy);
    if (buyers.has_value() != sellers.has_value()) throw InvalidArgument("give both buyer and seller values or neither");
    const ExperimentConfig defaults;
    const ValueProfile profile = buyers ? profile_from(*buyers, *sellers)
                                        : draw_profile(traders, defaults.value_min, defaults.value_max,
                                                       derive_seed(seed, {1}));
    Market market = Market::homogeneous(mech, profile, strat, derive_seed(seed, {2}));

    py::list rows;
    for (int day = 0; day < days; ++day) {
        const DayResult r = market.run_day(day, rounds);
        py::dict row = report_dict(r.report);
        row["mechanism"] = mech.label();
        row["strategy"] = strat.label();
        row["day"] = day;
        row["rounds"] = rounds;
        py::list trades;
        for (const auto& t : r.trades) trades.append(t);
        row["trades"] = trades;
        rows.append(row);
    }
    return rows;
}

py::dict experiment(const std::string& suite, const std::optional<std::string>& config_json, unsigned jobs) {
    if (suite != "baseline" && suite != "multiround") throw InvalidArgument("suite must be baseline or multiround");
    const bool baseline = suite == "baseline";
    ExperimentConfig cfg = baseline ? ExperimentConfig::baseline_defaults() : ExperimentConfig::multiround_defaults();
    if (config_json) cfg = ExperimentConfig::from_json_text(*config_json, cfg);

    ExperimentTable table;
    {
        py::gil_scoped_release release;
        table = baseline ? run_baseline_suite(cfg, jobs) : run_multiround_suite(cfg, jobs);
    }
    py::list rows;
    for (const auto& r : table.rows) {
        py::dict d;
        d["mechanism"] = r.mechanism;
        d["strategy"] = r.strategy;
        d["theta"] = r.theta;
        d["rounds"] = r.rounds;
        d["runs"] = r.runs;
        d["volume_mean"] = r.volume_mean;
        d["volume_sd"] = r.volume_sd;
        d["pe_mean"] = r.pe_mean;
        d["pa_mean"] = r.pa_mean;
        d["ea_mean"] = r.ea_mean;
        d["ea_sd"] = r.ea_sd;
        d["ea_runs"] = r.ea_runs;
        rows.append(d);
    }
    py::list checks;
    for (const auto& c : baseline ? check_baseline(table) : check_multiround(table)) {
        checks.append(py::make_tuple(c.name, c.passed, c.detail));
    }
    py::dict out;
    out["rows"] = rows;
    out["checks"] = checks;
    out["config"] = cfg.to_json_text();
    return out;
}

} // namespace

PYBIND11_MODULE(_dauction, m) {
    m.doc() = "Double-auction clearing policies, market simulation and experiments";

    auto base = py::register_exception<AuctionError>(m, "AuctionError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NoCross>(m, "NoCross", base.ptr());
    py::register_exception<TooLarge>(m, "TooLarge", base.ptr());
    py::register_exception<IntervalMissing>(m, "IntervalMissing", base.ptr());
    py::register_exception<UniformInapplicable>(m, "UniformInapplicable", base.ptr());
    py::register_exception<UnknownTrader>(m, "UnknownTrader", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::enum_<Side>(m, "Side").value("BUY", Side::Buy).value("SELL", Side::Sell);

    py::class_<Shout>(m, "Shout")
        .def(py::init([](std::uint64_t seq, Side side, double price, Quantity quantity, std::optional<std::uint64_t> trader) {
                 return Shout{ShoutId{seq, 0}, TraderId{trader.value_or(seq)}, side, to_money(price), quantity};
             }),
             py::arg("id"), py::arg("side"), py::arg("price"), py::arg("quantity") = 1, py::arg("trader") = py::none())
        .def_property_readonly("id", [](const Shout& s) { return s.id.to_string(); })
        .def_property_readonly("trader", [](const Shout& s) { return s.trader.value; })
        .def_property_readonly("side", [](const Shout& s) { return s.side; })
        .def_property_readonly("price", [](const Shout& s) { return from_money(s.price); })
        .def_property_readonly("quantity", [](const Shout& s) { return s.quantity; })
        .def("__eq__", [](const Shout& a, const Shout& b) { return a == b; })
        .def("__repr__", [](const Shout& s) {
            return "Shout(" + s.id.to_string() + ", " + std::string(to_string(s.side)) + ", " + s.price.to_string() +
                   ", q=" + std::to_string(s.quantity) + ")";
        });

    py::class_<OrderBook>(m, "OrderBook")
        .def(py::init(&book_from_prices), py::arg("bids"), py::arg("asks"),
             "Unit book from bid and ask prices; ids run 1..n over bids, then asks.")
        .def_static("from_shouts", [](std::vector<Shout> shouts) { return OrderBook(std::move(shouts)); })
        .def_property_readonly("bids", [](const OrderBook& b) { return std::vector<Shout>(b.bids().begin(), b.bids().end()); })
        .def_property_readonly("asks", [](const OrderBook& b) { return std::vector<Shout>(b.asks().begin(), b.asks().end()); })
        .def("is_unit", &OrderBook::is_unit)
        .def("normalize", [](const OrderBook& b) { return normalize(b); })
        .def("supply_at", [](const OrderBook& b, double p) { return supply_at(b, to_money(p)); })
        .def("demand_at", [](const OrderBook& b, double p) { return demand_at(b, to_money(p)); })
        .def("__len__", &OrderBook::size);

    py::class_<MatchPair>(m, "MatchPair")
        .def_readonly("bid", &MatchPair::bid)
        .def_readonly("ask", &MatchPair::ask)
        .def("prices", [](const MatchPair& p) { return py::make_tuple(from_money(p.bid.price), from_money(p.ask.price)); });

    py::class_<MatchingSet>(m, "MatchingSet")
        .def(py::init<>())
        .def(py::init([](std::vector<MatchPair> pairs) { return MatchingSet{std::move(pairs)}; }))
        .def_readonly("pairs", &MatchingSet::pairs)
        .def("prices", [](const MatchingSet& ms) {
            py::list out;
            for (const auto& p : ms.pairs) out.append(py::make_tuple(from_money(p.bid.price), from_money(p.ask.price)));
            return out;
        })
        .def("__len__", &MatchingSet::size)
        .def("__eq__", [](const MatchingSet& a, const MatchingSet& b) { return a == b; });

    py::class_<Trade>(m, "Trade")
        .def_property_readonly("bid_id", [](const Trade& t) { return t.bid_id.to_string(); })
        .def_property_readonly("ask_id", [](const Trade& t) { return t.ask_id.to_string(); })
        .def_property_readonly("buyer", [](const Trade& t) { return t.buyer.value; })
        .def_property_readonly("seller", [](const Trade& t) { return t.seller.value; })
        .def_property_readonly("price", [](const Trade& t) { return from_money(t.price); })
        .def_readonly("quantity", &Trade::quantity)
        .def_readonly("day", &Trade::day)
        .def_readonly("round", &Trade::round);

    m.def("me_quantity", &me_quantity);
    m.def("me_price_interval", [](const OrderBook& b) {
        const auto i = me_price_interval(b);
        return py::make_tuple(from_money(i.lo), from_money(i.hi));
    });
    m.def("me_match", &me_match);
    m.def("mv_get_q", py::overload_cast<const OrderBook&>(&mv_get_q));
    m.def("mv_get_q_polls", [](const OrderBook& b) {
        MvScanStats stats;
        const Quantity q = mv_get_q(b, stats);
        return py::make_tuple(q, stats.polls);
    });
    m.def("mv_match", &mv_match);
    m.def("mtheta_quantity", [](double theta, Quantity q_me, Quantity q_mv) {
        return mtheta_quantity(Theta{theta}, q_me, q_mv);
    });
    m.def("mtheta_match", [](double theta, const OrderBook& b) { return clearing_dict(mtheta_match(Theta{theta}, b)); });
    m.def(
        "clear",
        [](const OrderBook& b, const std::string& policy, double theta) {
            return clearing_dict(clear(b, parse_policy(policy), Theta{theta}));
        },
        py::arg("book"), py::arg("policy") = "mv", py::arg("theta") = 0.0);

    m.def("is_valid_matching", &is_valid_matching);
    m.def("is_fair", &is_fair);
    m.def("is_orderly", &is_orderly);
    m.def("make_fair", &make_fair);
    m.def("make_orderly", &make_orderly);
    m.def("oracle_max_volume", &oracle_max_volume);
    m.def("oracle_max_reported_profit", [](const OrderBook& b) { return from_money(oracle_max_reported_profit(b)); });
    m.def("reported_profit", [](const MatchingSet& ms) { return from_money(reported_profit(ms)); });

    m.def(
        "price_matching",
        [](const MatchingSet& ms, const std::string& rule, const std::optional<std::pair<double, double>>& interval) {
            return price_matching(ms, parse_pricing_rule(rule), interval_from(interval));
        },
        py::arg("matching"), py::arg("rule") = "midpoint", py::arg("interval") = py::none());

    m.def(
        "efficiency_report",
        [](const std::vector<double>& buyers, const std::vector<double>& sellers, const std::vector<Trade>& trades) {
            return report_dict(efficiency_report(profile_from(buyers, sellers), trades));
        },
        py::arg("buyers"), py::arg("sellers"), py::arg("trades"),
        "Buyers get trader ids 1..n, sellers continue after them.");

    m.def("simulate", &simulate, py::arg("mechanism") = "cda", py::arg("strategy") = "tt", py::arg("traders") = 20,
          py::arg("rounds") = 1, py::arg("days") = 1, py::arg("seed") = 1, py::arg("pricing") = "midpoint",
          py::arg("buyers") = py::none(), py::arg("sellers") = py::none());
    m.def("experiment", &experiment, py::arg("suite"), py::arg("config_json") = py::none(), py::arg("jobs") = 1);
}
