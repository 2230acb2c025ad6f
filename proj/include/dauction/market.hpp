#pragma once

#include "dauction/core.hpp"
#include "dauction/matching.hpp"
#include "dauction/metrics.hpp"
#include "dauction/pricing.hpp"
#include "dauction/traders.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dauction {

enum class MechanismKind {
    /// Clears with equilibrium matching after every shout.
    ContinuousDoubleAuction,
    /// Collects shouts and clears with the parametric policy at each round close.
    ClearingHouse,
};

struct MechanismSpec {
    MechanismKind kind = MechanismKind::ClearingHouse;
    Theta theta{0.0};
    PricingRule pricing = PricingRule::PairMidpoint;

    static MechanismSpec cda(PricingRule pricing = PricingRule::PairMidpoint);
    static MechanismSpec clearing_house(Theta theta, PricingRule pricing = PricingRule::PairMidpoint);
    /// Parses `cda`, `ch`, `mv` or `mtheta:<t>`.
    static MechanismSpec parse(std::string_view text, PricingRule pricing = PricingRule::PairMidpoint);

    /// Short display name: CDA, CH, MV or MT<theta>.
    std::string label() const;
};

struct DayResult {
    int day = 0;
    std::vector<Trade> trades;
    OrderBook final_book;
    EfficiencyReport report;
};

/// Single-threaded market instance: one book, one shared history, a fixed
/// trader population. Every random choice flows from the constructor seed.
class Market {
public:
    Market(MechanismSpec mechanism, std::vector<Trader> traders, ValueProfile profile, std::uint64_t seed);

    /// Builds one trader per profile entry, all following `strategy`, each with
    /// its own seed derived from `seed`.
    static Market homogeneous(MechanismSpec mechanism, const ValueProfile& profile, const StrategySpec& strategy,
                              std::uint64_t seed);

    /// Visits traders in a shuffled order, letting each place or replace its
    /// shout, and clears per the mechanism. Returns the trades executed.
    std::vector<Trade> run_round(int day, int round);

    /// Resets entitlements to one unit and empties the book, then runs
    /// `rounds` rounds. History carries over.
    DayResult run_day(int day, int rounds);

    const OrderBook& book() const { return book_; }
    const MarketHistory& history() const { return history_; }
    const std::vector<Trader>& traders() const { return traders_; }
    const MechanismSpec& mechanism() const { return mechanism_; }

private:
    void place(Trader& trader, Money price, int day, int round);
    std::vector<Trade> execute(const MatchingSet& m, const std::optional<PriceInterval>& interval, int day, int round);

    MechanismSpec mechanism_;
    std::vector<Trader> traders_;
    std::unordered_map<TraderId, std::size_t> trader_index_;
    ValueProfile profile_;
    OrderBook book_;
    MarketHistory history_;
    Rng rng_;
    std::uint64_t next_shout_ = 0;
};

} // namespace dauction
