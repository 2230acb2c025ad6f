#pragma once

#include "dauction/core.hpp"
#include "dauction/matching.hpp"

#include <optional>
#include <span>
#include <vector>

namespace dauction {

struct TraderValue {
    TraderId trader;
    Money value;
    Quantity entitlement = 1;
};

/// Private values of every buyer and seller in a market.
struct ValueProfile {
    std::vector<TraderValue> buyers;
    std::vector<TraderValue> sellers;
};

struct Equilibrium {
    PriceInterval interval;
    Quantity q0 = 0;
};

struct EfficiencyReport {
    /// Absent when no buyer value reaches any seller value.
    std::optional<PriceInterval> p0_interval;
    Quantity q0 = 0;
    Money equilibrium_profit;
    Money actual_profit;
    /// actual / equilibrium; absent when the equilibrium profit is zero.
    std::optional<double> efficiency;
    Quantity volume = 0;
};

/// Truthful book built from private values (one unit per entitlement).
OrderBook truthful_book(const ValueProfile& profile);

/// Equilibrium of the underlying supply and demand. Throws NoCross.
Equilibrium underlying_equilibrium(const ValueProfile& profile);

/// Sum of |v - p0| * q over intra-marginal traders. Traders whose value equals
/// p0 count as intra-marginal and contribute nothing.
Money equilibrium_profit(const ValueProfile& profile, Money p0);

/// Sum of |v - price| * q over both counterparties of every trade.
/// Throws UnknownTrader when a buyer or seller is missing from the profile.
Money actual_profit(std::span<const Trade> trades, const ValueProfile& profile);

/// pa / pe as a ratio, or nullopt when pe is zero.
std::optional<double> allocative_efficiency(Money pa, Money pe);

/// Sum over pairs of (bid price - ask price) * quantity.
Money reported_profit(const MatchingSet& m);

/// Full report using the midpoint of the equilibrium interval as p0.
EfficiencyReport efficiency_report(const ValueProfile& profile, std::span<const Trade> trades);

} // namespace dauction
