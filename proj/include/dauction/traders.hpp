#pragma once

#include "dauction/core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dauction {

using Rng = std::mt19937_64;

enum class StrategyKind {
    TruthTelling,
    PureSimple,
    ZeroIntelligenceConstrained,
    GjerstadDickhaut,
};

struct StrategySpec {
    StrategyKind kind = StrategyKind::TruthTelling;
    /// Fixed markup of the pure-simple strategy.
    Money delta;
    /// GD: number of most recent shouts the belief is estimated from.
    std::size_t memory = 8;
    /// GD: number of evenly spaced candidate prices across the no-loss range.
    std::size_t grid = 64;
    std::uint64_t rng_seed = 0;

    /// Parses `tt`, `ps:<delta>`, `zic`, `gd` or `gd:<memory>,<grid>`.
    static StrategySpec parse(std::string_view text);
    /// Canonical text form, accepted by parse().
    std::string label() const;
};

struct TraderState {
    TraderId id;
    Side side = Side::Buy;
    Money private_value;
    Quantity entitlement_remaining = 0;
    std::optional<Shout> active_shout;
};

struct ShoutRecord {
    ShoutId id;
    Side side = Side::Buy;
    Money price;
    bool accepted = false;
    int day = 0;
    int round = 0;
};

/// Chronological log of shouts (with their eventual fate) and trade prices.
class MarketHistory {
public:
    void record_shout(const Shout& shout, int day, int round);
    /// Marks a recorded shout as matched. Unknown ids are ignored.
    void mark_accepted(const ShoutId& id);
    void record_trade_price(Money price) { trade_prices_.push_back(price); }

    std::span<const ShoutRecord> shouts() const { return shouts_; }
    std::span<const Money> trade_prices() const { return trade_prices_; }

    /// The last `memory` shouts placed strictly before (day, round).
    std::span<const ShoutRecord> window(std::size_t memory, int day, int round) const;

private:
    std::vector<ShoutRecord> shouts_;
    std::unordered_map<ShoutId, std::size_t> index_;
    std::vector<Money> trade_prices_;
};

Money tt_offer(const TraderState& state);
/// Buyers shade down by delta (floored at zero), sellers mark up by delta.
Money ps_offer(const TraderState& state, Money delta);
/// Buyers draw from [0, v], sellers from [v, 2v], in whole ticks.
Money zic_offer(const TraderState& state, Rng& rng);

/// Estimated acceptance probability of a shout at `price`, interpolated
/// linearly between observed prices. nullopt on an empty window.
std::optional<double> gd_belief(std::span<const ShoutRecord> window, Side side, Money price);

/// Expected-surplus maximizing no-loss price, or nullopt on an empty window.
/// Ties go to the price closest to the private value.
std::optional<Money> gd_offer(const TraderState& state, std::span<const ShoutRecord> window, std::size_t grid);

/// Opening quote of a GD trader that has nothing to learn from yet: the far
/// end of its no-loss range (bid 0, ask 2v). It cannot cross any counterparty
/// with a positive private value, and seeds the shared history.
Money gd_opening_quote(const TraderState& state);

/// A trader bound to its strategy and private random stream.
class Trader {
public:
    Trader(TraderState state, StrategySpec strategy);

    /// Price to shout in (day, round), or nullopt when out of entitlement.
    std::optional<Money> next_offer(const MarketHistory& history, int day, int round);

    TraderState& state() { return state_; }
    const TraderState& state() const { return state_; }
    const StrategySpec& strategy() const { return strategy_; }

private:
    TraderState state_;
    StrategySpec strategy_;
    Rng rng_;
};

} // namespace dauction
