#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dauction {

/// Number of price ticks per monetary unit. Prices are exact integers in ticks.
inline constexpr std::int64_t kPriceScale = 100;

using Quantity = std::int64_t;

/// Exact monetary amount stored as an integer number of ticks (cents).
struct Money {
    std::int64_t ticks = 0;

    static constexpr Money from_ticks(std::int64_t t) { return Money{t}; }
    static constexpr Money from_units(std::int64_t units) { return Money{units * kPriceScale}; }
    /// Parses "12", "12.5" or "12.50". Rejects negatives and more decimals than the scale allows.
    static Money parse(std::string_view text);

    double to_double() const { return static_cast<double>(ticks) / kPriceScale; }
    std::string to_string() const;

    constexpr auto operator<=>(const Money&) const = default;

    friend constexpr Money operator+(Money a, Money b) { return Money{a.ticks + b.ticks}; }
    friend constexpr Money operator-(Money a, Money b) { return Money{a.ticks - b.ticks}; }
    friend constexpr Money operator*(Money a, Quantity q) { return Money{a.ticks * q}; }
    Money& operator+=(Money o) { ticks += o.ticks; return *this; }
    Money& operator-=(Money o) { ticks -= o.ticks; return *this; }
};

constexpr Money abs(Money m) { return Money{m.ticks < 0 ? -m.ticks : m.ticks}; }

/// Midpoint of two prices, rounded half-up to the tick.
constexpr Money midpoint(Money a, Money b) {
    const std::int64_t sum = a.ticks + b.ticks;
    return Money{sum >= 0 ? (sum + 1) / 2 : -((-sum) / 2)};
}

std::ostream& operator<<(std::ostream& os, Money m);

enum class Side : std::uint8_t { Buy, Sell };

std::string_view to_string(Side side);

/// Ordinal shout identifier. Units split from a multi-unit parent share its
/// sequence number and get a 1-based `unit` index; unsplit shouts use unit 0.
struct ShoutId {
    std::uint64_t seq = 0;
    std::uint32_t unit = 0;

    constexpr auto operator<=>(const ShoutId&) const = default;
    std::string to_string() const;
};

struct TraderId {
    std::uint64_t value = 0;
    constexpr auto operator<=>(const TraderId&) const = default;
};

struct Shout {
    ShoutId id;
    TraderId trader;
    Side side = Side::Buy;
    Money price;
    Quantity quantity = 1;

    bool operator==(const Shout&) const = default;
};

/// Price-ascending order with ties broken by ascending id.
struct PriceThenId {
    bool operator()(const Shout& a, const Shout& b) const {
        if (a.price != b.price) return a.price < b.price;
        return a.id < b.id;
    }
};

/// Splits a shout into `quantity` single-unit shouts with derived ids.
std::vector<Shout> split_multi_unit(const Shout& shout);

/// Bids and asks, each kept sorted ascending by (price, id).
class OrderBook {
public:
    OrderBook() = default;
    /// Throws InvalidArgument on duplicate ids, negative prices or zero quantities.
    explicit OrderBook(std::vector<Shout> shouts);
    OrderBook(std::vector<Shout> bids, std::vector<Shout> asks);

    std::span<const Shout> bids() const { return bids_; }
    std::span<const Shout> asks() const { return asks_; }

    void add(const Shout& shout);
    /// Removes the shout with this id; returns false if absent.
    bool remove(const ShoutId& id);
    void clear();

    bool empty() const { return bids_.empty() && asks_.empty(); }
    std::size_t size() const { return bids_.size() + asks_.size(); }
    /// True when every shout carries exactly one unit.
    bool is_unit() const { return multi_unit_count_ == 0; }

    Quantity total_demand() const;
    Quantity total_supply() const;

private:
    static void validate(const Shout& s);
    void check_unique_ids() const;

    std::vector<Shout> bids_;
    std::vector<Shout> asks_;
    std::size_t multi_unit_count_ = 0;
};

/// Returns an equivalent book in which every shout is single-unit.
OrderBook normalize(const OrderBook& book);

/// S(p): total ask quantity priced at or below p.
Quantity supply_at(const OrderBook& book, Money p);
/// D(p): total bid quantity priced at or above p.
Quantity demand_at(const OrderBook& book, Money p);

struct MatchPair {
    Shout bid;
    Shout ask;

    bool operator==(const MatchPair&) const = default;
};

struct MatchingSet {
    std::vector<MatchPair> pairs;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
    /// Units traded; equals size() for unit shouts.
    Quantity volume() const;

    bool operator==(const MatchingSet&) const = default;
};

/// Execution record of a matched pair.
struct Trade {
    ShoutId bid_id;
    ShoutId ask_id;
    TraderId buyer;
    TraderId seller;
    Money price;
    Quantity quantity = 1;
    int day = 0;
    int round = 0;
};

} // namespace dauction

template <>
struct std::hash<dauction::ShoutId> {
    std::size_t operator()(const dauction::ShoutId& id) const noexcept {
        return std::hash<std::uint64_t>{}(id.seq * 0x9E3779B97F4A7C15ULL ^ id.unit);
    }
};

template <>
struct std::hash<dauction::TraderId> {
    std::size_t operator()(const dauction::TraderId& id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
