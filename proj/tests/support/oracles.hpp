#pragma once

// Brute-force references used by the tests. Nothing here calls the clearing
// code under test; every quantity is recomputed from raw prices.

#include "dauction/core.hpp"
#include "dauction/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using dauction::Money;
using dauction::OrderBook;
using dauction::Shout;
using dauction::ShoutId;
using dauction::Side;
using dauction::TraderId;

inline Money units(double v) { return Money::from_ticks(static_cast<std::int64_t>(v * 100.0 + (v >= 0 ? 0.5 : -0.5))); }

/// Unit book from unit prices; bids get ids 1..n, asks continue after them.
inline OrderBook book(const std::vector<double>& bids, const std::vector<double>& asks) {
    std::vector<Shout> shouts;
    std::uint64_t seq = 0;
    for (double b : bids) {
        ++seq;
        shouts.push_back(Shout{ShoutId{seq, 0}, TraderId{seq}, Side::Buy, units(b), 1});
    }
    for (double a : asks) {
        ++seq;
        shouts.push_back(Shout{ShoutId{seq, 0}, TraderId{seq}, Side::Sell, units(a), 1});
    }
    return OrderBook(std::move(shouts));
}

inline std::vector<std::int64_t> ticks(std::span<const Shout> side) {
    std::vector<std::int64_t> out;
    for (const auto& s : side) {
        for (std::int64_t k = 0; k < s.quantity; ++k) out.push_back(s.price.ticks);
    }
    return out;
}

/// Candidate prices in half-ticks: every distinct price, the midpoint of each
/// adjacent pair, one below the minimum and one above the maximum.
inline std::vector<std::int64_t> candidate_half_ticks(const OrderBook& b) {
    std::set<std::int64_t> prices;
    for (auto t : ticks(b.bids())) prices.insert(2 * t);
    for (auto t : ticks(b.asks())) prices.insert(2 * t);
    std::vector<std::int64_t> out;
    if (prices.empty()) return {0};
    out.push_back(*prices.begin() - 1);
    std::int64_t prev = *prices.begin();
    for (auto p : prices) {
        if (p != prev) out.push_back((p + prev) / 2);
        out.push_back(p);
        prev = p;
    }
    out.push_back(*prices.rbegin() + 1);
    return out;
}

inline std::int64_t supply_half(const OrderBook& b, std::int64_t p2) {
    std::int64_t n = 0;
    for (auto t : ticks(b.asks())) n += (2 * t <= p2);
    return n;
}

inline std::int64_t demand_half(const OrderBook& b, std::int64_t p2) {
    std::int64_t n = 0;
    for (auto t : ticks(b.bids())) n += (2 * t >= p2);
    return n;
}

inline std::int64_t brute_me_quantity(const OrderBook& b) {
    std::int64_t best = 0;
    for (auto p : candidate_half_ticks(b)) best = std::max(best, std::min(supply_half(b, p), demand_half(b, p)));
    return best;
}

inline std::int64_t brute_mv_quantity(const OrderBook& b) {
    std::int64_t best = INT64_MAX;
    for (auto p : candidate_half_ticks(b)) best = std::min(best, supply_half(b, p) + demand_half(b, p));
    return best;
}

/// Clearing interval read off the merged price list: with m asks, the m-th
/// and (m+1)-th highest of all shout prices.
inline std::pair<Money, Money> sorted_shout_interval(const OrderBook& b) {
    auto all = ticks(b.bids());
    const auto asks = ticks(b.asks());
    all.insert(all.end(), asks.begin(), asks.end());
    std::sort(all.begin(), all.end(), std::greater<>());
    const std::size_t m = asks.size();
    return {Money::from_ticks(all.at(m)), Money::from_ticks(all.at(m - 1))};
}

struct Pair {
    std::size_t bid;
    std::size_t ask;
};

/// Every valid matching of a unit book as index pairs, by exhaustive search.
inline void enumerate_matchings(const OrderBook& b, const std::function<void(const std::vector<Pair>&)>& visit) {
    const auto bids = b.bids();
    const auto asks = b.asks();
    std::vector<bool> ask_used(asks.size(), false);
    std::vector<Pair> current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == bids.size()) {
            visit(current);
            return;
        }
        rec(i + 1);
        for (std::size_t j = 0; j < asks.size(); ++j) {
            if (ask_used[j] || bids[i].price < asks[j].price) continue;
            ask_used[j] = true;
            current.push_back({i, j});
            rec(i + 1);
            current.pop_back();
            ask_used[j] = false;
        }
    };
    rec(0);
}

inline std::int64_t enumerated_max_volume(const OrderBook& b) {
    std::size_t best = 0;
    enumerate_matchings(b, [&](const std::vector<Pair>& m) { best = std::max(best, m.size()); });
    return static_cast<std::int64_t>(best);
}

inline Money enumerated_max_profit(const OrderBook& b) {
    Money best{};
    enumerate_matchings(b, [&](const std::vector<Pair>& m) {
        Money total{};
        for (const auto& p : m) total += b.bids()[p.bid].price - b.asks()[p.ask].price;
        best = std::max(best, total);
    });
    return best;
}

/// Random unit books with integer prices.
class BookGen {
public:
    explicit BookGen(std::uint64_t seed) : rng_(seed) {}

    OrderBook next(int max_side = 12, int lo = 1, int hi = 100) {
        std::uniform_int_distribution<int> side(0, max_side);
        std::uniform_int_distribution<int> price(lo, hi);
        std::vector<double> bids(side(rng_));
        std::vector<double> asks(side(rng_));
        for (auto& b : bids) b = price(rng_);
        for (auto& a : asks) a = price(rng_);
        return book(bids, asks);
    }

    dauction::ValueProfile profile(int buyers, int sellers, int lo = 1, int hi = 100) {
        std::uniform_int_distribution<int> price(lo, hi);
        dauction::ValueProfile p;
        std::uint64_t id = 0;
        for (int i = 0; i < buyers; ++i) p.buyers.push_back({TraderId{++id}, Money::from_units(price(rng_)), 1});
        for (int i = 0; i < sellers; ++i) p.sellers.push_back({TraderId{++id}, Money::from_units(price(rng_)), 1});
        return p;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Sorted bid and ask prices of a matching, for multiset comparisons.
template <class Matching>
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> matched_ids(const Matching& m) {
    std::vector<std::int64_t> b;
    std::vector<std::int64_t> a;
    for (const auto& p : m.pairs) {
        b.push_back(static_cast<std::int64_t>(p.bid.id.seq));
        a.push_back(static_cast<std::int64_t>(p.ask.id.seq));
    }
    std::sort(b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return {b, a};
}

} // namespace oracle
