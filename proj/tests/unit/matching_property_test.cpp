// Randomized invariants of the clearing policies, checked against the
// brute-force references in oracles.hpp.

#include "dauction/matching.hpp"
#include "dauction/metrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace dauction;

namespace {

constexpr int kTrials = 2000;

std::vector<MatchingSet> every_policy(const OrderBook& b) {
    std::vector<MatchingSet> out{me_match(b), mv_match(b)};
    for (double t : {-1.0, -0.5, -0.25, 0.25, 0.5, 0.75}) out.push_back(mtheta_match(Theta{t}, b).matching);
    return out;
}

/// A random valid matching built by pairing random compatible shouts.
MatchingSet random_matching(const OrderBook& b, std::mt19937_64& rng) {
    std::vector<std::size_t> bi(b.bids().size());
    std::vector<std::size_t> ai(b.asks().size());
    std::iota(bi.begin(), bi.end(), 0);
    std::iota(ai.begin(), ai.end(), 0);
    std::shuffle(bi.begin(), bi.end(), rng);
    std::shuffle(ai.begin(), ai.end(), rng);
    std::vector<bool> used(ai.size());
    MatchingSet m;
    for (auto i : bi) {
        for (auto j : ai) {
            if (!used[j] && b.bids()[i].price >= b.asks()[j].price && rng() % 3 != 0) {
                used[j] = true;
                m.pairs.push_back({b.bids()[i], b.asks()[j]});
                break;
            }
        }
    }
    return m;
}

} // namespace

TEST(MatchingProperty, MaxVolumeIsOptimalFairAndOrderly) {
    oracle::BookGen gen(1);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        const auto m = mv_match(b);
        ASSERT_TRUE(is_valid_matching(m, b));
        ASSERT_EQ(static_cast<Quantity>(m.size()), oracle_max_volume(b));
        ASSERT_EQ(static_cast<Quantity>(m.size()), mv_get_q(b));
        ASSERT_TRUE(is_fair(m, b));
        ASSERT_TRUE(is_orderly(m));
    }
}

TEST(MatchingProperty, QuantitiesEqualBruteForceFormulas) {
    oracle::BookGen gen(2);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        ASSERT_EQ(mv_get_q(b), oracle::brute_mv_quantity(b));
        ASSERT_EQ(me_quantity(b), oracle::brute_me_quantity(b));
    }
}

TEST(MatchingProperty, MatchedBidsDominateMatchedAsksAtEveryPrice) {
    oracle::BookGen gen(3);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        const auto candidates = oracle::candidate_half_ticks(b);
        for (const auto& m : every_policy(b)) {
            for (auto p2 : candidates) {
                Quantity bids_above = 0, asks_above = 0, bids_below = 0, asks_below = 0;
                for (const auto& [bid, ask] : m.pairs) {
                    bids_above += 2 * bid.price.ticks >= p2;
                    asks_above += 2 * ask.price.ticks >= p2;
                    bids_below += 2 * bid.price.ticks <= p2;
                    asks_below += 2 * ask.price.ticks <= p2;
                }
                ASSERT_GE(bids_above, asks_above);
                ASSERT_GE(asks_below, bids_below);
                const auto volume = static_cast<std::int64_t>(m.size());
                ASSERT_LE(volume, oracle::supply_half(b, p2) + oracle::demand_half(b, p2));
            }
        }
    }
}

TEST(MatchingProperty, RepairsPreserveVolumeAndMatchedShouts) {
    oracle::BookGen gen(4);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        const auto m = random_matching(b, gen.rng());
        ASSERT_TRUE(is_valid_matching(m, b));

        const auto fair = make_fair(m, b);
        ASSERT_EQ(fair.size(), m.size());
        ASSERT_TRUE(is_valid_matching(fair, b));
        ASSERT_TRUE(is_fair(fair, b));

        const auto orderly = make_orderly(m);
        ASSERT_EQ(oracle::matched_ids(orderly), oracle::matched_ids(m));
        ASSERT_TRUE(is_valid_matching(orderly, b));
        ASSERT_TRUE(is_orderly(orderly));

        const auto both = make_orderly(make_fair(m, b));
        ASSERT_EQ(both.size(), m.size());
        ASSERT_TRUE(is_valid_matching(both, b));
        ASSERT_TRUE(is_fair(both, b));
        ASSERT_TRUE(is_orderly(both));
    }
}

TEST(MatchingProperty, ParametricEndpointsAndMonotonicity) {
    oracle::BookGen gen(5);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        ASSERT_TRUE(mtheta_match(Theta{-1.0}, b).matching.empty());
        ASSERT_EQ(mtheta_match(Theta{0.0}, b).matching.size(), me_match(b).size());
        ASSERT_EQ(mtheta_match(Theta{1.0}, b).matching, mv_match(b));
        const Quantity q_me = me_quantity(b);
        const Quantity q_mv = mv_get_q(b);
        Quantity prev = -1;
        for (int k = -20; k <= 20; ++k) {
            const Quantity q = mtheta_quantity(Theta{k / 20.0}, q_me, q_mv);
            ASSERT_GE(q, prev);
            ASSERT_LE(q, q_mv);
            prev = q;
        }
    }
}

TEST(MatchingProperty, EquilibriumMatchingMaximizesReportedProfit) {
    oracle::BookGen gen(6);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        ASSERT_EQ(reported_profit(me_match(b)), oracle_max_reported_profit(b));
    }
}

TEST(MatchingProperty, IntervalIsSortedShoutBandOfMaximalMinSupplyDemand) {
    oracle::BookGen gen(7);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        const Quantity q = me_quantity(b);
        if (q == 0) continue;
        const auto interval = me_price_interval(b);
        const auto [lo, hi] = oracle::sorted_shout_interval(b);
        ASSERT_EQ(interval, (PriceInterval{lo, hi}));
        ASSERT_LE(interval.lo, interval.hi);
        // Every price in the band clears q units.
        for (auto p2 : {2 * interval.lo.ticks, interval.lo.ticks + interval.hi.ticks, 2 * interval.hi.ticks}) {
            ASSERT_EQ(std::min(oracle::supply_half(b, p2), oracle::demand_half(b, p2)), q);
        }
        // Every matched pair's spread contains the band midpoint.
        for (const auto& [bid, ask] : me_match(b).pairs) {
            ASSERT_GE(bid.price, interval.midpoint());
            ASSERT_LE(ask.price, interval.midpoint());
        }
    }
}

TEST(MatchingProperty, FairMatchingsAttainMaxProfitForTheirVolume) {
    oracle::BookGen gen(8);
    for (int t = 0; t < 300; ++t) {
        const auto b = gen.next(6, 1, 15);
        std::map<std::size_t, Money> best;
        std::vector<std::pair<std::size_t, Money>> fair_profits;
        oracle::enumerate_matchings(b, [&](const std::vector<oracle::Pair>& pairs) {
            MatchingSet m;
            for (const auto& p : pairs) m.pairs.push_back({b.bids()[p.bid], b.asks()[p.ask]});
            const Money profit = reported_profit(m);
            auto [it, inserted] = best.emplace(m.size(), profit);
            if (!inserted) it->second = std::max(it->second, profit);
            if (is_fair(m, b)) fair_profits.emplace_back(m.size(), profit);
        });
        for (const auto& [k, profit] : fair_profits) ASSERT_EQ(profit, best.at(k));
    }
}

TEST(MatchingProperty, ScanPollsAreBoundedByBookSize) {
    oracle::BookGen gen(9);
    for (int t = 0; t < kTrials; ++t) {
        const auto b = gen.next();
        MvScanStats stats;
        mv_get_q(b, stats);
        ASSERT_LE(stats.polls, b.bids().size() + b.asks().size());
    }
}
