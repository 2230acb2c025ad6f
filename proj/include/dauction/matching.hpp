#pragma once

#include "dauction/core.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace dauction {

/// Mixing parameter of the parametric clearing policy, in [-1, 1].
/// -1 clears nothing, 0 reproduces equilibrium matching, 1 maximal-volume matching.
class Theta {
public:
    explicit Theta(double value);
    double value() const { return value_; }
    bool operator==(const Theta&) const = default;

private:
    double value_;
};

/// Closed clearing-price interval [lo, hi].
struct PriceInterval {
    Money lo;
    Money hi;

    Money midpoint() const { return dauction::midpoint(lo, hi); }
    bool contains(Money p) const { return lo <= p && p <= hi; }
    bool operator==(const PriceInterval&) const = default;
};

struct ClearingResult {
    MatchingSet matching;
    Quantity q_me = 0;
    Quantity q_mv = 0;
    Quantity q_target = 0;
    /// Present whenever q_me >= 1.
    std::optional<PriceInterval> price_interval;
};

/// Equilibrium volume: max over p of min(S(p), D(p)).
Quantity me_quantity(const OrderBook& book);

/// Competitive clearing interval bounded by the (m+1)-th and m-th highest shout
/// prices (m = number of asks). Throws NoCross when me_quantity is zero.
PriceInterval me_price_interval(const OrderBook& book);

/// Pairs the q_ME highest bids with the q_ME lowest asks, index-aligned ascending.
MatchingSet me_match(const OrderBook& book);

/// Instrumentation for the one-pass maximal-volume scan.
struct MvScanStats {
    /// Shouts dequeued from the bid and ask queues.
    std::size_t polls = 0;
};

/// Maximal volume min over p of (S(p) + D(p)), by a single ascending scan.
Quantity mv_get_q(const OrderBook& book);
Quantity mv_get_q(const OrderBook& book, MvScanStats& stats);

/// Fair, orderly matching set of maximal volume.
MatchingSet mv_match(const OrderBook& book);

/// Target volume of the parametric policy, floored to whole units.
Quantity mtheta_quantity(Theta theta, Quantity q_me, Quantity q_mv);

ClearingResult mtheta_match(Theta theta, const OrderBook& book);

/// Pairs the `count` most competitive bids with the `count` most competitive
/// asks, both taken in ascending price order and index-aligned.
MatchingSet pair_most_competitive(const OrderBook& book, Quantity count);

enum class Policy { Equilibrium, MaxVolume, Parametric };

Policy parse_policy(std::string_view name);

/// Runs one clearing policy and fills every ClearingResult field.
/// `theta` is only consulted for Policy::Parametric.
ClearingResult clear(const OrderBook& book, Policy policy, Theta theta = Theta{0.0});

// Predicates and repairs over matching sets.

bool is_valid_matching(const MatchingSet& m, const OrderBook& book);
bool is_fair(const MatchingSet& m, const OrderBook& book);
/// No two pairs with p(b) > p(b') and p(a) < p(a').
bool is_orderly(const MatchingSet& m);

/// Swaps matched shouts for strictly more competitive unmatched ones until fair.
MatchingSet make_fair(const MatchingSet& m, const OrderBook& book);
/// Re-pairs the same matched bids and asks sorted ascending and index-aligned.
MatchingSet make_orderly(const MatchingSet& m);

// Independent certifiers. Both refuse books with more than
// kOracleMaxSide shouts on either side.

inline constexpr std::size_t kOracleMaxSide = 12;

/// Maximum bipartite matching size over the bid >= ask compatibility graph.
Quantity oracle_max_volume(const OrderBook& book);

/// Maximum reported profit over all valid matching sets.
Money oracle_max_reported_profit(const OrderBook& book);

} // namespace dauction
