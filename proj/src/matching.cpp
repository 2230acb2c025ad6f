#include "dauction/matching.hpp"

#include "dauction/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace dauction {

namespace {

void require_unit(const OrderBook& book) {
    if (!book.is_unit()) throw InvalidArgument("clearing requires a book of single-unit shouts; normalize it first");
}

} // namespace

Theta::Theta(double value) : value_(value) {
    if (!(value >= -1.0 && value <= 1.0)) {
        throw InvalidArgument("theta must lie in [-1, 1], got " + std::to_string(value));
    }
}

Quantity me_quantity(const OrderBook& book) {
    require_unit(book);
    const auto bids = book.bids();
    const auto asks = book.asks();
    const std::size_t limit = std::min(bids.size(), asks.size());
    std::size_t k = 0;
    // k-th highest bid against k-th lowest ask.
    while (k < limit && bids[bids.size() - 1 - k].price >= asks[k].price) ++k;
    return static_cast<Quantity>(k);
}

PriceInterval me_price_interval(const OrderBook& book) {
    const Quantity q = me_quantity(book);
    if (q == 0) throw NoCross{};
    const auto bids = book.bids();
    const auto asks = book.asks();
    const auto qi = static_cast<std::size_t>(q);

    const Money bid_q = bids[bids.size() - qi].price;
    const Money ask_q = asks[qi - 1].price;
    const Money bid_next = qi < bids.size() ? bids[bids.size() - qi - 1].price : ask_q;
    const Money ask_next = qi < asks.size() ? asks[qi].price : bid_q;
    return PriceInterval{std::max(ask_q, bid_next), std::min(bid_q, ask_next)};
}

MatchingSet pair_most_competitive(const OrderBook& book, Quantity count) {
    const auto bids = book.bids();
    const auto asks = book.asks();
    if (count < 0 || static_cast<std::size_t>(count) > std::min(bids.size(), asks.size())) {
        throw InvalidArgument("cannot pair " + std::to_string(count) + " shouts per side");
    }
    const auto n = static_cast<std::size_t>(count);
    MatchingSet m;
    m.pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.pairs.push_back(MatchPair{bids[bids.size() - n + i], asks[i]});
    }
    return m;
}

MatchingSet me_match(const OrderBook& book) {
    return pair_most_competitive(book, me_quantity(book));
}

Quantity mv_get_q(const OrderBook& book) {
    MvScanStats stats;
    return mv_get_q(book, stats);
}

Quantity mv_get_q(const OrderBook& book, MvScanStats& stats) {
    const auto bids = book.bids();
    const auto asks = book.asks();
    std::size_t next_bid = 0;
    std::size_t next_ask = 0;
    auto poll = [&stats](std::span<const Shout> queue, std::size_t& cursor) -> const Shout* {
        if (cursor >= queue.size()) return nullptr;
        ++stats.polls;
        return &queue[cursor++];
    };

    Quantity q_min = 0;
    const Shout* a = poll(asks, next_ask);
    if (a == nullptr) return q_min;

    const Shout* b = poll(bids, next_bid);
    while (b != nullptr && b->price < a->price) b = poll(bids, next_bid);

    // q tracks S(p) + D(p) minus the demand at the lowest ask, which is only
    // known once every remaining bid has been scanned (q_d).
    Quantity q_d = 0;
    Quantity q = 0;
    while (b != nullptr) {
        if (a != nullptr && a->price <= b->price) {
            q += a->quantity;
            a = poll(asks, next_ask);
        } else {
            q -= b->quantity;
            q_min = std::min(q_min, q);
            q_d += b->quantity;
            b = poll(bids, next_bid);
        }
    }
    return q_min + q_d;
}

MatchingSet mv_match(const OrderBook& book) {
    require_unit(book);
    return pair_most_competitive(book, mv_get_q(book));
}

Quantity mtheta_quantity(Theta theta, Quantity q_me, Quantity q_mv) {
    if (q_me < 0 || q_me > q_mv) throw InvalidArgument("mtheta_quantity requires 0 <= q_me <= q_mv");
    const double t = theta.value();
    const double me = static_cast<double>(q_me);
    // Written as q_me + t * spread so the result is monotone in t.
    const double target = t <= 0.0 ? me + t * me : me + t * static_cast<double>(q_mv - q_me);
    const auto q = static_cast<Quantity>(std::floor(target + 1e-9));
    return std::clamp<Quantity>(q, 0, q_mv);
}

ClearingResult mtheta_match(Theta theta, const OrderBook& book) {
    require_unit(book);
    ClearingResult r;
    r.q_me = me_quantity(book);
    r.q_mv = mv_get_q(book);
    r.q_target = mtheta_quantity(theta, r.q_me, r.q_mv);
    r.matching = pair_most_competitive(book, r.q_target);
    if (r.q_me > 0) r.price_interval = me_price_interval(book);
    return r;
}

Policy parse_policy(std::string_view name) {
    if (name == "me") return Policy::Equilibrium;
    if (name == "mv") return Policy::MaxVolume;
    if (name == "mtheta") return Policy::Parametric;
    throw InvalidArgument("unknown policy '" + std::string(name) + "' (expected me|mv|mtheta)");
}

ClearingResult clear(const OrderBook& book, Policy policy, Theta theta) {
    switch (policy) {
    case Policy::Equilibrium:
        return mtheta_match(Theta{0.0}, book);
    case Policy::MaxVolume:
        return mtheta_match(Theta{1.0}, book);
    case Policy::Parametric:
        return mtheta_match(theta, book);
    }
    throw InvalidArgument("unknown policy");
}

bool is_valid_matching(const MatchingSet& m, const OrderBook& book) {
    std::unordered_map<ShoutId, const Shout*> bids;
    std::unordered_map<ShoutId, const Shout*> asks;
    for (const auto& b : book.bids()) bids.emplace(b.id, &b);
    for (const auto& a : book.asks()) asks.emplace(a.id, &a);

    std::unordered_set<ShoutId> used;
    for (const auto& [bid, ask] : m.pairs) {
        auto bi = bids.find(bid.id);
        auto ai = asks.find(ask.id);
        if (bi == bids.end() || ai == asks.end()) return false;
        if (!(*bi->second == bid) || !(*ai->second == ask)) return false;
        if (bid.quantity != ask.quantity) return false;
        if (bid.price < ask.price) return false;
        if (!used.insert(bid.id).second || !used.insert(ask.id).second) return false;
    }
    return true;
}

bool is_fair(const MatchingSet& m, const OrderBook& book) {
    if (m.empty()) return true;
    std::unordered_set<ShoutId> matched;
    Money lowest_matched_bid = m.pairs.front().bid.price;
    Money highest_matched_ask = m.pairs.front().ask.price;
    for (const auto& [bid, ask] : m.pairs) {
        matched.insert(bid.id);
        matched.insert(ask.id);
        lowest_matched_bid = std::min(lowest_matched_bid, bid.price);
        highest_matched_ask = std::max(highest_matched_ask, ask.price);
    }
    for (const auto& b : book.bids()) {
        if (!matched.contains(b.id) && b.price > lowest_matched_bid) return false;
    }
    for (const auto& a : book.asks()) {
        if (!matched.contains(a.id) && a.price < highest_matched_ask) return false;
    }
    return true;
}

bool is_orderly(const MatchingSet& m) {
    std::vector<std::pair<Money, Money>> pairs;
    pairs.reserve(m.size());
    for (const auto& [bid, ask] : m.pairs) pairs.emplace_back(bid.price, ask.price);
    std::sort(pairs.begin(), pairs.end());

    // Every ask must be at least the largest ask among pairs with a strictly lower bid.
    Money max_ask_below = Money::from_ticks(std::numeric_limits<std::int64_t>::min());
    std::size_t i = 0;
    while (i < pairs.size()) {
        std::size_t j = i;
        Money group_max = pairs[i].second;
        while (j < pairs.size() && pairs[j].first == pairs[i].first) {
            if (pairs[j].second < max_ask_below) return false;
            group_max = std::max(group_max, pairs[j].second);
            ++j;
        }
        max_ask_below = std::max(max_ask_below, group_max);
        i = j;
    }
    return true;
}

MatchingSet make_fair(const MatchingSet& m, const OrderBook& book) {
    MatchingSet out = m;
    std::unordered_set<ShoutId> matched;
    for (const auto& [bid, ask] : m.pairs) {
        matched.insert(bid.id);
        matched.insert(ask.id);
    }

    std::vector<Shout> free_bids;
    std::vector<Shout> free_asks;
    for (const auto& b : book.bids()) {
        if (!matched.contains(b.id)) free_bids.push_back(b);
    }
    for (const auto& a : book.asks()) {
        if (!matched.contains(a.id)) free_asks.push_back(a);
    }
    // Most competitive free shouts first.
    std::sort(free_bids.begin(), free_bids.end(), [](const Shout& x, const Shout& y) { return PriceThenId{}(y, x); });
    std::sort(free_asks.begin(), free_asks.end(), PriceThenId{});

    std::vector<std::size_t> by_bid(out.size());
    std::vector<std::size_t> by_ask(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) by_bid[i] = by_ask[i] = i;
    // Least competitive matched shouts first.
    std::sort(by_bid.begin(), by_bid.end(),
              [&](std::size_t x, std::size_t y) { return PriceThenId{}(out.pairs[x].bid, out.pairs[y].bid); });
    std::sort(by_ask.begin(), by_ask.end(),
              [&](std::size_t x, std::size_t y) { return PriceThenId{}(out.pairs[y].ask, out.pairs[x].ask); });

    for (std::size_t k = 0; k < by_bid.size() && k < free_bids.size(); ++k) {
        auto& slot = out.pairs[by_bid[k]].bid;
        if (free_bids[k].price <= slot.price) break;
        slot = free_bids[k];
    }
    for (std::size_t k = 0; k < by_ask.size() && k < free_asks.size(); ++k) {
        auto& slot = out.pairs[by_ask[k]].ask;
        if (free_asks[k].price >= slot.price) break;
        slot = free_asks[k];
    }
    return out;
}

MatchingSet make_orderly(const MatchingSet& m) {
    std::vector<Shout> bids;
    std::vector<Shout> asks;
    bids.reserve(m.size());
    asks.reserve(m.size());
    for (const auto& [bid, ask] : m.pairs) {
        bids.push_back(bid);
        asks.push_back(ask);
    }
    std::sort(bids.begin(), bids.end(), PriceThenId{});
    std::sort(asks.begin(), asks.end(), PriceThenId{});
    MatchingSet out;
    out.pairs.reserve(m.size());
    for (std::size_t i = 0; i < bids.size(); ++i) out.pairs.push_back(MatchPair{bids[i], asks[i]});
    return out;
}

namespace {

void require_desk_scale(const OrderBook& book) {
    if (book.bids().size() > kOracleMaxSide || book.asks().size() > kOracleMaxSide) {
        throw TooLarge("oracle limited to " + std::to_string(kOracleMaxSide) + " shouts per side");
    }
    require_unit(book);
}

bool try_augment(std::size_t bid, const std::vector<std::vector<std::size_t>>& adj, std::vector<bool>& seen,
                 std::vector<std::ptrdiff_t>& ask_owner) {
    for (std::size_t ask : adj[bid]) {
        if (seen[ask]) continue;
        seen[ask] = true;
        if (ask_owner[ask] < 0 || try_augment(static_cast<std::size_t>(ask_owner[ask]), adj, seen, ask_owner)) {
            ask_owner[ask] = static_cast<std::ptrdiff_t>(bid);
            return true;
        }
    }
    return false;
}

} // namespace

Quantity oracle_max_volume(const OrderBook& book) {
    require_desk_scale(book);
    const auto bids = book.bids();
    const auto asks = book.asks();
    std::vector<std::vector<std::size_t>> adj(bids.size());
    for (std::size_t i = 0; i < bids.size(); ++i) {
        for (std::size_t j = 0; j < asks.size(); ++j) {
            if (bids[i].price >= asks[j].price) adj[i].push_back(j);
        }
    }
    std::vector<std::ptrdiff_t> ask_owner(asks.size(), -1);
    Quantity size = 0;
    for (std::size_t i = 0; i < bids.size(); ++i) {
        std::vector<bool> seen(asks.size(), false);
        if (try_augment(i, adj, seen, ask_owner)) ++size;
    }
    return size;
}

Money oracle_max_reported_profit(const OrderBook& book) {
    require_desk_scale(book);
    const auto bids = book.bids();
    const auto asks = book.asks();
    const std::size_t n = std::max(bids.size(), asks.size());
    if (n == 0) return Money{};

    // Square assignment problem; incompatible or padded cells weigh 0, which is
    // the same as leaving the row unmatched. Hungarian method on costs = -weight.
    auto weight = [&](std::size_t i, std::size_t j) -> std::int64_t {
        if (i >= bids.size() || j >= asks.size()) return 0;
        return std::max<std::int64_t>(0, (bids[i].price - asks[j].price).ticks);
    };
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::int64_t delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = -weight(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::int64_t total = 0;
    for (std::size_t j = 1; j <= n; ++j) total += weight(p[j] - 1, j - 1);
    return Money::from_ticks(total);
}

} // namespace dauction
