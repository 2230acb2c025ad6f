#include "dauction/metrics.hpp"

#include "dauction/errors.hpp"

#include <string>
#include <unordered_map>

namespace dauction {

OrderBook truthful_book(const ValueProfile& profile) {
    std::vector<Shout> bids;
    std::vector<Shout> asks;
    std::uint64_t seq = 0;
    auto emit = [&seq](const TraderValue& t, Side side, std::vector<Shout>& out) {
        if (t.value < Money{}) throw InvalidArgument("private values must be non-negative");
        if (t.entitlement < 1) throw InvalidArgument("entitlements must be at least 1");
        auto units = split_multi_unit(Shout{ShoutId{++seq, 0}, t.trader, side, t.value, t.entitlement});
        out.insert(out.end(), units.begin(), units.end());
    };
    for (const auto& b : profile.buyers) emit(b, Side::Buy, bids);
    for (const auto& s : profile.sellers) emit(s, Side::Sell, asks);
    return OrderBook(std::move(bids), std::move(asks));
}

Equilibrium underlying_equilibrium(const ValueProfile& profile) {
    const OrderBook book = truthful_book(profile);
    const Quantity q0 = me_quantity(book);
    if (q0 == 0) throw NoCross{};
    return Equilibrium{me_price_interval(book), q0};
}

Money equilibrium_profit(const ValueProfile& profile, Money p0) {
    Money total;
    for (const auto& b : profile.buyers) {
        if (b.value >= p0) total += (b.value - p0) * b.entitlement;
    }
    for (const auto& s : profile.sellers) {
        if (s.value <= p0) total += (p0 - s.value) * s.entitlement;
    }
    return total;
}

Money actual_profit(std::span<const Trade> trades, const ValueProfile& profile) {
    std::unordered_map<TraderId, Money> buyers;
    std::unordered_map<TraderId, Money> sellers;
    for (const auto& b : profile.buyers) buyers.emplace(b.trader, b.value);
    for (const auto& s : profile.sellers) sellers.emplace(s.trader, s.value);

    Money total;
    for (const auto& t : trades) {
        auto b = buyers.find(t.buyer);
        auto s = sellers.find(t.seller);
        if (b == buyers.end()) throw UnknownTrader("buyer " + std::to_string(t.buyer.value) + " not in profile");
        if (s == sellers.end()) throw UnknownTrader("seller " + std::to_string(t.seller.value) + " not in profile");
        total += abs(b->second - t.price) * t.quantity;
        total += abs(t.price - s->second) * t.quantity;
    }
    return total;
}

std::optional<double> allocative_efficiency(Money pa, Money pe) {
    if (pe < Money{}) throw InvalidArgument("equilibrium profit must be non-negative");
    if (pe == Money{}) return std::nullopt;
    return static_cast<double>(pa.ticks) / static_cast<double>(pe.ticks);
}

Money reported_profit(const MatchingSet& m) {
    Money total;
    for (const auto& [bid, ask] : m.pairs) total += (bid.price - ask.price) * bid.quantity;
    return total;
}

EfficiencyReport efficiency_report(const ValueProfile& profile, std::span<const Trade> trades) {
    EfficiencyReport r;
    const OrderBook book = truthful_book(profile);
    r.q0 = me_quantity(book);
    if (r.q0 > 0) {
        r.p0_interval = me_price_interval(book);
        r.equilibrium_profit = equilibrium_profit(profile, r.p0_interval->midpoint());
    }
    r.actual_profit = actual_profit(trades, profile);
    r.efficiency = allocative_efficiency(r.actual_profit, r.equilibrium_profit);
    for (const auto& t : trades) r.volume += t.quantity;
    return r;
}

} // namespace dauction
