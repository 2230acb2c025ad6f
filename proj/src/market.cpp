#include "dauction/market.hpp"

#include "dauction/errors.hpp"
#include "dauction/seeding.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dauction {

MechanismSpec MechanismSpec::cda(PricingRule pricing) {
    return MechanismSpec{MechanismKind::ContinuousDoubleAuction, Theta{0.0}, pricing};
}

MechanismSpec MechanismSpec::clearing_house(Theta theta, PricingRule pricing) {
    return MechanismSpec{MechanismKind::ClearingHouse, theta, pricing};
}

MechanismSpec MechanismSpec::parse(std::string_view text, PricingRule pricing) {
    if (text == "cda") return cda(pricing);
    if (text == "ch") return clearing_house(Theta{0.0}, pricing);
    if (text == "mv") return clearing_house(Theta{1.0}, pricing);
    if (text.starts_with("mtheta:")) {
        const std::string value(text.substr(7));
        std::size_t used = 0;
        double t = 0.0;
        try {
            t = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) throw ParseError("bad theta in mechanism '" + std::string(text) + "'");
        return clearing_house(Theta{t}, pricing);
    }
    throw ParseError("unknown mechanism '" + std::string(text) + "' (expected cda | ch | mv | mtheta:<t>)");
}

std::string MechanismSpec::label() const {
    if (kind == MechanismKind::ContinuousDoubleAuction) return "CDA";
    if (theta.value() == 0.0) return "CH";
    if (theta.value() == 1.0) return "MV";
    std::ostringstream os;
    os << "MT" << theta.value();
    return os.str();
}

Market::Market(MechanismSpec mechanism, std::vector<Trader> traders, ValueProfile profile, std::uint64_t seed)
    : mechanism_(mechanism), traders_(std::move(traders)), profile_(std::move(profile)), rng_(seed) {
    for (std::size_t i = 0; i < traders_.size(); ++i) {
        if (!trader_index_.emplace(traders_[i].state().id, i).second) {
            throw InvalidArgument("duplicate trader id " + std::to_string(traders_[i].state().id.value));
        }
    }
}

Market Market::homogeneous(MechanismSpec mechanism, const ValueProfile& profile, const StrategySpec& strategy,
                           std::uint64_t seed) {
    std::vector<Trader> traders;
    auto add = [&](const TraderValue& v, Side side) {
        StrategySpec s = strategy;
        s.rng_seed = derive_seed(seed, {1, v.trader.value});
        traders.emplace_back(TraderState{v.trader, side, v.value, 0, std::nullopt}, s);
    };
    for (const auto& b : profile.buyers) add(b, Side::Buy);
    for (const auto& s : profile.sellers) add(s, Side::Sell);
    return Market(mechanism, std::move(traders), profile, derive_seed(seed, {0}));
}

void Market::place(Trader& trader, Money price, int day, int round) {
    auto& state = trader.state();
    if (state.active_shout) book_.remove(state.active_shout->id);
    const Shout shout{ShoutId{++next_shout_, 0}, state.id, state.side, price, 1};
    book_.add(shout);
    history_.record_shout(shout, day, round);
    state.active_shout = shout;
}

std::vector<Trade> Market::execute(const MatchingSet& m, const std::optional<PriceInterval>& interval, int day,
                                   int round) {
    auto trades = price_matching(m, mechanism_.pricing, interval, day, round);
    for (const auto& t : trades) {
        book_.remove(t.bid_id);
        book_.remove(t.ask_id);
        history_.mark_accepted(t.bid_id);
        history_.mark_accepted(t.ask_id);
        history_.record_trade_price(t.price);
        for (TraderId id : {t.buyer, t.seller}) {
            auto& state = traders_.at(trader_index_.at(id)).state();
            state.entitlement_remaining -= t.quantity;
            state.active_shout.reset();
        }
    }
    return trades;
}

std::vector<Trade> Market::run_round(int day, int round) {
    std::vector<std::size_t> order(traders_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng_);

    std::vector<Trade> trades;
    for (std::size_t i : order) {
        Trader& trader = traders_[i];
        const auto offer = trader.next_offer(history_, day, round);
        if (!offer) continue;
        place(trader, *offer, day, round);

        if (mechanism_.kind == MechanismKind::ContinuousDoubleAuction) {
            const MatchingSet m = me_match(book_);
            if (m.empty()) continue;
            const auto executed = execute(m, me_price_interval(book_), day, round);
            trades.insert(trades.end(), executed.begin(), executed.end());
        }
    }

    if (mechanism_.kind == MechanismKind::ClearingHouse) {
        const ClearingResult r = mtheta_match(mechanism_.theta, book_);
        const auto executed = execute(r.matching, r.price_interval, day, round);
        trades.insert(trades.end(), executed.begin(), executed.end());
    }
    return trades;
}

DayResult Market::run_day(int day, int rounds) {
    if (rounds < 1) throw InvalidArgument("a day needs at least one round");
    book_.clear();
    for (auto& t : traders_) {
        t.state().entitlement_remaining = 1;
        t.state().active_shout.reset();
    }

    DayResult result;
    result.day = day;
    for (int r = 0; r < rounds; ++r) {
        auto trades = run_round(day, r);
        result.trades.insert(result.trades.end(), trades.begin(), trades.end());
    }
    result.final_book = book_;
    result.report = efficiency_report(profile_, result.trades);
    return result;
}

} // namespace dauction
