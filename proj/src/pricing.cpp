#include "dauction/pricing.hpp"

#include "dauction/errors.hpp"

#include <string>

namespace dauction {

PricingRule parse_pricing_rule(std::string_view name) {
    if (name == "uniform") return PricingRule::UniformMidOfInterval;
    if (name == "midpoint") return PricingRule::PairMidpoint;
    throw InvalidArgument("unknown pricing rule '" + std::string(name) + "' (expected uniform|midpoint)");
}

std::string_view to_string(PricingRule rule) {
    return rule == PricingRule::UniformMidOfInterval ? "uniform" : "midpoint";
}

std::vector<Trade> price_matching(const MatchingSet& m, PricingRule rule,
                                  const std::optional<PriceInterval>& interval, int day, int round) {
    std::vector<Trade> trades;
    if (m.empty()) return trades;
    trades.reserve(m.size());

    std::optional<Money> uniform;
    if (rule == PricingRule::UniformMidOfInterval) {
        if (!interval || interval->hi < interval->lo) throw IntervalMissing{};
        uniform = interval->midpoint();
    }

    for (const auto& [bid, ask] : m.pairs) {
        Money price = uniform ? *uniform : midpoint(bid.price, ask.price);
        if (price < ask.price || price > bid.price) {
            throw UniformInapplicable("uniform price " + price.to_string() + " lies outside pair spread [" +
                                      ask.price.to_string() + ", " + bid.price.to_string() + "]");
        }
        trades.push_back(Trade{bid.id, ask.id, bid.trader, ask.trader, price, bid.quantity, day, round});
    }
    return trades;
}

} // namespace dauction
