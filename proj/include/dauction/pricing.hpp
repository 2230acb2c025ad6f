#pragma once

#include "dauction/core.hpp"
#include "dauction/matching.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace dauction {

enum class PricingRule {
    /// Every pair trades at the midpoint of the clearing interval.
    UniformMidOfInterval,
    /// Each pair trades at the midpoint of its own bid and ask.
    PairMidpoint,
};

PricingRule parse_pricing_rule(std::string_view name);
std::string_view to_string(PricingRule rule);

/// Turns matched pairs into trades. Prices are rounded half-up to the tick.
///
/// The uniform rule needs `interval` whenever there is something to price
/// (IntervalMissing otherwise) and refuses to price a pair whose spread does
/// not contain the uniform price (UniformInapplicable). This happens for
/// maximal-volume matchings, whose extra-marginal pairs sit outside the
/// equilibrium interval.
std::vector<Trade> price_matching(const MatchingSet& m, PricingRule rule,
                                  const std::optional<PriceInterval>& interval, int day = 0, int round = 0);

} // namespace dauction
