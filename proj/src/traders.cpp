#include "dauction/traders.hpp"

#include "dauction/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <tuple>

namespace dauction {

namespace {

std::size_t parse_count(std::string_view text, std::string_view what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::string money_label(Money m) {
    if (m.ticks % kPriceScale == 0) return std::to_string(m.ticks / kPriceScale);
    return m.to_string();
}

} // namespace

StrategySpec StrategySpec::parse(std::string_view text) {
    StrategySpec spec;
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (name == "tt" && colon == std::string_view::npos) {
        spec.kind = StrategyKind::TruthTelling;
    } else if (name == "ps" && !args.empty()) {
        spec.kind = StrategyKind::PureSimple;
        spec.delta = Money::parse(args);
    } else if (name == "zic" && colon == std::string_view::npos) {
        spec.kind = StrategyKind::ZeroIntelligenceConstrained;
    } else if (name == "gd") {
        spec.kind = StrategyKind::GjerstadDickhaut;
        if (colon != std::string_view::npos) {
            const auto comma = args.find(',');
            if (comma == std::string_view::npos) throw ParseError("gd expects gd:<memory>,<grid>");
            spec.memory = parse_count(args.substr(0, comma), "gd memory");
            spec.grid = parse_count(args.substr(comma + 1), "gd grid");
        }
        if (spec.memory < 1) throw ParseError("gd memory must be at least 1");
        if (spec.grid < 2) throw ParseError("gd grid must have at least 2 points");
    } else {
        throw ParseError("unknown strategy '" + std::string(text) + "' (expected tt | ps:<delta> | zic | gd[:memory,grid])");
    }
    return spec;
}

std::string StrategySpec::label() const {
    switch (kind) {
    case StrategyKind::TruthTelling:
        return "tt";
    case StrategyKind::PureSimple:
        return "ps:" + money_label(delta);
    case StrategyKind::ZeroIntelligenceConstrained:
        return "zic";
    case StrategyKind::GjerstadDickhaut:
        if (memory == 8 && grid == 64) return "gd";
        return "gd:" + std::to_string(memory) + "," + std::to_string(grid);
    }
    return "?";
}

void MarketHistory::record_shout(const Shout& shout, int day, int round) {
    if (!shouts_.empty() && std::tie(day, round) < std::tie(shouts_.back().day, shouts_.back().round)) {
        throw InvalidArgument("history records must be appended in chronological order");
    }
    index_[shout.id] = shouts_.size();
    shouts_.push_back(ShoutRecord{shout.id, shout.side, shout.price, false, day, round});
}

void MarketHistory::mark_accepted(const ShoutId& id) {
    if (auto it = index_.find(id); it != index_.end()) shouts_[it->second].accepted = true;
}

std::span<const ShoutRecord> MarketHistory::window(std::size_t memory, int day, int round) const {
    const auto end = std::partition_point(shouts_.begin(), shouts_.end(), [&](const ShoutRecord& r) {
        return std::tie(r.day, r.round) < std::tie(day, round);
    });
    const auto available = static_cast<std::size_t>(end - shouts_.begin());
    const std::size_t take = std::min(memory, available);
    return {shouts_.data() + (available - take), take};
}

Money tt_offer(const TraderState& state) { return state.private_value; }

Money ps_offer(const TraderState& state, Money delta) {
    if (delta < Money{}) throw InvalidArgument("markup must be non-negative");
    if (state.side == Side::Buy) return std::max(state.private_value - delta, Money{});
    return state.private_value + delta;
}

Money zic_offer(const TraderState& state, Rng& rng) {
    const std::int64_t v = state.private_value.ticks;
    if (state.side == Side::Buy) return Money::from_ticks(std::uniform_int_distribution<std::int64_t>(0, v)(rng));
    return Money::from_ticks(std::uniform_int_distribution<std::int64_t>(v, 2 * v)(rng));
}

namespace {

/// Unsmoothed acceptance ratio at a price.
double raw_belief(std::span<const ShoutRecord> window, Side side, Money price) {
    std::size_t favourable = 0;
    std::size_t rejected = 0;
    for (const auto& r : window) {
        if (side == Side::Sell) {
            if (r.side == Side::Sell && r.accepted && r.price >= price) ++favourable;
            if (r.side == Side::Buy && r.price >= price) ++favourable;
            if (r.side == Side::Sell && !r.accepted && r.price <= price) ++rejected;
        } else {
            if (r.side == Side::Buy && r.accepted && r.price <= price) ++favourable;
            if (r.side == Side::Sell && r.price <= price) ++favourable;
            if (r.side == Side::Buy && !r.accepted && r.price >= price) ++rejected;
        }
    }
    const std::size_t total = favourable + rejected;
    return total == 0 ? 0.0 : static_cast<double>(favourable) / static_cast<double>(total);
}

} // namespace

std::optional<double> gd_belief(std::span<const ShoutRecord> window, Side side, Money price) {
    if (window.empty()) return std::nullopt;
    std::set<Money> knots;
    for (const auto& r : window) knots.insert(r.price);

    auto upper = knots.lower_bound(price);
    if (upper == knots.end() || *upper == price || upper == knots.begin()) {
        return raw_belief(window, side, price);
    }
    auto lower = std::prev(upper);
    const double lo = raw_belief(window, side, *lower);
    const double hi = raw_belief(window, side, *upper);
    const double t = static_cast<double>((price - *lower).ticks) / static_cast<double>((*upper - *lower).ticks);
    return lo + t * (hi - lo);
}

std::optional<Money> gd_offer(const TraderState& state, std::span<const ShoutRecord> window, std::size_t grid) {
    if (window.empty()) return std::nullopt;
    const Money v = state.private_value;
    Money lo = Money{};
    Money hi = v;
    if (state.side == Side::Sell) {
        lo = v;
        for (const auto& r : window) hi = std::max(hi, r.price);
    }

    std::vector<Money> candidates;
    for (const auto& r : window) {
        if (r.price >= lo && r.price <= hi) candidates.push_back(r.price);
    }
    const std::size_t points = std::max<std::size_t>(grid, 2);
    for (std::size_t k = 0; k < points; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(points - 1);
        const auto offset = static_cast<std::int64_t>(std::llround(frac * static_cast<double>((hi - lo).ticks)));
        candidates.push_back(lo + Money::from_ticks(offset));
    }

    Money best = v;
    double best_utility = -1.0;
    for (Money p : candidates) {
        const double surplus = abs(p - v).to_double();
        const double utility = *gd_belief(window, state.side, p) * surplus;
        const bool better = utility > best_utility + 1e-12;
        const bool tie_closer = std::abs(utility - best_utility) <= 1e-12 && abs(p - v) < abs(best - v);
        if (better || tie_closer) {
            best = p;
            best_utility = utility;
        }
    }
    return best;
}

Money gd_opening_quote(const TraderState& state) {
    return state.side == Side::Buy ? Money{} : state.private_value * 2;
}

Trader::Trader(TraderState state, StrategySpec strategy)
    : state_(state), strategy_(strategy), rng_(strategy.rng_seed) {
    if (state_.private_value < Money{}) throw InvalidArgument("private value must be non-negative");
}

std::optional<Money> Trader::next_offer(const MarketHistory& history, int day, int round) {
    if (state_.entitlement_remaining < 1) return std::nullopt;
    switch (strategy_.kind) {
    case StrategyKind::TruthTelling:
        return tt_offer(state_);
    case StrategyKind::PureSimple:
        return ps_offer(state_, strategy_.delta);
    case StrategyKind::ZeroIntelligenceConstrained:
        return zic_offer(state_, rng_);
    case StrategyKind::GjerstadDickhaut: {
        const auto window = history.window(strategy_.memory, day, round);
        if (auto price = gd_offer(state_, window, strategy_.grid)) return price;
        return gd_opening_quote(state_);
    }
    }
    return std::nullopt;
}

} // namespace dauction
