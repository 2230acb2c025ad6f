#include "dauction/core.hpp"

#include "dauction/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace dauction {

Money Money::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty price");
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);

    auto all_digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (whole.empty() || !all_digits(whole) || !all_digits(frac)) {
        throw ParseError("malformed price '" + std::string(text) + "'");
    }
    if (dot != std::string_view::npos && frac.empty()) {
        throw ParseError("malformed price '" + std::string(text) + "'");
    }

    int scale_digits = 0;
    for (std::int64_t s = kPriceScale; s > 1; s /= 10) ++scale_digits;
    if (static_cast<int>(frac.size()) > scale_digits) {
        throw ParseError("price '" + std::string(text) + "' has more decimals than the price scale");
    }

    std::int64_t units = 0;
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
    if (ec != std::errc{} || ptr != whole.data() + whole.size()) {
        throw ParseError("price out of range '" + std::string(text) + "'");
    }
    std::int64_t ticks = units * kPriceScale;
    std::int64_t place = kPriceScale;
    for (char c : frac) {
        place /= 10;
        ticks += (c - '0') * place;
    }
    return Money{ticks};
}

std::string Money::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, Money m) {
    std::int64_t t = m.ticks;
    if (t < 0) {
        os << '-';
        t = -t;
    }
    os << t / kPriceScale << '.';
    const std::int64_t frac = t % kPriceScale;
    for (std::int64_t s = kPriceScale / 10; s >= 1; s /= 10) os << (frac / s) % 10;
    return os;
}

std::string_view to_string(Side side) {
    return side == Side::Buy ? "BID" : "ASK";
}

std::string ShoutId::to_string() const {
    std::string s = std::to_string(seq);
    if (unit != 0) s += ":" + std::to_string(unit);
    return s;
}

std::vector<Shout> split_multi_unit(const Shout& shout) {
    if (shout.quantity < 1) throw InvalidArgument("shout quantity must be at least 1");
    if (shout.quantity == 1) return {shout};
    std::vector<Shout> units;
    units.reserve(static_cast<std::size_t>(shout.quantity));
    for (Quantity k = 1; k <= shout.quantity; ++k) {
        Shout u = shout;
        u.id = ShoutId{shout.id.seq, static_cast<std::uint32_t>(k)};
        u.quantity = 1;
        units.push_back(u);
    }
    return units;
}

void OrderBook::validate(const Shout& s) {
    if (s.price < Money{}) throw InvalidArgument("shout " + s.id.to_string() + " has a negative price");
    if (s.quantity < 1) throw InvalidArgument("shout " + s.id.to_string() + " has quantity below 1");
}

OrderBook::OrderBook(std::vector<Shout> shouts) {
    for (auto& s : shouts) {
        validate(s);
        if (s.quantity != 1) ++multi_unit_count_;
        (s.side == Side::Buy ? bids_ : asks_).push_back(s);
    }
    std::sort(bids_.begin(), bids_.end(), PriceThenId{});
    std::sort(asks_.begin(), asks_.end(), PriceThenId{});
    check_unique_ids();
}

OrderBook::OrderBook(std::vector<Shout> bids, std::vector<Shout> asks)
    : bids_(std::move(bids)), asks_(std::move(asks)) {
    for (const auto& s : bids_) {
        validate(s);
        if (s.side != Side::Buy) throw InvalidArgument("ask placed on the bid side");
        if (s.quantity != 1) ++multi_unit_count_;
    }
    for (const auto& s : asks_) {
        validate(s);
        if (s.side != Side::Sell) throw InvalidArgument("bid placed on the ask side");
        if (s.quantity != 1) ++multi_unit_count_;
    }
    std::sort(bids_.begin(), bids_.end(), PriceThenId{});
    std::sort(asks_.begin(), asks_.end(), PriceThenId{});
    check_unique_ids();
}

void OrderBook::check_unique_ids() const {
    std::vector<ShoutId> ids;
    ids.reserve(size());
    for (const auto& s : bids_) ids.push_back(s.id);
    for (const auto& s : asks_) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw InvalidArgument("duplicate shout id in order book");
    }
}

void OrderBook::add(const Shout& shout) {
    validate(shout);
    auto has_id = [&](const Shout& s) { return s.id == shout.id; };
    if (std::any_of(bids_.begin(), bids_.end(), has_id) || std::any_of(asks_.begin(), asks_.end(), has_id)) {
        throw InvalidArgument("shout " + shout.id.to_string() + " already in book");
    }
    auto& side = shout.side == Side::Buy ? bids_ : asks_;
    side.insert(std::upper_bound(side.begin(), side.end(), shout, PriceThenId{}), shout);
    if (shout.quantity != 1) ++multi_unit_count_;
}

bool OrderBook::remove(const ShoutId& id) {
    for (auto* side : {&bids_, &asks_}) {
        auto it = std::find_if(side->begin(), side->end(), [&](const Shout& s) { return s.id == id; });
        if (it != side->end()) {
            if (it->quantity != 1) --multi_unit_count_;
            side->erase(it);
            return true;
        }
    }
    return false;
}

void OrderBook::clear() {
    bids_.clear();
    asks_.clear();
    multi_unit_count_ = 0;
}

namespace {

Quantity sum_quantity(std::span<const Shout> shouts) {
    return std::accumulate(shouts.begin(), shouts.end(), Quantity{0},
                           [](Quantity acc, const Shout& s) { return acc + s.quantity; });
}

} // namespace

Quantity OrderBook::total_demand() const { return sum_quantity(bids_); }
Quantity OrderBook::total_supply() const { return sum_quantity(asks_); }

OrderBook normalize(const OrderBook& book) {
    if (book.is_unit()) return book;
    std::vector<Shout> bids;
    std::vector<Shout> asks;
    for (const auto& s : book.bids()) {
        auto units = split_multi_unit(s);
        bids.insert(bids.end(), units.begin(), units.end());
    }
    for (const auto& s : book.asks()) {
        auto units = split_multi_unit(s);
        asks.insert(asks.end(), units.begin(), units.end());
    }
    return OrderBook(std::move(bids), std::move(asks));
}

Quantity supply_at(const OrderBook& book, Money p) {
    const auto asks = book.asks();
    const auto end = std::partition_point(asks.begin(), asks.end(), [p](const Shout& a) { return a.price <= p; });
    return sum_quantity({asks.begin(), end});
}

Quantity demand_at(const OrderBook& book, Money p) {
    const auto bids = book.bids();
    const auto begin = std::partition_point(bids.begin(), bids.end(), [p](const Shout& b) { return b.price < p; });
    return sum_quantity({begin, bids.end()});
}

Quantity MatchingSet::volume() const {
    return std::accumulate(pairs.begin(), pairs.end(), Quantity{0},
                           [](Quantity acc, const MatchPair& m) { return acc + m.bid.quantity; });
}

} // namespace dauction
