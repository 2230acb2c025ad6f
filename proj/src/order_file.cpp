#include "dauction/order_file.hpp"

#include "dauction/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

namespace dauction {

namespace {

template <typename Int>
Int parse_int(const std::string& token, std::size_t line_no, const char* what) {
    Int value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + token + "'");
    }
    return value;
}

} // namespace

std::vector<Shout> read_orders(std::istream& in) {
    std::vector<Shout> shouts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        std::string side_tok, price_tok, qty_tok, trader_tok, extra;
        fields >> side_tok >> price_tok >> qty_tok;
        if (qty_tok.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected BID|ASK <price> <quantity> [trader_id]");
        }
        fields >> trader_tok >> extra;
        if (!extra.empty()) throw ParseError("line " + std::to_string(line_no) + ": trailing fields");

        Shout s;
        if (side_tok == "BID") {
            s.side = Side::Buy;
        } else if (side_tok == "ASK") {
            s.side = Side::Sell;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown side '" + side_tok + "'");
        }
        try {
            s.price = Money::parse(price_tok);
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        s.quantity = parse_int<Quantity>(qty_tok, line_no, "quantity");
        if (s.quantity < 1) throw ParseError("line " + std::to_string(line_no) + ": quantity must be >= 1");

        const std::uint64_t ordinal = shouts.size() + 1;
        s.id = ShoutId{ordinal, 0};
        s.trader = TraderId{trader_tok.empty() ? ordinal : parse_int<std::uint64_t>(trader_tok, line_no, "trader id")};
        shouts.push_back(s);
    }
    return shouts;
}

std::vector<Shout> read_orders(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open order file " + path.string());
    try {
        return read_orders(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace dauction
