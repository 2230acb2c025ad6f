#include "dauction/errors.hpp"
#include "dauction/order_file.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dauction;

namespace {

std::vector<Shout> parse(const std::string& text) {
    std::istringstream in(text);
    return read_orders(in);
}

std::string message_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(OrderFile, ReadsShoutsSkippingCommentsAndBlankLines) {
    const auto shouts = parse("# header\n\nBID 10 1\n  ASK 7.5 3 42\r\n# trailing\n");
    ASSERT_EQ(shouts.size(), 2u);
    EXPECT_EQ(shouts[0].side, Side::Buy);
    EXPECT_EQ(shouts[0].price, Money::from_units(10));
    EXPECT_EQ(shouts[0].id, (ShoutId{1, 0}));
    EXPECT_EQ(shouts[0].trader, TraderId{1});
    EXPECT_EQ(shouts[1].side, Side::Sell);
    EXPECT_EQ(shouts[1].price, Money::from_ticks(750));
    EXPECT_EQ(shouts[1].quantity, 3);
    EXPECT_EQ(shouts[1].id, (ShoutId{2, 0}));
    EXPECT_EQ(shouts[1].trader, TraderId{42});
}

TEST(OrderFile, ErrorsCarryLineNumbers) {
    EXPECT_NE(message_of("BID 1 1\nOFFER 5 1\n").find("line 2"), std::string::npos);
    EXPECT_NE(message_of("BID 1 1\nBID 1 1\nASK -3 1\n").find("line 3"), std::string::npos);
    EXPECT_NE(message_of("BID 5 0\n").find("line 1"), std::string::npos);
    EXPECT_NE(message_of("BID 5\n").find("line 1"), std::string::npos);
    EXPECT_NE(message_of("BID 5 1 7 extra\n").find("line 1"), std::string::npos);
    EXPECT_NE(message_of("BID 5 1 x\n").find("line 1"), std::string::npos);
}

TEST(OrderFile, MissingFileIsAnError) {
    EXPECT_THROW(read_orders(std::filesystem::path("/nonexistent/orders.txt")), AuctionError);
}
