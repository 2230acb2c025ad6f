#pragma once

#include <stdexcept>
#include <string>

namespace dauction {

/// Base class for every error raised by the library.
class AuctionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public AuctionError {
public:
    using AuctionError::AuctionError;
};

/// The book has no crossing bid/ask pair, so no equilibrium price exists.
class NoCross : public AuctionError {
public:
    NoCross() : AuctionError("book has no crossing bid/ask pair") {}
};

/// Instance exceeds the size bound of a brute-force oracle.
class TooLarge : public AuctionError {
public:
    using AuctionError::AuctionError;
};

class IntervalMissing : public AuctionError {
public:
    IntervalMissing() : AuctionError("uniform pricing requires a clearing price interval") {}
};

/// The uniform price falls outside some pair's [ask, bid] spread.
class UniformInapplicable : public AuctionError {
public:
    using AuctionError::AuctionError;
};

class UnknownTrader : public AuctionError {
public:
    using AuctionError::AuctionError;
};

class ParseError : public AuctionError {
public:
    using AuctionError::AuctionError;
};

} // namespace dauction
