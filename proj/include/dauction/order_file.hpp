#pragma once

#include "dauction/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace dauction {

/// Reads one shout per line: `BID|ASK <price> <quantity> [trader_id]`.
/// Lines starting with `#` and blank lines are skipped. Shout ids are the
/// 1-based ordinal of the shout in the file; a missing trader id defaults to
/// that ordinal. Throws ParseError with the offending line number.
std::vector<Shout> read_orders(std::istream& in);
std::vector<Shout> read_orders(const std::filesystem::path& path);

} // namespace dauction
