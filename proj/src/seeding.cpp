#include "dauction/seeding.hpp"

#include <array>
#include <random>
#include <vector>

namespace dauction {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * keys.size());
    auto push = [&words](std::uint64_t x) {
        words.push_back(static_cast<std::uint32_t>(x));
        words.push_back(static_cast<std::uint32_t>(x >> 32));
    };
    push(base);
    for (auto k : keys) push(k);
    std::seed_seq seq(words.begin(), words.end());
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::uint64_t stable_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace dauction
