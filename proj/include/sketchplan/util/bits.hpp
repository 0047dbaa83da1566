#ifndef SKETCHPLAN_UTIL_BITS_H
#define SKETCHPLAN_UTIL_BITS_H

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace sketchplan::util {

using Bitset = boost::dynamic_bitset<uint64_t>;

/*
  64-bit FNV-1a over the bitset's words. Stable across runs, used for state
  digests and hash tables. The block copy goes through a reused thread-local
  buffer because dynamic_bitset exposes its words only via to_block_range.
*/
inline uint64_t hash_bits(const Bitset &bits) {
    thread_local std::vector<uint64_t> buffer;
    buffer.resize(bits.num_blocks());
    boost::to_block_range(bits, buffer.begin());
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t word : buffer) {
        h ^= word;
        h *= 0x100000001b3ull;
    }
    return h;
}

/* hash_bits rendered as 16 lowercase hex digits. */
inline std::string hex_digest(const Bitset &bits) {
    static const char *digits = "0123456789abcdef";
    uint64_t h = hash_bits(bits);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

/* Indices of set bits in ascending order. */
inline std::vector<int> bit_indices(const Bitset &bits) {
    std::vector<int> out;
    for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i))
        out.push_back(static_cast<int>(i));
    return out;
}

template <typename F>
void for_each_bit(const Bitset &bits, F &&f) {
    for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i))
        f(static_cast<int>(i));
}

} // namespace sketchplan::util

#endif
