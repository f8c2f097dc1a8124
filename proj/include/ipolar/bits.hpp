#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ipolar {

using Bit = std::uint8_t;

/// A 0/1 word. Length K in message contexts, N in codeword contexts.
using BitWord = std::vector<Bit>;

inline int hamming_weight(const BitWord& w) {
    int s = 0;
    for (Bit b : w) s += b;
    return s;
}

inline BitWord xor_words(const BitWord& a, const BitWord& b) {
    BitWord out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

// "0110..." <-> BitWord, used by the CLI and file formats
std::string to_bit_string(const BitWord& w);
BitWord from_bit_string(const std::string& s);

}  // namespace ipolar
