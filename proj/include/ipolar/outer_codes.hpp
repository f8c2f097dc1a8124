#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipolar/bits.hpp"

namespace ipolar {

/// Generator polynomial for a CRC-style systematic encoder/detector.
/// Coefficients are stored highest degree first: generator[0] is the D^m
/// coefficient, generator[m] the constant term. Bit 0 of a word is the
/// highest-degree message coefficient (transmission order first = highest
/// degree); parity is appended with the constant coefficient last.
struct CrcSpec {
    std::vector<Bit> generator;

    int degree() const { return static_cast<int>(generator.size()) - 1; }

    static CrcSpec from_coefficients(std::vector<Bit> coeffs);

    /// g8A(D) = D^8 + D^7 + D^6 + D^5 + D^4 + D^3 + 1
    static CrcSpec g8a();
    /// g8B(D) = D^8 + D^7 + D^6 + D^4 + D^2 + 1
    static CrcSpec g8b();
};

/// Systematic CRC codeword msg || parity, parity = msg(D) D^m mod g(D).
BitWord crc_encode(const BitWord& msg, const CrcSpec& spec);

/// True iff word(D) is divisible by g(D).
bool crc_check(const BitWord& word, const CrcSpec& spec);

/// Primitive generator of the (2^m - 1, 2^m - m - 1) BCH/Hamming code.
/// Presets for m = 3 (D^3 + D + 1) and m = 8 (D^8 + D^4 + D^3 + D^2 + 1).
CrcSpec bch_generator(int m_param);

/// Systematic (2^m - 1, 2^m - m - 1) BCH encoding; message length enforced.
BitWord bch_encode(const BitWord& msg, int m_param);
bool bch_check(const BitWord& word, int m_param);

/// Systematic regular repeat-accumulate code: repeat each message bit dv
/// times, permute by inner_perm, accumulate, keep every dc-th output bit.
struct RraSpec {
    int k = 0;
    int dv = 0;
    int m_parity = 0;
    std::vector<int> inner_perm;  // size k*dv

    int dc() const { return k * dv / m_parity; }
    static RraSpec make(int k, int dv, int m_parity, std::uint64_t perm_seed);
    static RraSpec make_identity(int k, int dv, int m_parity);
};

BitWord rra_encode(const BitWord& msg, const RraSpec& spec);

/// Detector for the systematic RRA code: re-encode and compare parity.
bool rra_check(const BitWord& word, const RraSpec& spec);

/// Outer component code handle used by the concatenated scheme.
struct OuterCode {
    enum class Type { crc, bch, rra };
    Type type = Type::crc;
    CrcSpec crc;       // crc/bch
    int bch_m = 0;     // bch
    RraSpec rra;       // rra

    int message_len(int codeword_len) const;
    BitWord encode(const BitWord& msg) const;
    bool check(const BitWord& word) const;

    std::string to_json() const;
    static OuterCode from_json(const std::string& text);
};

}  // namespace ipolar
