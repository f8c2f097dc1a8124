#pragma once

#include "ipolar/bits.hpp"
#include "ipolar/code_spec.hpp"
#include "ipolar/interleaver.hpp"

namespace ipolar {

/// x = u G2^{(x)M} (non-bit-reversed ordering); message bits fill the
/// unfrozen set in increasing index order, frozen positions are 0.
BitWord polar_encode(const BitWord& msg, const CodeSpec& spec);

/// Interleaved polar encoding: at each merge of two length-2^(m-1) blocks
/// the upper block is permuted, XORed onto the lower block and concatenated
/// with it. With the identity set this equals polar_encode.
BitWord ipolar_encode(const BitWord& msg, const CodeSpec& spec, const InterleaverSet& ils);

/// Places msg at the unfrozen indices of a length-N u-vector.
BitWord expand_message(const BitWord& msg, const CodeSpec& spec);

/// The raw transform stages on a full u-vector (test and tooling support).
BitWord polar_transform(const BitWord& u);
BitWord ipolar_transform(const BitWord& u, const InterleaverSet& ils);

}  // namespace ipolar
