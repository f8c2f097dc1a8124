#include "ipolar/encode.hpp"

#include <stdexcept>

namespace ipolar {

BitWord expand_message(const BitWord& msg, const CodeSpec& spec) {
    if (static_cast<int>(msg.size()) != spec.dimension())
        throw std::invalid_argument("message length does not match code dimension");
    BitWord u(spec.block_len, 0);
    for (std::size_t t = 0; t < msg.size(); ++t) u[spec.unfrozen[t]] = msg[t];
    return u;
}

BitWord polar_transform(const BitWord& u) {
    BitWord x = u;
    const int n = static_cast<int>(x.size());
    for (int half = 1; half < n; half *= 2)
        for (int base = 0; base < n; base += 2 * half)
            for (int i = 0; i < half; ++i) x[base + i] ^= x[base + half + i];
    return x;
}

BitWord ipolar_transform(const BitWord& u, const InterleaverSet& ils) {
    BitWord x = u;
    const int n = static_cast<int>(x.size());
    if ((1 << ils.m_exp()) != n)
        throw std::invalid_argument("interleaver set sized for a different block length");
    BitWord upper;
    for (int half = 1, mu = 0; half < n; half *= 2, ++mu) {
        for (int j = 0; j < n / (2 * half); ++j) {
            const int base = 2 * j * half;
            if (mu >= 1) {
                const auto& p = ils.perm(mu, j);
                upper.assign(half, 0);
                for (int i = 0; i < half; ++i) upper[i] = x[base + p[i]];
                for (int i = 0; i < half; ++i) x[base + i] = upper[i] ^ x[base + half + i];
            } else {
                // stage-0 interleavers are trivial
                for (int i = 0; i < half; ++i) x[base + i] ^= x[base + half + i];
            }
        }
    }
    return x;
}

BitWord polar_encode(const BitWord& msg, const CodeSpec& spec) {
    return polar_transform(expand_message(msg, spec));
}

BitWord ipolar_encode(const BitWord& msg, const CodeSpec& spec, const InterleaverSet& ils) {
    if (ils.m_exp() != spec.m_exp)
        throw std::invalid_argument("interleaver set incompatible with code spec");
    return ipolar_transform(expand_message(msg, spec), ils);
}

}  // namespace ipolar
