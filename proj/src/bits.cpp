#include "ipolar/bits.hpp"

#include <stdexcept>

namespace ipolar {

std::string to_bit_string(const BitWord& w) {
    std::string s;
    s.reserve(w.size());
    for (Bit b : w) s.push_back(b ? '1' : '0');
    return s;
}

BitWord from_bit_string(const std::string& s) {
    BitWord w;
    w.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            w.push_back(0);
        else if (c == '1')
            w.push_back(1);
        else
            throw std::invalid_argument("bit string may contain only '0'/'1'");
    }
    return w;
}

}  // namespace ipolar
