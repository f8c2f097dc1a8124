#include "ipolar/outer_codes.hpp"

#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "ipolar/interleaver.hpp"

namespace ipolar {

CrcSpec CrcSpec::from_coefficients(std::vector<Bit> coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("generator degree must be >= 1");
    if (coeffs.front() != 1) throw std::invalid_argument("generator leading coefficient must be 1");
    for (Bit b : coeffs)
        if (b != 0 && b != 1) throw std::invalid_argument("generator coefficients must be 0/1");
    return CrcSpec{std::move(coeffs)};
}

CrcSpec CrcSpec::g8a() {
    // D^8 + D^7 + D^6 + D^5 + D^4 + D^3 + 1
    return from_coefficients({1, 1, 1, 1, 1, 1, 0, 0, 1});
}

CrcSpec CrcSpec::g8b() {
    // D^8 + D^7 + D^6 + D^4 + D^2 + 1
    return from_coefficients({1, 1, 1, 0, 1, 0, 1, 0, 1});
}

BitWord crc_encode(const BitWord& msg, const CrcSpec& spec) {
    const int m = spec.degree();
    // long division of msg(D) * D^m by g(D); remainder emerges in the register
    BitWord reg(msg);
    reg.resize(msg.size() + m, 0);
    for (std::size_t i = 0; i < msg.size(); ++i) {
        if (reg[i] == 0) continue;
        for (int t = 0; t <= m; ++t) reg[i + t] ^= spec.generator[t];
    }
    BitWord out(msg);
    out.insert(out.end(), reg.end() - m, reg.end());
    return out;
}

bool crc_check(const BitWord& word, const CrcSpec& spec) {
    const int m = spec.degree();
    if (static_cast<int>(word.size()) <= m)
        throw std::invalid_argument("word too short for the generator degree");
    BitWord reg(word);
    for (std::size_t i = 0; i + m < reg.size(); ++i) {
        if (reg[i] == 0) continue;
        for (int t = 0; t <= m; ++t) reg[i + t] ^= spec.generator[t];
    }
    for (std::size_t i = reg.size() - m; i < reg.size(); ++i)
        if (reg[i]) return false;
    return true;
}

CrcSpec bch_generator(int m_param) {
    switch (m_param) {
        case 3:
            return CrcSpec::from_coefficients({1, 0, 1, 1});  // D^3 + D + 1
        case 8:
            return CrcSpec::from_coefficients({1, 0, 0, 0, 1, 1, 1, 0, 1});  // D^8+D^4+D^3+D^2+1
        default:
            throw std::invalid_argument("bch_generator: no primitive preset for this m");
    }
}

BitWord bch_encode(const BitWord& msg, int m_param) {
    const int n = (1 << m_param) - 1;
    const int k = n - m_param;
    if (static_cast<int>(msg.size()) != k)
        throw std::invalid_argument("bch_encode: message length must be 2^m - m - 1");
    return crc_encode(msg, bch_generator(m_param));
}

bool bch_check(const BitWord& word, int m_param) {
    const int n = (1 << m_param) - 1;
    if (static_cast<int>(word.size()) != n)
        throw std::invalid_argument("bch_check: word length must be 2^m - 1");
    return crc_check(word, bch_generator(m_param));
}

RraSpec RraSpec::make(int k, int dv, int m_parity, std::uint64_t perm_seed) {
    RraSpec spec = make_identity(k, dv, m_parity);
    std::mt19937_64 rng(perm_seed);
    for (std::size_t i = spec.inner_perm.size() - 1; i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i);
        std::swap(spec.inner_perm[i], spec.inner_perm[pick(rng)]);
    }
    return spec;
}

RraSpec RraSpec::make_identity(int k, int dv, int m_parity) {
    if (k < 1 || dv < 1 || m_parity < 1) throw std::invalid_argument("RraSpec: bad parameters");
    if ((static_cast<long long>(k) * dv) % m_parity != 0)
        throw std::invalid_argument("RraSpec: k*dv must be divisible by m_parity");
    RraSpec spec;
    spec.k = k;
    spec.dv = dv;
    spec.m_parity = m_parity;
    spec.inner_perm.resize(static_cast<std::size_t>(k) * dv);
    std::iota(spec.inner_perm.begin(), spec.inner_perm.end(), 0);
    return spec;
}

BitWord rra_encode(const BitWord& msg, const RraSpec& spec) {
    if (static_cast<int>(msg.size()) != spec.k)
        throw std::invalid_argument("rra_encode: message length mismatch");
    const std::size_t n_acc = msg.size() * spec.dv;
    BitWord repeated(n_acc);
    for (std::size_t i = 0; i < n_acc; ++i) repeated[i] = msg[i / spec.dv];
    BitWord interleaved(n_acc);
    for (std::size_t i = 0; i < n_acc; ++i) interleaved[i] = repeated[spec.inner_perm[i]];
    // accumulator with regular puncture: keep positions dc-1, 2dc-1, ...
    const int dc = spec.dc();
    BitWord out(msg);
    Bit acc = 0;
    for (std::size_t i = 0; i < n_acc; ++i) {
        acc ^= interleaved[i];
        if (static_cast<int>(i % dc) == dc - 1) out.push_back(acc);
    }
    return out;
}

bool rra_check(const BitWord& word, const RraSpec& spec) {
    if (static_cast<int>(word.size()) != spec.k + spec.m_parity)
        throw std::invalid_argument("rra_check: word length mismatch");
    const BitWord msg(word.begin(), word.begin() + spec.k);
    return rra_encode(msg, spec) == word;
}

int OuterCode::message_len(int codeword_len) const {
    switch (type) {
        case Type::crc:
            return codeword_len - crc.degree();
        case Type::bch:
            return (1 << bch_m) - bch_m - 1;
        case Type::rra:
            return rra.k;
    }
    throw std::logic_error("unreachable");
}

BitWord OuterCode::encode(const BitWord& msg) const {
    switch (type) {
        case Type::crc:
            return crc_encode(msg, crc);
        case Type::bch:
            return bch_encode(msg, bch_m);
        case Type::rra:
            return rra_encode(msg, rra);
    }
    throw std::logic_error("unreachable");
}

bool OuterCode::check(const BitWord& word) const {
    switch (type) {
        case Type::crc:
            return crc_check(word, crc);
        case Type::bch:
            return bch_check(word, bch_m);
        case Type::rra:
            return rra_check(word, rra);
    }
    throw std::logic_error("unreachable");
}

std::string OuterCode::to_json() const {
    nlohmann::json j;
    switch (type) {
        case Type::crc:
            j["type"] = "crc";
            j["generator"] = crc.generator;
            break;
        case Type::bch:
            j["type"] = "bch";
            j["m"] = bch_m;
            break;
        case Type::rra:
            j["type"] = "rra";
            j["k"] = rra.k;
            j["dv"] = rra.dv;
            j["m_parity"] = rra.m_parity;
            j["inner_perm"] = rra.inner_perm;
            break;
    }
    return j.dump(2);
}

OuterCode OuterCode::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    OuterCode oc;
    const std::string type = j.at("type").get<std::string>();
    if (type == "crc") {
        oc.type = Type::crc;
        oc.crc = CrcSpec::from_coefficients(j.at("generator").get<std::vector<Bit>>());
    } else if (type == "bch") {
        oc.type = Type::bch;
        oc.bch_m = j.at("m").get<int>();
        oc.crc = bch_generator(oc.bch_m);
    } else if (type == "rra") {
        oc.type = Type::rra;
        const int k = j.at("k").get<int>();
        const int dv = j.at("dv").get<int>();
        const int mp = j.at("m_parity").get<int>();
        if (j.contains("inner_perm")) {
            oc.rra = RraSpec::make_identity(k, dv, mp);
            auto p = j["inner_perm"].get<std::vector<int>>();
            if (p.size() != oc.rra.inner_perm.size() || !is_permutation(p))
                throw std::invalid_argument("rra inner_perm is not a valid permutation");
            oc.rra.inner_perm = std::move(p);
        } else {
            oc.rra = RraSpec::make(k, dv, mp, j.at("perm_seed").get<std::uint64_t>());
        }
    } else {
        throw std::invalid_argument("unknown outer code type: " + type);
    }
    return oc;
}

}  // namespace ipolar
