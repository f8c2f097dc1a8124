#include "ipolar/code_spec.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace ipolar {

CodeSpec CodeSpec::make(int m_exp, std::vector<int> unfrozen) {
    if (m_exp < 1 || m_exp > 30) throw std::invalid_argument("m_exp must be in [1, 30]");
    const int n = 1 << m_exp;
    if (unfrozen.empty()) throw std::invalid_argument("unfrozen set must be nonempty");
    if (static_cast<int>(unfrozen.size()) > n)
        throw std::invalid_argument("unfrozen set larger than block length");
    std::sort(unfrozen.begin(), unfrozen.end());
    for (std::size_t i = 0; i < unfrozen.size(); ++i) {
        if (unfrozen[i] < 0 || unfrozen[i] >= n)
            throw std::invalid_argument("unfrozen index out of range");
        if (i > 0 && unfrozen[i] == unfrozen[i - 1])
            throw std::invalid_argument("duplicate unfrozen index");
    }
    CodeSpec spec;
    spec.m_exp = m_exp;
    spec.block_len = n;
    spec.unfrozen = std::move(unfrozen);
    return spec;
}

bool CodeSpec::is_unfrozen(int idx) const {
    return std::binary_search(unfrozen.begin(), unfrozen.end(), idx);
}

std::string CodeSpec::to_json() const {
    nlohmann::json j;
    j["m_exp"] = m_exp;
    j["k"] = dimension();
    j["unfrozen"] = unfrozen;
    return j.dump(2);
}

CodeSpec CodeSpec::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return make(j.at("m_exp").get<int>(), j.at("unfrozen").get<std::vector<int>>());
}

}  // namespace ipolar
