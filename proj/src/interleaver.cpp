#include "ipolar/interleaver.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace ipolar {

bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

void InterleaverSet::allocate(int m_exp) {
    if (m_exp < 1) throw std::invalid_argument("m_exp must be >= 1");
    m_exp_ = m_exp;
    perms_.resize(m_exp >= 2 ? m_exp - 1 : 0);
    for (int mu = 1; mu < m_exp; ++mu) perms_[mu - 1].resize(std::size_t{1} << (m_exp - mu - 1));
}

InterleaverSet InterleaverSet::identity(int m_exp) {
    InterleaverSet ils;
    ils.allocate(m_exp);
    for (int mu = 1; mu < m_exp; ++mu) {
        std::vector<int> id(std::size_t{1} << mu);
        std::iota(id.begin(), id.end(), 0);
        for (auto& p : ils.perms_[mu - 1]) p = id;
    }
    return ils;
}

InterleaverSet InterleaverSet::sample(int m_exp, std::uint64_t seed) {
    InterleaverSet ils;
    ils.allocate(m_exp);
    ils.seed_ = static_cast<std::int64_t>(seed);
    std::mt19937_64 rng(seed);
    for (int mu = 1; mu < m_exp; ++mu) {
        for (auto& p : ils.perms_[mu - 1]) {
            p.resize(std::size_t{1} << mu);
            std::iota(p.begin(), p.end(), 0);
            // Fisher-Yates, uniform over all (2^mu)! permutations
            for (std::size_t i = p.size() - 1; i > 0; --i) {
                std::uniform_int_distribution<std::size_t> pick(0, i);
                std::swap(p[i], p[pick(rng)]);
            }
        }
    }
    return ils;
}

const std::vector<int>& InterleaverSet::perm(int mu, int j) const {
    return perms_.at(mu - 1).at(j);
}

std::vector<int>& InterleaverSet::perm(int mu, int j) {
    return perms_.at(mu - 1).at(j);
}

bool InterleaverSet::is_identity() const {
    for (const auto& level : perms_)
        for (const auto& p : level)
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] != static_cast<int>(i)) return false;
    return true;
}

std::string InterleaverSet::to_json() const {
    nlohmann::json j;
    j["m_exp"] = m_exp_;
    if (seed_ >= 0)
        j["seed"] = seed_;
    else
        j["seed"] = nullptr;
    nlohmann::json perms = nlohmann::json::object();
    for (int mu = 1; mu < m_exp_; ++mu)
        for (std::size_t jj = 0; jj < perms_[mu - 1].size(); ++jj)
            perms[std::to_string(mu) + "," + std::to_string(jj)] = perms_[mu - 1][jj];
    j["perms"] = perms;
    return j.dump(2);
}

InterleaverSet InterleaverSet::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const int m_exp = j.at("m_exp").get<int>();
    // explicit arrays take precedence over the seed
    if (j.contains("perms") && !j["perms"].empty()) {
        InterleaverSet ils;
        ils.allocate(m_exp);
        if (j.contains("seed") && !j["seed"].is_null()) ils.seed_ = j["seed"].get<std::int64_t>();
        std::size_t loaded = 0;
        for (int mu = 1; mu < m_exp; ++mu) {
            for (std::size_t jj = 0; jj < ils.perms_[mu - 1].size(); ++jj) {
                const std::string key = std::to_string(mu) + "," + std::to_string(jj);
                auto p = j["perms"].at(key).get<std::vector<int>>();
                if (p.size() != (std::size_t{1} << mu) || !is_permutation(p))
                    throw std::invalid_argument("entry " + key + " is not a permutation of the right size");
                ils.perms_[mu - 1][jj] = std::move(p);
                ++loaded;
            }
        }
        if (loaded != j["perms"].size())
            throw std::invalid_argument("interleaver file has extra permutation entries");
        return ils;
    }
    if (j.contains("seed") && !j["seed"].is_null())
        return sample(m_exp, j["seed"].get<std::uint64_t>());
    if (m_exp == 1) return identity(1);  // no nontrivial stages
    throw std::invalid_argument("interleaver file needs explicit perms or a seed");
}

}  // namespace ipolar
