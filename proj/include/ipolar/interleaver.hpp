#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ipolar {

/// The per-stage permutations of one i-polar realization.
///
/// Stores Pi(mu, j) for mu in [1, M-1] and j in [0, 2^(M-mu-1)), each a
/// permutation of {0..2^mu-1}. The size-1 stage-0 interleavers are trivial
/// and omitted. The identity set reproduces the regular polar code.
class InterleaverSet {
public:
    InterleaverSet() = default;  // empty placeholder; populate via identity/sample/from_json

    /// All permutations identity (regular polar code).
    static InterleaverSet identity(int m_exp);

    /// Every permutation drawn uniformly and independently (Fisher-Yates)
    /// from a deterministic seeded generator.
    static InterleaverSet sample(int m_exp, std::uint64_t seed);

    int m_exp() const { return m_exp_; }

    /// Permutation Pi(mu, j); gather convention: out[i] = in[perm[i]].
    /// mu in [1, m_exp-1], j in [0, 2^(m_exp-mu-1)).
    const std::vector<int>& perm(int mu, int j) const;
    std::vector<int>& perm(int mu, int j);

    bool is_identity() const;

    /// Structured-text round trip. Explicit permutation arrays take
    /// precedence over the recorded seed when loading.
    std::string to_json() const;
    static InterleaverSet from_json(const std::string& text);

    bool operator==(const InterleaverSet& other) const = default;

private:
    void allocate(int m_exp);

    int m_exp_ = 0;
    std::int64_t seed_ = -1;  // <0: none recorded
    // perms_[mu-1][j]
    std::vector<std::vector<std::vector<int>>> perms_;
};

/// True iff p is a bijection on {0..p.size()-1}.
bool is_permutation(const std::vector<int>& p);

}  // namespace ipolar
