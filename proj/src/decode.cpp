#include "ipolar/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "ipolar/wef.hpp"  // ResourceLimitError

namespace ipolar {

namespace {

constexpr double kLlrSaturation = 1e30;

double log1p_exp(double x) {
    // log(1 + e^x)
    if (x > 36.0) return x;
    if (x < -745.0) return 0.0;
    return std::log1p(std::exp(x));
}

double boxplus(double a, double b) {
    const double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    return sign * std::min(std::abs(a), std::abs(b)) + log1p_exp(-std::abs(a + b)) -
           log1p_exp(-std::abs(a - b));
}

double penalty(double llr, Bit bit) {
    // log(1 + e^-(1-2u) llr): zero-cost when the decision follows the sign
    return log1p_exp(bit ? llr : -llr);
}

/// Per-path state, packed by level: level m lives at offset 2^m - 1 with
/// 2^m entries, for m = 0 .. M-1 (the level-M channel LLRs are shared).
struct PathState {
    std::vector<double> llr;
    std::vector<Bit> up;   // saved upper-child codewords
    std::vector<Bit> cur;  // current node codeword
    BitWord u;             // bit decisions
    double pm = 0.0;
};

class SclEngine {
public:
    SclEngine(const std::vector<double>& channel_llr, const CodeSpec& spec,
              const InterleaverSet& ils, int list_size)
        : spec_(spec), ils_(ils), list_cap_(list_size) {
        if (static_cast<int>(channel_llr.size()) != spec.block_len)
            throw std::invalid_argument("LLR vector length does not match block length");
        if (ils.m_exp() != spec.m_exp)
            throw std::invalid_argument("interleaver set incompatible with code spec");
        if (list_size < 1) throw std::invalid_argument("list size must be >= 1");
        root_llr_.resize(channel_llr.size());
        for (std::size_t i = 0; i < channel_llr.size(); ++i)
            root_llr_[i] = std::clamp(channel_llr[i], -kLlrSaturation, kLlrSaturation);
    }

    CandidateList run() {
        const int n_state = spec_.block_len - 1;  // levels 0..M-1
        PathState root;
        root.llr.assign(std::max(n_state, 1), 0.0);
        root.up.assign(std::max(n_state, 1), 0);
        root.cur.assign(std::max(n_state, 1), 0);
        root.u.assign(spec_.block_len, 0);
        paths_.push_back(std::move(root));

        leaf_idx_ = 0;
        node(spec_.m_exp, 0);

        std::sort(paths_.begin(), paths_.end(), [](const PathState& a, const PathState& b) {
            if (a.pm != b.pm) return a.pm < b.pm;
            return a.u < b.u;  // deterministic order on exact metric ties
        });
        CandidateList out;
        out.entries.reserve(paths_.size());
        for (const auto& p : paths_) {
            Candidate c;
            c.message.reserve(spec_.dimension());
            for (int idx : spec_.unfrozen) c.message.push_back(p.u[idx]);
            c.path_metric = p.pm;
            out.entries.push_back(std::move(c));
        }
        return out;
    }

private:
    static constexpr int offset(int m) { return (1 << m) - 1; }

    const double* level_llr(const PathState& p, int m) const {
        return m == spec_.m_exp ? root_llr_.data() : p.llr.data() + offset(m);
    }

    void node(int m, int j) {
        if (m == 0) {
            leaf();
            return;
        }
        const int n = 1 << (m - 1);
        const int child = offset(m - 1);
        const std::vector<int>* perm = (m - 1 >= 1) ? &ils_.perm(m - 1, j) : nullptr;

        for (auto& p : paths_) {
            const double* src = level_llr(p, m);
            double* dst = p.llr.data() + child;
            for (int i = 0; i < n; ++i) {
                const double f = boxplus(src[i], src[n + i]);
                dst[perm ? (*perm)[i] : i] = f;
            }
        }
        node(m - 1, 2 * j);

        for (auto& p : paths_) {
            std::copy(p.cur.begin() + child, p.cur.begin() + child + n, p.up.begin() + child);
            const double* src = level_llr(p, m);
            double* dst = p.llr.data() + child;
            for (int i = 0; i < n; ++i) {
                const Bit interleaved = p.up[child + (perm ? (*perm)[i] : i)];
                dst[i] = src[n + i] + (interleaved ? -src[i] : src[i]);
            }
        }
        node(m - 1, 2 * j + 1);

        if (m < spec_.m_exp) {
            const int self = offset(m);
            for (auto& p : paths_) {
                for (int i = 0; i < n; ++i) {
                    const Bit interleaved = p.up[child + (perm ? (*perm)[i] : i)];
                    p.cur[self + i] = interleaved ^ p.cur[child + i];
                    p.cur[self + n + i] = p.cur[child + i];
                }
            }
        }
    }

    void leaf() {
        const int j = leaf_idx_++;
        if (!spec_.is_unfrozen(j)) {
            for (auto& p : paths_) {
                p.pm += penalty(p.llr[0], 0);
                p.cur[0] = 0;
                p.u[j] = 0;
            }
            return;
        }

        struct Fork {
            double pm;
            int src;
            Bit bit;
        };
        std::vector<Fork> forks;
        forks.reserve(paths_.size() * 2);
        for (std::size_t l = 0; l < paths_.size(); ++l) {
            forks.push_back({paths_[l].pm + penalty(paths_[l].llr[0], 0), static_cast<int>(l), 0});
            forks.push_back({paths_[l].pm + penalty(paths_[l].llr[0], 1), static_cast<int>(l), 1});
        }
        if (static_cast<int>(forks.size()) > list_cap_) {
            // boundary ties resolve by path index, then bit value
            std::sort(forks.begin(), forks.end(), [](const Fork& a, const Fork& b) {
                if (a.pm != b.pm) return a.pm < b.pm;
                if (a.src != b.src) return a.src < b.src;
                return a.bit < b.bit;
            });
            forks.resize(list_cap_);
        }

        std::vector<int> uses(paths_.size(), 0);
        for (const auto& f : forks) ++uses[f.src];
        std::vector<PathState> next;
        next.reserve(forks.size());
        for (const auto& f : forks) {
            if (--uses[f.src] == 0)
                next.push_back(std::move(paths_[f.src]));
            else
                next.push_back(paths_[f.src]);
            PathState& p = next.back();
            p.pm = f.pm;
            p.cur[0] = f.bit;
            p.u[j] = f.bit;
        }
        paths_ = std::move(next);
    }

    const CodeSpec& spec_;
    const InterleaverSet& ils_;
    int list_cap_;
    std::vector<double> root_llr_;
    std::vector<PathState> paths_;
    int leaf_idx_ = 0;
};

}  // namespace

BitWord sc_decode(const std::vector<double>& llr, const CodeSpec& spec, const InterleaverSet& ils) {
    return scl_decode(llr, spec, ils, 1).best().message;
}

CandidateList scl_decode(const std::vector<double>& llr, const CodeSpec& spec,
                         const InterleaverSet& ils, int list_size) {
    SclEngine engine(llr, spec, ils, list_size);
    return engine.run();
}

double llr_correlation(const BitWord& codeword, const std::vector<double>& llr) {
    if (codeword.size() != llr.size())
        throw std::invalid_argument("codeword/LLR length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < llr.size(); ++i) s += (codeword[i] ? -0.5 : 0.5) * llr[i];
    return s;
}

BitWord ml_decode_bruteforce(const std::vector<double>& llr,
                             const std::function<BitWord(const BitWord&)>& encoder, int k) {
    if (k < 0 || k > 20) throw ResourceLimitError("brute-force ML limited to k <= 20");
    BitWord best_msg;
    double best_corr = -std::numeric_limits<double>::infinity();
    BitWord msg(k, 0);
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        // lexicographic enumeration so ties keep the smallest message
        for (int t = 0; t < k; ++t) msg[t] = static_cast<Bit>((idx >> (k - 1 - t)) & 1);
        const double corr = llr_correlation(encoder(msg), llr);
        if (corr > best_corr) {
            best_corr = corr;
            best_msg = msg;
        }
    }
    return best_msg;
}

bool ml_lb_event(const BitWord& decoded_cw, const BitWord& transmitted_cw,
                 const std::vector<double>& llr) {
    if (decoded_cw == transmitted_cw) return false;
    return llr_correlation(decoded_cw, llr) > llr_correlation(transmitted_cw, llr);
}

BitWord concat_decode(const std::vector<std::vector<double>>& llr_blocks, const CodeSpec& inner_spec,
                      const InterleaverSet& ils, int list_size, const std::vector<int>& outer_perm,
                      const std::function<bool(const BitWord&)>& outer_check, int combination_cap) {
    const int q_blocks = static_cast<int>(llr_blocks.size());
    if (q_blocks < 1) throw std::invalid_argument("concat_decode: need at least one block");
    const int bar_k = inner_spec.dimension();
    if (outer_perm.size() != static_cast<std::size_t>(bar_k) * q_blocks)
        throw std::invalid_argument("concat_decode: outer interleaver size must be barK * Q");

    std::vector<CandidateList> lists;
    lists.reserve(q_blocks);
    for (const auto& block : llr_blocks)
        lists.push_back(scl_decode(block, inner_spec, ils, list_size));

    auto assemble = [&](const std::vector<int>& idx) {
        BitWord u;
        u.reserve(outer_perm.size());
        for (int q = 0; q < q_blocks; ++q) {
            const BitWord& msg = lists[q].entries[idx[q]].message;
            u.insert(u.end(), msg.begin(), msg.end());
        }
        BitWord b(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) b[outer_perm[i]] = u[i];
        return b;
    };

    using Entry = std::pair<double, std::vector<int>>;
    auto cmp = [](const Entry& a, const Entry& b) { return a > b; };  // min-heap, ties lexicographic
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
    std::set<std::vector<int>> seen;

    std::vector<int> first(q_blocks, 0);
    double first_pm = 0.0;
    for (int q = 0; q < q_blocks; ++q) first_pm += lists[q].entries[0].path_metric;
    frontier.emplace(first_pm, first);
    seen.insert(first);

    BitWord fallback;
    int visited = 0;
    while (!frontier.empty() && visited < combination_cap) {
        auto [pm, idx] = frontier.top();
        frontier.pop();
        ++visited;
        BitWord b = assemble(idx);
        if (visited == 1) fallback = b;
        if (outer_check(b)) return b;
        for (int q = 0; q < q_blocks; ++q) {
            if (idx[q] + 1 >= static_cast<int>(lists[q].entries.size())) continue;
            std::vector<int> nxt = idx;
            ++nxt[q];
            if (!seen.insert(nxt).second) continue;
            const double npm = pm - lists[q].entries[idx[q]].path_metric +
                               lists[q].entries[nxt[q]].path_metric;
            frontier.emplace(npm, std::move(nxt));
        }
    }
    return fallback;  // no combination passed: the most reliable one
}

namespace {

// three-valued BEC logic under the all-zero genie: 1 = erased, 0 = known
void bec_node(int m, int j, const InterleaverSet& ils, const std::vector<std::int8_t>& in,
              std::vector<bool>& out, int& leaf_idx) {
    if (m == 0) {
        out[leaf_idx++] = (in[0] != 0);
        return;
    }
    const int n = 1 << (m - 1);
    const std::vector<int>* perm = (m - 1 >= 1) ? &ils.perm(m - 1, j) : nullptr;
    std::vector<std::int8_t> child(n);
    for (int i = 0; i < n; ++i)
        child[perm ? (*perm)[i] : i] = static_cast<std::int8_t>(in[i] | in[n + i]);
    bec_node(m - 1, 2 * j, ils, child, out, leaf_idx);
    for (int i = 0; i < n; ++i) child[i] = static_cast<std::int8_t>(in[i] & in[n + i]);
    bec_node(m - 1, 2 * j + 1, ils, child, out, leaf_idx);
}

}  // namespace

std::vector<bool> bec_genie_erasures(const std::vector<std::int8_t>& erased,
                                     const InterleaverSet& ils) {
    const int n = static_cast<int>(erased.size());
    if (n != (1 << ils.m_exp()))
        throw std::invalid_argument("erasure vector length must match the interleaver set");
    std::vector<bool> out(n, false);
    int leaf_idx = 0;
    bec_node(ils.m_exp(), 0, ils, erased, out, leaf_idx);
    return out;
}

}  // namespace ipolar
