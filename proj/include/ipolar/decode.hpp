#pragma once

#include <functional>
#include <vector>

#include "ipolar/bits.hpp"
#include "ipolar/code_spec.hpp"
#include "ipolar/interleaver.hpp"

namespace ipolar {

struct Candidate {
    BitWord message;
    double path_metric;  // LLR-domain penalty; smaller = more reliable
};

/// SCL output: up to L candidates in descending reliability.
struct CandidateList {
    std::vector<Candidate> entries;
    const Candidate& best() const { return entries.front(); }
};

/// Successive cancellation decoding on the i-polar graph; the upper-branch
/// LLRs are routed through the stage de-interleavers. Frozen bits decode
/// as zero. Identity interleavers give regular polar SC.
BitWord sc_decode(const std::vector<double>& llr, const CodeSpec& spec, const InterleaverSet& ils);

/// List decoding; L = 1 degenerates to sc_decode. Candidates are returned
/// in ascending path-metric order with exact-tie order by message. List
/// pruning ties resolve by path index.
CandidateList scl_decode(const std::vector<double>& llr, const CodeSpec& spec,
                         const InterleaverSet& ils, int list_size);

/// Correlation sum (1-2c_i) llr_i / 2 = log-likelihood of the codeword up
/// to a codeword-independent constant.
double llr_correlation(const BitWord& codeword, const std::vector<double>& llr);

/// Brute-force ML over all 2^k messages of a linear encoder; ties resolve
/// to the lexicographically smallest message. Guarded to k <= 20.
BitWord ml_decode_bruteforce(const std::vector<double>& llr,
                             const std::function<BitWord(const BitWord&)>& encoder, int k);

/// True iff the decoded codeword is strictly more likely than the
/// transmitted one (given a decoding error, this event lower-bounds the
/// ML block error rate). Equal words return false.
bool ml_lb_event(const BitWord& decoded_cw, const BitWord& transmitted_cw,
                 const std::vector<double>& llr);

/// Decodes the concatenated scheme: Q independent SCL decodes, lazy
/// best-first enumeration of the L^Q candidate combinations in descending
/// combined reliability, de-interleaving by outer_perm, and selection of
/// the first combination passing the outer detector (the most reliable
/// combination when none passes). Returns the outer super-codeword
/// estimate of length barK * Q.
BitWord concat_decode(const std::vector<std::vector<double>>& llr_blocks, const CodeSpec& inner_spec,
                      const InterleaverSet& ils, int list_size, const std::vector<int>& outer_perm,
                      const std::function<bool(const BitWord&)>& outer_check,
                      int combination_cap = 4096);

/// Genie-aided SC over the BEC in exact three-valued logic: entry i of
/// `erased` marks channel symbol i erased. Returns, per bit channel, whether
/// its decision LLR is erased. Used to observe that interleavers do not
/// change the synthesized channels.
std::vector<bool> bec_genie_erasures(const std::vector<std::int8_t>& erased,
                                     const InterleaverSet& ils);

}  // namespace ipolar
