#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ipolar/bits.hpp"
#include "ipolar/code_spec.hpp"
#include "ipolar/interleaver.hpp"
#include "ipolar/outer_codes.hpp"

namespace ipolar {

/// BI-AWGN channel y = sqrt(Es)(1-2c) + w with E[w^2] = N0/2.
struct ChannelParams {
    double es = 1.0;
    double n0 = 1.0;

    double es_over_n0() const { return es / n0; }
    static ChannelParams from_es_n0(double es_over_n0, double es = 1.0);
};

/// Channel LLRs 4 sqrt(Es) y / N0 for one transmitted codeword.
std::vector<double> awgn_llr(const BitWord& codeword, const ChannelParams& params,
                             std::mt19937_64& rng);

/// Deterministic per-trial stream: identical (seed, snr_index, trial) always
/// yields the same generator state, independent of worker scheduling.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t trial);

/// Cross-platform-stable standard normal pairs (Box-Muller on explicit
/// 53-bit uniforms; std::normal_distribution is implementation-defined).
class GaussianSource {
public:
    explicit GaussianSource(std::mt19937_64& rng) : rng_(rng) {}
    double next();

private:
    std::mt19937_64& rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct BlerEstimate {
    std::uint64_t trials = 0;
    std::uint64_t block_errors = 0;
    std::uint64_t ml_lb_events = 0;

    double bler() const { return trials ? static_cast<double>(block_errors) / trials : 0.0; }
    double ml_lb() const { return trials ? static_cast<double>(ml_lb_events) / trials : 0.0; }
    /// Wilson 95% interval for the block error probability.
    std::pair<double, double> ci95() const;
};

struct StopRule {
    std::uint64_t min_errors = 100;
    std::uint64_t max_trials = 10'000'000;
};

/// One Monte Carlo configuration: a plain (i-)polar code under SCL, or the
/// concatenated scheme (P outer blocks, interleaver, Q inner i-polar blocks)
/// decoded by Q parallel SCL lists with outer error detection.
struct Scenario {
    CodeSpec inner;
    InterleaverSet ils;
    int list_size = 8;

    std::optional<OuterCode> outer;
    int p_outer = 1;
    int q_inner = 1;
    std::vector<int> outer_perm;  // size barK*Q when outer is present
    int combination_cap = 4096;

    std::vector<double> snr_db;
    bool snr_is_eb = true;
    std::uint64_t seed = 1;
    StopRule stop;
    int jobs = 1;

    int overall_n() const { return inner.block_len * q_inner; }
    int overall_k() const;
    double rate() const { return static_cast<double>(overall_k()) / overall_n(); }

    void validate() const;

    std::string to_json() const;
    static Scenario from_json(const std::string& text);
};

struct SimPoint {
    double snr_db = 0.0;       // as configured (Eb/N0 or Es/N0)
    double es_over_n0 = 0.0;   // linear
    BlerEstimate estimate;
};

/// Encode -> channel -> decode -> compare loop per SNR point, stopping at
/// min block errors or max trials; tracks the ML-lower-bound event counter.
std::vector<SimPoint> run_bler(const Scenario& scenario);

}  // namespace ipolar
