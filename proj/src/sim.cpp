#include "ipolar/sim.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ipolar/decode.hpp"
#include "ipolar/encode.hpp"

namespace ipolar {

ChannelParams ChannelParams::from_es_n0(double es_over_n0, double es) {
    if (!(es_over_n0 > 0.0) || !(es > 0.0))
        throw std::invalid_argument("channel parameters must be positive");
    return ChannelParams{es, es / es_over_n0};
}

double GaussianSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms; u1 in (0, 1], u2 in [0, 1)
    const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi_v<double> * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::vector<double> awgn_llr(const BitWord& codeword, const ChannelParams& params,
                             std::mt19937_64& rng) {
    const double amp = std::sqrt(params.es);
    const double noise_sd = std::sqrt(params.n0 / 2.0);
    const double scale = 4.0 * amp / params.n0;
    GaussianSource gauss(rng);
    std::vector<double> llr(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i) {
        const double y = amp * (codeword[i] ? -1.0 : 1.0) + noise_sd * gauss.next();
        llr[i] = scale * y;
    }
    return llr;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t trial) {
    const std::uint64_t s = splitmix64(splitmix64(splitmix64(seed) ^ snr_index) ^ trial);
    return std::mt19937_64(s);
}

std::pair<double, double> BlerEstimate::ci95() const {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = bler();
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int Scenario::overall_k() const {
    if (!outer) return inner.dimension();
    const int n_bar = inner.dimension() * q_inner / p_outer;  // outer codeword length
    return outer->message_len(n_bar) * p_outer;
}

void Scenario::validate() const {
    if (list_size < 1) throw std::invalid_argument("list size must be >= 1");
    if (ils.m_exp() != inner.m_exp)
        throw std::invalid_argument("interleaver set incompatible with inner code");
    if (snr_db.empty()) throw std::invalid_argument("empty SNR grid");
    if (outer) {
        if (p_outer < 1 || q_inner < 1) throw std::invalid_argument("P and Q must be >= 1");
        const long long np = static_cast<long long>(inner.dimension()) * q_inner;
        if (np % p_outer != 0)
            throw std::invalid_argument("barK*Q must split into P outer codewords");
        const int n_bar = static_cast<int>(np / p_outer);
        const int k_bar = outer->message_len(n_bar);
        if (k_bar <= 0) throw std::invalid_argument("outer code leaves no message bits");
        BitWord probe(k_bar, 0);
        if (static_cast<int>(outer->encode(probe).size()) != n_bar)
            throw std::invalid_argument("outer codeword length does not match barK*Q/P");
        if (outer_perm.size() != static_cast<std::size_t>(np))
            throw std::invalid_argument("outer interleaver must have size barK*Q");
        if (!is_permutation(outer_perm))
            throw std::invalid_argument("outer interleaver is not a permutation");
    } else {
        if (p_outer != 1 || q_inner != 1)
            throw std::invalid_argument("P/Q require an outer code");
    }
}

namespace {

struct TrialOutcome {
    bool error = false;
    bool ml_lb = false;
};

class TrialRunner {
public:
    explicit TrialRunner(const Scenario& sc) : sc_(sc) {
        if (sc_.outer) {
            n_bar_ = sc_.inner.dimension() * sc_.q_inner / sc_.p_outer;
            k_bar_ = sc_.outer->message_len(n_bar_);
        }
    }

    int message_len() const { return sc_.overall_k(); }

    TrialOutcome run(std::mt19937_64& rng, const ChannelParams& params) const {
        BitWord msg(message_len());
        for (auto& b : msg) b = static_cast<Bit>(rng() & 1);
        return sc_.outer ? run_concat(msg, rng, params) : run_plain(msg, rng, params);
    }

private:
    TrialOutcome run_plain(const BitWord& msg, std::mt19937_64& rng,
                           const ChannelParams& params) const {
        const BitWord cw = ipolar_encode(msg, sc_.inner, sc_.ils);
        const auto llr = awgn_llr(cw, params, rng);
        const BitWord decoded = scl_decode(llr, sc_.inner, sc_.ils, sc_.list_size).best().message;
        TrialOutcome out;
        out.error = decoded != msg;
        if (out.error)
            out.ml_lb = ml_lb_event(ipolar_encode(decoded, sc_.inner, sc_.ils), cw, llr);
        return out;
    }

    BitWord encode_super(const BitWord& b) const {
        // interleave, split into Q blocks, inner-encode, concatenate
        BitWord u(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) u[i] = b[sc_.outer_perm[i]];
        const int bar_k = sc_.inner.dimension();
        BitWord cw;
        cw.reserve(static_cast<std::size_t>(sc_.inner.block_len) * sc_.q_inner);
        for (int q = 0; q < sc_.q_inner; ++q) {
            const BitWord block(u.begin() + static_cast<std::size_t>(q) * bar_k,
                                u.begin() + static_cast<std::size_t>(q + 1) * bar_k);
            const BitWord c = ipolar_encode(block, sc_.inner, sc_.ils);
            cw.insert(cw.end(), c.begin(), c.end());
        }
        return cw;
    }

    TrialOutcome run_concat(const BitWord& msg, std::mt19937_64& rng,
                            const ChannelParams& params) const {
        // P outer codewords form the super-codeword b
        BitWord b;
        b.reserve(static_cast<std::size_t>(n_bar_) * sc_.p_outer);
        for (int p = 0; p < sc_.p_outer; ++p) {
            const BitWord part(msg.begin() + static_cast<std::size_t>(p) * k_bar_,
                               msg.begin() + static_cast<std::size_t>(p + 1) * k_bar_);
            const BitWord enc = sc_.outer->encode(part);
            b.insert(b.end(), enc.begin(), enc.end());
        }
        const BitWord cw = encode_super(b);
        const auto llr = awgn_llr(cw, params, rng);

        const int n_inner = sc_.inner.block_len;
        std::vector<std::vector<double>> llr_blocks(sc_.q_inner);
        for (int q = 0; q < sc_.q_inner; ++q)
            llr_blocks[q].assign(llr.begin() + static_cast<std::size_t>(q) * n_inner,
                                 llr.begin() + static_cast<std::size_t>(q + 1) * n_inner);

        auto check = [this](const BitWord& cand) {
            for (int p = 0; p < sc_.p_outer; ++p) {
                const BitWord part(cand.begin() + static_cast<std::size_t>(p) * n_bar_,
                                   cand.begin() + static_cast<std::size_t>(p + 1) * n_bar_);
                if (!sc_.outer->check(part)) return false;
            }
            return true;
        };
        const BitWord decoded_b = concat_decode(llr_blocks, sc_.inner, sc_.ils, sc_.list_size,
                                                sc_.outer_perm, check, sc_.combination_cap);
        TrialOutcome out;
        out.error = decoded_b != b;
        if (out.error) out.ml_lb = ml_lb_event(encode_super(decoded_b), cw, llr);
        return out;
    }

    const Scenario& sc_;
    int n_bar_ = 0;
    int k_bar_ = 0;
};

}  // namespace

std::vector<SimPoint> run_bler(const Scenario& scenario) {
    scenario.validate();
    const TrialRunner runner(scenario);
    const int jobs = std::max(1, scenario.jobs);
    // fixed batch size keeps the executed trial set independent of the
    // worker count, so counts reproduce exactly
    constexpr std::uint64_t kBatch = 1024;

    std::vector<SimPoint> results;
    for (std::size_t si = 0; si < scenario.snr_db.size(); ++si) {
        const double db = scenario.snr_db[si];
        const double es_db = scenario.snr_is_eb ? db + 10.0 * std::log10(scenario.rate()) : db;
        const double es_n0 = std::pow(10.0, es_db / 10.0);
        const ChannelParams params = ChannelParams::from_es_n0(es_n0);

        BlerEstimate est;
        while (est.block_errors < scenario.stop.min_errors &&
               est.trials < scenario.stop.max_trials) {
            const std::uint64_t batch =
                std::min<std::uint64_t>(kBatch, scenario.stop.max_trials - est.trials);
            std::atomic<std::uint64_t> next{0};
            std::atomic<std::uint64_t> errors{0}, ml_events{0};
            auto work = [&] {
                for (;;) {
                    const std::uint64_t t = next.fetch_add(1);
                    if (t >= batch) break;
                    auto rng = trial_rng(scenario.seed, si, est.trials + t);
                    const TrialOutcome o = runner.run(rng, params);
                    if (o.error) errors.fetch_add(1);
                    if (o.ml_lb) ml_events.fetch_add(1);
                }
            };
            if (jobs == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                pool.reserve(jobs);
                for (int w = 0; w < jobs; ++w) pool.emplace_back(work);
                for (auto& th : pool) th.join();
            }
            est.trials += batch;
            est.block_errors += errors.load();
            est.ml_lb_events += ml_events.load();
        }
        results.push_back(SimPoint{db, es_n0, est});
    }
    return results;
}

std::string Scenario::to_json() const {
    nlohmann::json j;
    j["code"] = nlohmann::json::parse(inner.to_json());
    j["interleavers"] = nlohmann::json::parse(ils.to_json());
    j["decoder"] = {{"type", list_size == 1 ? "sc" : "scl"}, {"list_size", list_size}};
    if (outer) {
        j["outer"] = nlohmann::json::parse(outer->to_json());
        j["p"] = p_outer;
        j["q"] = q_inner;
        j["outer_perm"] = outer_perm;
        j["combination_cap"] = combination_cap;
    }
    j["channel"] = {{"snr_db", snr_db}, {"snr_is_eb", snr_is_eb}};
    j["stop"] = {{"min_errors", stop.min_errors}, {"max_trials", stop.max_trials}};
    j["seed"] = seed;
    j["jobs"] = jobs;
    return j.dump(2);
}

Scenario Scenario::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Scenario sc;
    sc.inner = CodeSpec::from_json(j.at("code").dump());
    sc.ils = InterleaverSet::from_json(j.at("interleavers").dump());
    if (j.contains("decoder")) sc.list_size = j["decoder"].value("list_size", 1);
    if (j.contains("outer") && !j["outer"].is_null()) {
        sc.outer = OuterCode::from_json(j["outer"].dump());
        sc.p_outer = j.value("p", 1);
        sc.q_inner = j.value("q", 1);
        sc.combination_cap = j.value("combination_cap", 4096);
        const long long np = static_cast<long long>(sc.inner.dimension()) * sc.q_inner;
        if (j.contains("outer_perm") && !j["outer_perm"].is_null()) {
            sc.outer_perm = j["outer_perm"].get<std::vector<int>>();
        } else if (j.contains("outer_perm_seed") && !j["outer_perm_seed"].is_null()) {
            std::mt19937_64 rng(j["outer_perm_seed"].get<std::uint64_t>());
            sc.outer_perm.resize(np);
            std::iota(sc.outer_perm.begin(), sc.outer_perm.end(), 0);
            for (std::size_t i = sc.outer_perm.size() - 1; i > 0; --i) {
                std::uniform_int_distribution<std::size_t> pick(0, i);
                std::swap(sc.outer_perm[i], sc.outer_perm[pick(rng)]);
            }
        } else {
            sc.outer_perm.resize(np);
            std::iota(sc.outer_perm.begin(), sc.outer_perm.end(), 0);
        }
    }
    const auto& ch = j.at("channel");
    sc.snr_db = ch.at("snr_db").get<std::vector<double>>();
    sc.snr_is_eb = ch.value("snr_is_eb", true);
    if (j.contains("stop")) {
        sc.stop.min_errors = j["stop"].value("min_errors", std::uint64_t{100});
        sc.stop.max_trials = j["stop"].value("max_trials", std::uint64_t{10'000'000});
    }
    sc.seed = j.value("seed", std::uint64_t{1});
    sc.jobs = j.value("jobs", 1);
    return sc;
}

}  // namespace ipolar
