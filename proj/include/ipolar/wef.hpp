#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ipolar/binomial.hpp"
#include "ipolar/bits.hpp"
#include "ipolar/code_spec.hpp"

namespace ipolar {

/// Thrown when an uncapped ensemble computation exceeds the term budget.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WefOptions {
    std::optional<int> d_cap;            // keep only output weights d <= d_cap
    std::size_t term_budget = 5'000'000; // uncapped explosion guard
};

namespace detail {

template <class Coef>
struct Kernel;

template <>
struct Kernel<Rational> {
    static Rational eval(int n, int d1, int d2, int k) {
        return Rational(binom_exact(d2, k) * binom_exact(n - d2, d1 - k), binom_exact(n, d1));
    }
};

template <>
struct Kernel<double> {
    static double eval(int n, int d1, int d2, int k) {
        return std::exp(log_binom(d2, k) + log_binom(n - d2, d1 - k) - log_binom(n, d1));
    }
};

inline bool is_zero(const Rational& c) { return c == 0; }
inline bool is_zero(double c) { return c == 0.0; }

}  // namespace detail

/// Sparse weight enumerating function A(Y) = sum_d A_d Y^d.
/// Coef is Rational (exact mode) or double (large-N float mode).
template <class Coef>
class WeightPoly {
public:
    WeightPoly() = default;
    explicit WeightPoly(int length) : length_(length) {}

    static WeightPoly one(int length = 0) {
        WeightPoly p(length);
        p.add(0, Coef(1));
        return p;
    }

    void add(int d, const Coef& c) {
        if (d < 0) throw std::invalid_argument("negative weight");
        if (detail::is_zero(c)) return;
        auto [it, inserted] = coeffs_.emplace(d, c);
        if (!inserted) {
            it->second += c;
            if (detail::is_zero(it->second)) coeffs_.erase(it);
        }
    }

    Coef at(int d) const {
        auto it = coeffs_.find(d);
        return it == coeffs_.end() ? Coef(0) : it->second;
    }

    const std::map<int, Coef>& coeffs() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool empty() const { return coeffs_.empty(); }

    int max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    /// Smallest d > 0 with a nonzero coefficient; -1 if none.
    int min_nonzero_degree() const {
        for (const auto& [d, c] : coeffs_)
            if (d > 0) return d;
        return -1;
    }

    Coef mass() const {
        Coef s(0);
        for (const auto& [d, c] : coeffs_) s += c;
        return s;
    }

    /// Nominal codeword length (informational; 0 when unknown).
    int length() const { return length_; }
    void set_length(int n) { length_ = n; }

    bool operator==(const WeightPoly& other) const { return coeffs_ == other.coeffs_; }

private:
    std::map<int, Coef> coeffs_;
    int length_ = 0;
};

/// Sparse input-output weight enumerating function A(X, Y) = sum A_{w,d} X^w Y^d.
template <class Coef>
class IoWeightPoly {
public:
    IoWeightPoly() = default;
    IoWeightPoly(int input_size, int length) : input_size_(input_size), length_(length) {}

    static IoWeightPoly one(int input_size = 0, int length = 0) {
        IoWeightPoly p(input_size, length);
        p.add(0, 0, Coef(1));
        return p;
    }

    void add(int w, int d, const Coef& c) {
        if (w < 0 || d < 0) throw std::invalid_argument("negative weight");
        if (detail::is_zero(c)) return;
        auto [it, inserted] = coeffs_.emplace(std::make_pair(w, d), c);
        if (!inserted) {
            it->second += c;
            if (detail::is_zero(it->second)) coeffs_.erase(it);
        }
    }

    Coef at(int w, int d) const {
        auto it = coeffs_.find({w, d});
        return it == coeffs_.end() ? Coef(0) : it->second;
    }

    const std::map<std::pair<int, int>, Coef>& coeffs() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }

    int input_max() const {
        int w = 0;
        for (const auto& [wd, c] : coeffs_) w = std::max(w, wd.first);
        return w;
    }
    int output_max() const {
        int d = 0;
        for (const auto& [wd, c] : coeffs_) d = std::max(d, wd.second);
        return d;
    }

    /// Marginal A(X=1, Y).
    WeightPoly<Coef> input_marginal() const {
        WeightPoly<Coef> out(length_);
        for (const auto& [wd, c] : coeffs_) out.add(wd.second, c);
        return out;
    }

    Coef mass() const {
        Coef s(0);
        for (const auto& [wd, c] : coeffs_) s += c;
        return s;
    }

    /// Input size of the generating encoder (message length).
    int input_size() const { return input_size_; }
    void set_input_size(int k) { input_size_ = k; }
    int length() const { return length_; }
    void set_length(int n) { length_ = n; }

    bool operator==(const IoWeightPoly& other) const { return coeffs_ == other.coeffs_; }

private:
    std::map<std::pair<int, int>, Coef> coeffs_;
    int input_size_ = 0;
    int length_ = 0;
};

/// Uniform-interleaver combiner for WEFs: the average WEF of
/// upper*Pi + lower | lower over all permutations Pi of length half_len.
/// Output coefficient at d1 + 2*d2 - 2*k accumulates
/// A_{d1} A_{d2} C(d2,k) C(n-d2,d1-k) / C(n,d1) over the Lemma-1 k-range.
template <class Coef>
WeightPoly<Coef> combine_wef(const WeightPoly<Coef>& upper, const WeightPoly<Coef>& lower,
                             int half_len, std::optional<int> d_cap = {});

/// Uniform-interleaver combiner for IOWEFs; input weights add, the output
/// weights follow the same kernel as combine_wef.
template <class Coef>
IoWeightPoly<Coef> combine_iowef(const IoWeightPoly<Coef>& upper, const IoWeightPoly<Coef>& lower,
                                 int half_len, std::optional<int> d_cap = {});

/// Ensemble-average WEF / IOWEF of the (N, K, A) i-polar ensemble, computed
/// by folding the combiner bottom-up over the code tree. Exact ensemble
/// averages when uncapped (and exact in rational mode).
template <class Coef>
WeightPoly<Coef> ensemble_wef(const CodeSpec& spec, const WefOptions& opt = {});
template <class Coef>
IoWeightPoly<Coef> ensemble_iowef(const CodeSpec& spec, const WefOptions& opt = {});

/// Exact WEF of one realization by iterating all 2^k messages of a linear
/// encoder. Guarded to k <= 24.
WeightPoly<Rational> enumerate_wef_exhaustive(
    const std::function<BitWord(const BitWord&)>& encoder, int k);

/// [A(Y)]^p / [A(X,Y)]^q: parallel concatenation of identical component codes.
template <class Coef>
WeightPoly<Coef> power_wef(const WeightPoly<Coef>& a, int p);
template <class Coef>
IoWeightPoly<Coef> power_iowef(const IoWeightPoly<Coef>& a, int q);

/// Serial concatenation through a uniform interleaver of size nP:
/// A_d = sum_w A^O_w A^I_{w,d} / C(nP, w).
template <class Coef>
WeightPoly<Coef> serial_concat_wef(const WeightPoly<Coef>& outer, const IoWeightPoly<Coef>& inner,
                                   std::optional<int> d_cap = {});

/// Exact weight distribution of the (2^m - 1, 2^m - m - 1) binary Hamming
/// code via the closed form [(1+Y)^n + n (1+Y)^((n-1)/2) (1-Y)^((n+1)/2)]/(n+1).
WeightPoly<Rational> hamming_wef(int m_param);

/// Ensemble-average WEF of the systematic (k + m_parity, k) regular
/// repeat-accumulate code with repetition dv and a uniform interleaver
/// between repetition and accumulator; parity is the accumulator output
/// sampled every dc = k*dv/m_parity positions.
template <class Coef>
WeightPoly<Coef> rra_wef(int k, int dv, int m_parity);

/// Counts ACC[a][p]: accumulator input sequences of length n_acc and weight a
/// whose regularly punctured output (every dc-th bit, m_parity bits kept) has
/// weight p. Exact; exposed for the concatenation pipeline and tests.
std::vector<std::vector<BigInt>> rra_accumulator_counts(int n_acc, int dc, int m_parity);

/// Convert between coefficient modes.
WeightPoly<double> to_float(const WeightPoly<Rational>& p);
IoWeightPoly<double> to_float(const IoWeightPoly<Rational>& p);

double log_of_bigint(const BigInt& v);

}  // namespace ipolar
