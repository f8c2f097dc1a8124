#include "ipolar/wef.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ipolar {

namespace {

template <class Coef>
void check_half_len(const WeightPoly<Coef>& p, int half_len, const char* side) {
    if (p.max_degree() > half_len)
        throw std::invalid_argument(std::string(side) + " polynomial degree exceeds half length");
}

template <class Coef>
void check_half_len(const IoWeightPoly<Coef>& p, int half_len, const char* side) {
    if (p.output_max() > half_len)
        throw std::invalid_argument(std::string(side) + " polynomial degree exceeds half length");
}

}  // namespace

template <class Coef>
WeightPoly<Coef> combine_wef(const WeightPoly<Coef>& upper, const WeightPoly<Coef>& lower,
                             int half_len, std::optional<int> d_cap) {
    check_half_len(upper, half_len, "upper");
    check_half_len(lower, half_len, "lower");
    const int n = half_len;
    WeightPoly<Coef> out(2 * n);
    for (const auto& [d1, a1] : upper.coeffs()) {
        for (const auto& [d2, a2] : lower.coeffs()) {
            const Coef prod = a1 * a2;
            const int k_lo = std::max(0, d1 + d2 - n);
            const int k_hi = std::min(d1, d2);
            for (int k = k_lo; k <= k_hi; ++k) {
                const int dp = d1 + 2 * d2 - 2 * k;
                if (d_cap && dp > *d_cap) continue;
                out.add(dp, prod * detail::Kernel<Coef>::eval(n, d1, d2, k));
            }
        }
    }
    return out;
}

template <class Coef>
IoWeightPoly<Coef> combine_iowef(const IoWeightPoly<Coef>& upper, const IoWeightPoly<Coef>& lower,
                                 int half_len, std::optional<int> d_cap) {
    check_half_len(upper, half_len, "upper");
    check_half_len(lower, half_len, "lower");
    const int n = half_len;

    // bucket by output weight: d -> sparse list over w
    auto bucket = [](const IoWeightPoly<Coef>& p) {
        std::map<int, std::vector<std::pair<int, Coef>>> b;
        for (const auto& [wd, c] : p.coeffs()) b[wd.second].emplace_back(wd.first, c);
        return b;
    };
    const auto up_b = bucket(upper);
    const auto lo_b = bucket(lower);

    const int wmax = upper.input_max() + lower.input_max();
    const int dmax = d_cap ? std::min(*d_cap, 2 * n) : 2 * n;
    std::vector<std::vector<Coef>> acc(wmax + 1, std::vector<Coef>(dmax + 1, Coef(0)));
    std::vector<Coef> conv;

    for (const auto& [d1, ul] : up_b) {
        for (const auto& [d2, ll] : lo_b) {
            const int k_lo = std::max(0, d1 + d2 - n);
            const int k_hi = std::min(d1, d2);
            if (d_cap && d1 + 2 * d2 - 2 * k_hi > *d_cap) continue;
            // input-weight convolution of the two buckets
            conv.assign(wmax + 1, Coef(0));
            for (const auto& [w1, c1] : ul)
                for (const auto& [w2, c2] : ll) conv[w1 + w2] += c1 * c2;
            for (int k = k_lo; k <= k_hi; ++k) {
                const int dp = d1 + 2 * d2 - 2 * k;
                if (dp > dmax) continue;
                const Coef ker = detail::Kernel<Coef>::eval(n, d1, d2, k);
                for (int w = 0; w <= wmax; ++w)
                    if (!detail::is_zero(conv[w])) acc[w][dp] += conv[w] * ker;
            }
        }
    }

    IoWeightPoly<Coef> out(upper.input_size() + lower.input_size(), 2 * n);
    for (int w = 0; w <= wmax; ++w)
        for (int d = 0; d <= dmax; ++d)
            if (!detail::is_zero(acc[w][d])) out.add(w, d, acc[w][d]);
    return out;
}

namespace {

template <class Poly>
std::size_t total_terms(const std::vector<Poly>& polys) {
    std::size_t t = 0;
    for (const auto& p : polys) t += p.term_count();
    return t;
}

void check_budget(std::size_t terms, const WefOptions& opt) {
    if (!opt.d_cap && terms > opt.term_budget)
        throw ResourceLimitError(
            "ensemble polynomial exceeds the term budget (" + std::to_string(terms) + " > " +
            std::to_string(opt.term_budget) + "); set d_cap to truncate soundly");
}

}  // namespace

template <class Coef>
WeightPoly<Coef> ensemble_wef(const CodeSpec& spec, const WefOptions& opt) {
    std::vector<WeightPoly<Coef>> polys;
    polys.reserve(spec.block_len);
    for (int j = 0; j < spec.block_len; ++j) {
        WeightPoly<Coef> leaf(1);
        leaf.add(0, Coef(1));
        if (spec.is_unfrozen(j)) leaf.add(1, Coef(1));
        polys.push_back(std::move(leaf));
    }
    int n = 1;
    while (polys.size() > 1) {
        std::vector<WeightPoly<Coef>> next(polys.size() / 2);
        for (std::size_t j = 0; j < next.size(); ++j)
            next[j] = combine_wef(polys[2 * j], polys[2 * j + 1], n, opt.d_cap);
        polys = std::move(next);
        n *= 2;
        check_budget(total_terms(polys), opt);
    }
    return std::move(polys[0]);
}

template <class Coef>
IoWeightPoly<Coef> ensemble_iowef(const CodeSpec& spec, const WefOptions& opt) {
    std::vector<IoWeightPoly<Coef>> polys;
    polys.reserve(spec.block_len);
    for (int j = 0; j < spec.block_len; ++j) {
        const bool info = spec.is_unfrozen(j);
        IoWeightPoly<Coef> leaf(info ? 1 : 0, 1);
        leaf.add(0, 0, Coef(1));
        if (info) leaf.add(1, 1, Coef(1));
        polys.push_back(std::move(leaf));
    }
    int n = 1;
    while (polys.size() > 1) {
        std::vector<IoWeightPoly<Coef>> next(polys.size() / 2);
        for (std::size_t j = 0; j < next.size(); ++j)
            next[j] = combine_iowef(polys[2 * j], polys[2 * j + 1], n, opt.d_cap);
        polys = std::move(next);
        n *= 2;
        check_budget(total_terms(polys), opt);
    }
    return std::move(polys[0]);
}

WeightPoly<Rational> enumerate_wef_exhaustive(
    const std::function<BitWord(const BitWord&)>& encoder, int k) {
    if (k < 0 || k > 24)
        throw ResourceLimitError("exhaustive enumeration limited to k <= 24");
    WeightPoly<Rational> out;
    BitWord msg(k, 0);
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t m = 0; m < count; ++m) {
        for (int t = 0; t < k; ++t) msg[t] = static_cast<Bit>((m >> t) & 1);
        const BitWord cw = encoder(msg);
        if (m == 0) out.set_length(static_cast<int>(cw.size()));
        out.add(hamming_weight(cw), Rational(1));
    }
    return out;
}

template <class Coef>
WeightPoly<Coef> power_wef(const WeightPoly<Coef>& a, int p) {
    if (p < 1) throw std::invalid_argument("power must be >= 1");
    WeightPoly<Coef> out = a;
    for (int t = 1; t < p; ++t) {
        WeightPoly<Coef> next(out.length() + a.length());
        for (const auto& [d1, c1] : out.coeffs())
            for (const auto& [d2, c2] : a.coeffs()) next.add(d1 + d2, c1 * c2);
        out = std::move(next);
    }
    return out;
}

template <class Coef>
IoWeightPoly<Coef> power_iowef(const IoWeightPoly<Coef>& a, int q) {
    if (q < 1) throw std::invalid_argument("power must be >= 1");
    IoWeightPoly<Coef> out = a;
    for (int t = 1; t < q; ++t) {
        IoWeightPoly<Coef> next(out.input_size() + a.input_size(), out.length() + a.length());
        for (const auto& [wd1, c1] : out.coeffs())
            for (const auto& [wd2, c2] : a.coeffs())
                next.add(wd1.first + wd2.first, wd1.second + wd2.second, c1 * c2);
        out = std::move(next);
    }
    return out;
}

namespace {

Rational concat_scale(const Rational& outer_coef, int nP, int w) {
    return outer_coef / Rational(binom_exact(nP, w));
}

double concat_scale(double outer_coef, int nP, int w) {
    // evaluated via log-gamma so C(520, 260)-scale binomials cannot overflow
    return outer_coef * std::exp(-log_binom(nP, w));
}

}  // namespace

template <class Coef>
WeightPoly<Coef> serial_concat_wef(const WeightPoly<Coef>& outer, const IoWeightPoly<Coef>& inner,
                                   std::optional<int> d_cap) {
    const int nP = outer.length();
    if (nP <= 0) throw std::invalid_argument("outer WEF carries no codeword length");
    if (inner.input_size() != nP)
        throw std::invalid_argument("outer codeword length does not match inner input size");
    if (outer.max_degree() > nP)
        throw std::invalid_argument("outer WEF degree exceeds its codeword length");

    std::map<int, std::vector<std::pair<int, Coef>>> inner_by_w;
    for (const auto& [wd, ic] : inner.coeffs()) inner_by_w[wd.first].emplace_back(wd.second, ic);

    WeightPoly<Coef> out(inner.length());
    for (const auto& [w, ow] : outer.coeffs()) {
        auto it = inner_by_w.find(w);
        if (it == inner_by_w.end()) continue;
        const Coef scale = concat_scale(ow, nP, w);
        for (const auto& [d, ic] : it->second) {
            if (d_cap && d > *d_cap) continue;
            out.add(d, scale * ic);
        }
    }
    return out;
}

WeightPoly<Rational> hamming_wef(int m_param) {
    if (m_param < 3 || m_param > 16) throw std::invalid_argument("hamming_wef: m in [3, 16]");
    const int n = (1 << m_param) - 1;
    const int h_lo = (n - 1) / 2;  // exponent of (1+Y)
    const int h_hi = (n + 1) / 2;  // exponent of (1-Y)
    WeightPoly<Rational> out(n);
    for (int d = 0; d <= n; ++d) {
        // coefficient of Y^d in (1+Y)^h_lo (1-Y)^h_hi
        BigInt x = 0;
        for (int i = std::max(0, d - h_lo); i <= std::min(d, h_hi); ++i) {
            const BigInt term = binom_exact(h_hi, i) * binom_exact(h_lo, d - i);
            if (i % 2 == 0)
                x += term;
            else
                x -= term;
        }
        const BigInt num = binom_exact(n, d) + n * x;
        if (num != 0) out.add(d, Rational(num, n + 1));
    }
    return out;
}

std::vector<std::vector<BigInt>> rra_accumulator_counts(int n_acc, int dc, int m_parity) {
    if (dc < 1 || m_parity < 1 || n_acc != dc * m_parity)
        throw std::invalid_argument("accumulator geometry requires n_acc == dc * m_parity");
    // forward DP over the m_parity blocks of dc input bits each; the retained
    // parity bit of a block equals the input prefix parity through that block
    struct State {
        std::vector<BigInt> by_weight;  // input weight -> count
    };
    // dp[s][p]
    std::vector<std::vector<State>> dp(2, std::vector<State>(m_parity + 1));
    dp[0][0].by_weight = {BigInt(1)};

    std::vector<BigInt> block(dc + 1);
    for (int b = 0; b <= dc; ++b) block[b] = binom_exact(dc, b);

    for (int blk = 0; blk < m_parity; ++blk) {
        std::vector<std::vector<State>> next(2, std::vector<State>(m_parity + 1));
        for (int s = 0; s < 2; ++s) {
            for (int p = 0; p <= blk; ++p) {
                const auto& cur = dp[s][p].by_weight;
                if (cur.empty()) continue;
                for (int parity = 0; parity < 2; ++parity) {
                    const int s2 = s ^ parity;
                    const int p2 = p + s2;
                    auto& dst = next[s2][p2].by_weight;
                    if (dst.size() < cur.size() + dc) dst.resize(cur.size() + dc, BigInt(0));
                    for (int b = parity; b <= dc; b += 2) {
                        const BigInt& bc = block[b];
                        for (std::size_t a = 0; a < cur.size(); ++a)
                            if (cur[a] != 0) dst[a + b] += cur[a] * bc;
                    }
                }
            }
        }
        dp = std::move(next);
    }

    std::vector<std::vector<BigInt>> acc(n_acc + 1, std::vector<BigInt>(m_parity + 1, BigInt(0)));
    for (int s = 0; s < 2; ++s)
        for (int p = 0; p <= m_parity; ++p)
            for (std::size_t a = 0; a < dp[s][p].by_weight.size(); ++a)
                acc[a][p] += dp[s][p].by_weight[a];
    return acc;
}

double log_of_bigint(const BigInt& v) {
    if (v <= 0) throw std::invalid_argument("log of a nonpositive integer");
    const auto bits = boost::multiprecision::msb(v);
    if (bits < 960) return std::log(v.convert_to<double>());
    const BigInt top = v >> (bits - 52);
    return std::log(top.convert_to<double>()) + (static_cast<double>(bits) - 52.0) * std::numbers::ln2_v<double>;
}

namespace {

Rational rra_term(const BigInt& cw, const BigInt& acc, const BigInt& den, Rational) {
    return Rational(cw * acc, den);
}

double rra_term(const BigInt& cw, const BigInt& acc, const BigInt& den, double) {
    // counts reach 2^(k*dv); divide in the log domain
    return std::exp(log_of_bigint(cw) + log_of_bigint(acc) - log_of_bigint(den));
}

}  // namespace

template <class Coef>
WeightPoly<Coef> rra_wef(int k, int dv, int m_parity) {
    if (k < 1 || dv < 1 || m_parity < 1) throw std::invalid_argument("rra_wef: bad parameters");
    const long long n_acc = static_cast<long long>(k) * dv;
    if (n_acc % m_parity != 0)
        throw std::invalid_argument("rra_wef: k*dv must be divisible by m_parity");
    const int dc = static_cast<int>(n_acc / m_parity);
    const auto acc = rra_accumulator_counts(static_cast<int>(n_acc), dc, m_parity);

    WeightPoly<Coef> out(k + m_parity);
    for (int w = 0; w <= k; ++w) {
        const int a = dv * w;
        const BigInt& cw = binom_exact(k, w);
        const BigInt& den = binom_exact(static_cast<int>(n_acc), a);
        for (int p = 0; p <= m_parity; ++p) {
            if (acc[a][p] == 0) continue;
            out.add(w + p, rra_term(cw, acc[a][p], den, Coef(0)));
        }
    }
    return out;
}

WeightPoly<double> to_float(const WeightPoly<Rational>& p) {
    WeightPoly<double> out(p.length());
    for (const auto& [d, c] : p.coeffs()) out.add(d, c.convert_to<double>());
    return out;
}

IoWeightPoly<double> to_float(const IoWeightPoly<Rational>& p) {
    IoWeightPoly<double> out(p.input_size(), p.length());
    for (const auto& [wd, c] : p.coeffs()) out.add(wd.first, wd.second, c.convert_to<double>());
    return out;
}

// explicit instantiations for the two coefficient modes
template WeightPoly<Rational> combine_wef(const WeightPoly<Rational>&, const WeightPoly<Rational>&, int, std::optional<int>);
template WeightPoly<double> combine_wef(const WeightPoly<double>&, const WeightPoly<double>&, int, std::optional<int>);
template IoWeightPoly<Rational> combine_iowef(const IoWeightPoly<Rational>&, const IoWeightPoly<Rational>&, int, std::optional<int>);
template IoWeightPoly<double> combine_iowef(const IoWeightPoly<double>&, const IoWeightPoly<double>&, int, std::optional<int>);
template WeightPoly<Rational> ensemble_wef(const CodeSpec&, const WefOptions&);
template WeightPoly<double> ensemble_wef(const CodeSpec&, const WefOptions&);
template IoWeightPoly<Rational> ensemble_iowef(const CodeSpec&, const WefOptions&);
template IoWeightPoly<double> ensemble_iowef(const CodeSpec&, const WefOptions&);
template WeightPoly<Rational> power_wef(const WeightPoly<Rational>&, int);
template WeightPoly<double> power_wef(const WeightPoly<double>&, int);
template IoWeightPoly<Rational> power_iowef(const IoWeightPoly<Rational>&, int);
template IoWeightPoly<double> power_iowef(const IoWeightPoly<double>&, int);
template WeightPoly<Rational> serial_concat_wef(const WeightPoly<Rational>&, const IoWeightPoly<Rational>&, std::optional<int>);
template WeightPoly<double> serial_concat_wef(const WeightPoly<double>&, const IoWeightPoly<double>&, std::optional<int>);
template WeightPoly<Rational> rra_wef(int, int, int);
template WeightPoly<double> rra_wef(int, int, int);

}  // namespace ipolar
