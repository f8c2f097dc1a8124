#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

using ipolar::Bit;
using ipolar::BitWord;

std::vector<std::vector<Bit>> kronecker_g2(int m_exp) {
    std::vector<std::vector<Bit>> g{{1}};
    const std::vector<std::vector<Bit>> g2{{1, 0}, {1, 1}};
    for (int t = 0; t < m_exp; ++t) {
        const std::size_t n = g.size();
        std::vector<std::vector<Bit>> next(2 * n, std::vector<Bit>(2 * n, 0));
        for (std::size_t i = 0; i < 2 * n; ++i)
            for (std::size_t j = 0; j < 2 * n; ++j)
                next[i][j] = g2[i / n][j / n] & g[i % n][j % n];
        g = std::move(next);
    }
    return g;
}

BitWord gf2_vecmat(const BitWord& u, const std::vector<std::vector<Bit>>& mat) {
    BitWord x(mat[0].size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i])
            for (std::size_t j = 0; j < x.size(); ++j) x[j] ^= mat[i][j];
    return x;
}

namespace {

BitWord graph_eval_node(int m, int j, const BitWord& u, const ipolar::InterleaverSet& ils) {
    if (m == 0) return BitWord{u[j]};
    const int n = 1 << (m - 1);
    const BitWord upper = graph_eval_node(m - 1, 2 * j, u, ils);
    const BitWord lower = graph_eval_node(m - 1, 2 * j + 1, u, ils);
    BitWord out(2 * n);
    for (int i = 0; i < n; ++i) {
        const Bit permuted = (m - 1 >= 1) ? upper[ils.perm(m - 1, j)[i]] : upper[i];
        out[i] = permuted ^ lower[i];
        out[n + i] = lower[i];
    }
    return out;
}

}  // namespace

BitWord graph_eval(const BitWord& u, const ipolar::InterleaverSet& ils) {
    return graph_eval_node(ils.m_exp(), 0, u, ils);
}

double j_gauss_hermite(double sigma) {
    if (sigma <= 0.0) return 0.0;
    // nodes/weights computed on the fly by Newton iteration on Hermite polys
    constexpr int kNodes = 400;
    static std::vector<double> nodes, weights;
    if (nodes.empty()) {
        nodes.resize(kNodes);
        weights.resize(kNodes);
        for (int i = 0; i < kNodes; ++i) {
            // initial guess (Stroud/Secrest style)
            double x;
            if (i == 0)
                x = std::sqrt(2.0 * kNodes + 1.0) - 1.85575 * std::pow(2.0 * kNodes + 1.0, -1.0 / 6);
            else if (i == 1)
                x = nodes[0] - 1.14 * std::pow(kNodes, 0.426) / nodes[0];
            else if (i == 2)
                x = 1.86 * nodes[1] - 0.86 * nodes[0];
            else if (i == 3)
                x = 1.91 * nodes[2] - 0.91 * nodes[1];
            else
                x = 2.0 * nodes[i - 1] - nodes[i - 2];
            for (int it = 0; it < 100; ++it) {
                // H_n via recurrence, normalized
                double p0 = std::pow(std::numbers::pi_v<double>, -0.25), p1 = 0.0;
                for (int k = 0; k < kNodes; ++k) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = x * std::sqrt(2.0 / (k + 1)) * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p2;
                }
                const double dp = std::sqrt(2.0 * kNodes) * p1;
                const double dx = p0 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) {
                    nodes[i] = x;
                    weights[i] = 2.0 / (dp * dp);
                    break;
                }
            }
        }
    }
    const double mu = sigma * sigma / 2.0;
    double acc = 0.0;
    for (int i = 0; i < kNodes; ++i) {
        for (double sgn : {1.0, -1.0}) {
            if (i == 0 && sgn < 0) continue;
            const double t = sgn * nodes[i];
            const double x = mu + std::sqrt(2.0) * sigma * t;
            double val;
            if (x < -700)
                val = -x / std::numbers::ln2_v<double>;
            else
                val = std::log1p(std::exp(-x)) / std::numbers::ln2_v<double>;
            acc += weights[i] * val;
        }
    }
    return 1.0 - acc / std::sqrt(std::numbers::pi_v<double>);
}

double q_by_quadrature(double x) {
    // integrate the standard normal density from x to x+60 with Simpson panels
    const double a = x, b = x + 60.0;
    const int panels = 400000;
    const double h = (b - a) / panels;
    auto phi = [](double t) {
        return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi_v<double>);
    };
    double sum = phi(a) + phi(b);
    for (int i = 1; i < panels; ++i) sum += phi(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

namespace {

BitWord polar_xform_ref(const BitWord& u) {
    // recursive reference transform: [a ^ b | b]
    if (u.size() == 1) return u;
    const std::size_t half = u.size() / 2;
    BitWord a(u.begin(), u.begin() + half), b(u.begin() + half, u.end());
    a = polar_xform_ref(a);
    b = polar_xform_ref(b);
    BitWord out(u.size());
    for (std::size_t i = 0; i < half; ++i) {
        out[i] = a[i] ^ b[i];
        out[half + i] = b[i];
    }
    return out;
}

double boxplus_ref(double a, double b) {
    return 2.0 * std::atanh(std::clamp(std::tanh(a / 2.0) * std::tanh(b / 2.0),
                                       -0.9999999999999999, 0.9999999999999999));
}

BitWord sc_textbook_rec(std::vector<double> llr, const std::vector<Bit>& frozen, int lo, int hi) {
    const int n = hi - lo;
    if (n == 1) {
        Bit u = 0;
        if (!frozen[lo]) u = llr[0] < 0 ? 1 : 0;
        return BitWord{u};
    }
    const int half = n / 2;
    std::vector<double> f(half);
    for (int i = 0; i < half; ++i) f[i] = boxplus_ref(llr[i], llr[half + i]);
    BitWord left = sc_textbook_rec(f, frozen, lo, lo + half);
    // re-encode left to partial sums
    BitWord left_enc = polar_xform_ref(left);
    std::vector<double> g(half);
    for (int i = 0; i < half; ++i)
        g[i] = llr[half + i] + (left_enc[i] ? -llr[i] : llr[i]);
    BitWord right = sc_textbook_rec(g, frozen, lo + half, hi);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

}  // namespace

BitWord sc_textbook(const std::vector<double>& llr, const std::vector<Bit>& frozen) {
    return sc_textbook_rec(llr, frozen, 0, static_cast<int>(llr.size()));
}

std::vector<double> quantized_density_evolution(double es_over_n0, int m_exp, int grid_bins,
                                                double llr_range) {
    // Densities over a symmetric LLR grid; check node via full convolution in
    // the boxplus domain, variable node via ordinary convolution, both done
    // by direct O(bins^2) accumulation onto nearest grid points.
    const int bins = grid_bins | 1;  // odd, center bin = 0
    const double step = 2.0 * llr_range / (bins - 1);
    auto idx_of = [&](double x) {
        const double clamped = std::clamp(x, -llr_range, llr_range);
        return static_cast<int>(std::lround((clamped + llr_range) / step));
    };
    auto val_of = [&](int i) { return -llr_range + i * step; };

    // channel density: LLR ~ N(4Es/N0 per the model with Es=1, var 8Es/N0)
    const double mean = 4.0 * es_over_n0;
    const double sd = std::sqrt(8.0 * es_over_n0);
    std::vector<double> chan(bins, 0.0);
    for (int i = 0; i < bins; ++i) {
        const double z = (val_of(i) - mean) / sd;
        chan[i] = std::exp(-0.5 * z * z);
    }
    double norm = 0.0;
    for (double v : chan) norm += v;
    for (double& v : chan) v /= norm;

    std::vector<std::vector<double>> densities{chan};
    for (int level = 0; level < m_exp; ++level) {
        std::vector<std::vector<double>> next;
        next.reserve(densities.size() * 2);
        for (const auto& d : densities) {
            std::vector<double> check(bins, 0.0), var(bins, 0.0);
            for (int i = 0; i < bins; ++i) {
                if (d[i] == 0.0) continue;
                for (int j = 0; j < bins; ++j) {
                    if (d[j] == 0.0) continue;
                    const double p = d[i] * d[j];
                    check[idx_of(boxplus_ref(val_of(i), val_of(j)))] += p;
                    var[idx_of(val_of(i) + val_of(j))] += p;
                }
            }
            next.push_back(std::move(check));
            next.push_back(std::move(var));
        }
        densities = std::move(next);
    }

    std::vector<double> perr(densities.size());
    for (std::size_t c = 0; c < densities.size(); ++c) {
        double e = 0.0;
        for (int i = 0; i < bins; ++i) {
            if (val_of(i) < 0) e += densities[c][i];
            if (val_of(i) == 0.0) e += 0.5 * densities[c][i];
        }
        perr[c] = e;
    }
    return perr;
}

std::vector<Bit> gf2_poly_mod(const std::vector<Bit>& a, const std::vector<Bit>& g) {
    // work with degree-indexed integers: bit t of the big integer = coefficient of D^t
    const int deg_g = static_cast<int>(g.size()) - 1;
    std::vector<std::uint64_t> acc((a.size() + 63) / 64 + 2, 0);
    auto set_bit = [&](int t) { acc[t / 64] ^= (std::uint64_t{1} << (t % 64)); };
    auto get_bit = [&](int t) { return (acc[t / 64] >> (t % 64)) & 1; };
    const int deg_a = static_cast<int>(a.size()) - 1;
    for (int i = 0; i <= deg_a; ++i)
        if (a[i]) set_bit(deg_a - i);
    for (int t = deg_a; t >= deg_g; --t) {
        if (!get_bit(t)) continue;
        for (int s = 0; s <= deg_g; ++s)
            if (g[s]) set_bit(t - deg_g + (deg_g - s));
    }
    std::vector<Bit> rem(deg_g, 0);  // coefficients D^{deg_g-1} .. D^0
    for (int t = 0; t < deg_g; ++t) rem[deg_g - 1 - t] = static_cast<Bit>(get_bit(t));
    return rem;
}

}  // namespace oracles
