#include "ipolar/design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ipolar {

namespace {

double log2_1p_exp_neg(double x) {
    // log2(1 + e^-x), stable for large |x|
    if (x < -36.0) return -x / std::numbers::ln2_v<double>;
    if (x > 36.0) return std::exp(-x) / std::numbers::ln2_v<double>;
    return std::log1p(std::exp(-x)) / std::numbers::ln2_v<double>;
}

double j_integrand(double x, double sigma) {
    const double mu = sigma * sigma / 2.0;
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi_v<double>) * sigma) *
           log2_1p_exp_neg(x);
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth, double sigma) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = j_integrand(lm, sigma), frm = j_integrand(rm, sigma);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2, depth - 1, sigma) +
           adaptive_simpson(m, b, fm, frm, fb, right, tol / 2, depth - 1, sigma);
}

/// J by adaptive quadrature of the defining integral (table construction).
double j_by_quadrature(double sigma) {
    if (sigma <= 0.0) return 0.0;
    const double mu = sigma * sigma / 2.0;
    const double a = mu - 14.0 * sigma, b = mu + 14.0 * sigma;
    const double m = 0.5 * (a + b);
    const double fa = j_integrand(a, sigma), fm = j_integrand(m, sigma), fb = j_integrand(b, sigma);
    const double whole = simpson(a, b, fa, fm, fb);
    const double val = adaptive_simpson(a, b, fa, fm, fb, whole, 1e-13, 48, sigma);
    return std::min(1.0, std::max(0.0, 1.0 - val));
}

constexpr double kSigmaMax = 40.0;  // J(40) == 1 to double precision

/// Monotone cubic Hermite (Fritsch-Carlson) table of J over [0, kSigmaMax].
class JTable {
public:
    JTable() {
        const int initial = 1601;
        x_.resize(initial);
        for (int i = 0; i < initial; ++i) x_[i] = kSigmaMax * i / (initial - 1);
        y_.resize(initial);
        for (int i = 0; i < initial; ++i) y_[i] = j_by_quadrature(x_[i]);
        // refine intervals until the interpolant tracks quadrature to 2e-10
        for (int pass = 0; pass < 12; ++pass) {
            compute_slopes();
            std::vector<double> nx, ny;
            bool refined = false;
            for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
                nx.push_back(x_[i]);
                ny.push_back(y_[i]);
                const double xm = 0.5 * (x_[i] + x_[i + 1]);
                const double exact = j_by_quadrature(xm);
                if (std::abs(eval_interval(i, xm) - exact) > 2e-10) {
                    nx.push_back(xm);
                    ny.push_back(exact);
                    refined = true;
                }
            }
            nx.push_back(x_.back());
            ny.push_back(y_.back());
            x_ = std::move(nx);
            y_ = std::move(ny);
            if (!refined) break;
        }
        compute_slopes();
    }

    double eval(double sigma) const {
        if (sigma <= 0.0) return 0.0;
        if (sigma >= kSigmaMax) return 1.0;
        return eval_interval(find_interval(sigma), sigma);
    }

    double inverse(double v) const {
        if (v <= 0.0) return 0.0;
        // bisect on the monotone interpolant
        double lo = 0.0, hi = kSigmaMax;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (eval(mid) < v ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    std::size_t find_interval(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        if (i == 0) return 0;
        if (i >= x_.size()) return x_.size() - 2;
        return i - 1;
    }

    double eval_interval(std::size_t i, double x) const {
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
    }

    void compute_slopes() {
        const std::size_t n = x_.size();
        m_.assign(n, 0.0);
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        m_[0] = delta[0];
        m_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] <= 0.0 || delta[i] <= 0.0) {
                m_[i] = 0.0;  // keep monotone through flat spots
            } else {
                const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
                const double w1 = 2 * h1 + h0, w2 = h1 + 2 * h0;
                m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
    }

    std::vector<double> x_, y_, m_;
};

const JTable& j_table() {
    static const JTable table;
    return table;
}

}  // namespace

double j_function(double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("j_function: sigma must be >= 0");
    if (std::isnan(sigma)) throw std::invalid_argument("j_function: sigma is NaN");
    return j_table().eval(sigma);
}

double j_inverse(double i_val) {
    if (!(i_val >= 0.0) || i_val >= 1.0)
        throw std::invalid_argument("j_inverse: value must lie in [0, 1)");
    return j_table().inverse(i_val);
}

std::vector<double> ga_evolve(double i0, int m_exp) {
    if (!(i0 >= 0.0 && i0 <= 1.0)) throw std::invalid_argument("ga_evolve: i0 must be in [0, 1]");
    if (m_exp < 0) throw std::invalid_argument("ga_evolve: m_exp must be >= 0");
    std::vector<double> vals{i0};
    for (int mu = 0; mu < m_exp; ++mu) {
        std::vector<double> next(vals.size() * 2);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double v = vals[i];
            double odd, even;
            if (v <= 0.0) {
                odd = even = 0.0;
            } else if (v >= 1.0) {
                odd = even = 1.0;
            } else {
                odd = j_function(std::sqrt(2.0) * j_inverse(v));
                even = 2.0 * v - odd;
            }
            next[2 * i] = std::clamp(even, 0.0, 1.0);
            next[2 * i + 1] = std::clamp(odd, 0.0, 1.0);
        }
        vals = std::move(next);
    }
    return vals;
}

CodeSpec select_unfrozen(int m_exp, int k, double es_over_n0) {
    if (m_exp < 1) throw std::invalid_argument("select_unfrozen: m_exp must be >= 1");
    const int n = 1 << m_exp;
    if (k < 1 || k > n) throw std::invalid_argument("select_unfrozen: k out of range");
    if (!(es_over_n0 > 0.0)) throw std::invalid_argument("select_unfrozen: Es/N0 must be > 0");
    const double sigma_llr = std::sqrt(8.0 * es_over_n0);
    const auto i_final = ga_evolve(j_function(sigma_llr), m_exp);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (i_final[a] != i_final[b]) return i_final[a] > i_final[b];
        return a < b;  // ties toward the lower index
    });
    std::vector<int> chosen(order.begin(), order.begin() + k);
    return CodeSpec::make(m_exp, std::move(chosen));
}

CodeSpec spec_from_sequence(int m_exp, int k, const std::vector<int>& priority) {
    const int n = 1 << m_exp;
    std::vector<int> chosen;
    std::vector<char> seen(n, 0);
    for (int idx : priority) {
        if (idx < 0 || idx >= n) continue;
        if (seen[idx]) throw std::invalid_argument("priority sequence repeats an index");
        seen[idx] = 1;
        chosen.push_back(idx);
        if (static_cast<int>(chosen.size()) == k) break;
    }
    if (static_cast<int>(chosen.size()) != k)
        throw std::invalid_argument("priority sequence too short for the requested k");
    return CodeSpec::make(m_exp, std::move(chosen));
}

}  // namespace ipolar
