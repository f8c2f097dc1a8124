#include "ipolar/binomial.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ipolar {

namespace {

std::mutex g_pascal_mutex;
std::vector<std::vector<BigInt>> g_pascal;  // row n holds C(n, 0..n)
const BigInt g_zero = 0;

void grow_pascal(int n) {
    while (static_cast<int>(g_pascal.size()) <= n) {
        const int r = static_cast<int>(g_pascal.size());
        std::vector<BigInt> row(r + 1);
        row[0] = 1;
        row[r] = 1;
        for (int k = 1; k < r; ++k) row[k] = g_pascal[r - 1][k - 1] + g_pascal[r - 1][k];
        g_pascal.push_back(std::move(row));
    }
}

}  // namespace

const BigInt& binom_exact(int n, int k) {
    if (n < 0) throw std::invalid_argument("binom_exact: n < 0");
    if (k < 0 || k > n) return g_zero;
    std::lock_guard<std::mutex> lock(g_pascal_mutex);
    grow_pascal(n);
    return g_pascal[n][k];
}

double log_binom(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    static std::vector<double> lg = [] {
        std::vector<double> t(1 << 14);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    if (n < static_cast<int>(lg.size())) return lg[n] - lg[k] - lg[n - k];
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace ipolar
