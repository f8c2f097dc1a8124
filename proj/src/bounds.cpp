#include "ipolar/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ipolar {

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

SnrPoint SnrPoint::from_es_n0_db(double db) {
    SnrPoint p;
    p.es_over_n0_db = db;
    p.rho = std::pow(10.0, db / 10.0);
    p.rate = 1.0;
    return p;
}

SnrPoint SnrPoint::from_eb_n0_db(double db, double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("rate must be > 0");
    SnrPoint p;
    p.rate = rate;
    p.es_over_n0_db = db + 10.0 * std::log10(rate);
    p.rho = std::pow(10.0, p.es_over_n0_db / 10.0);
    return p;
}

SnrPoint SnrPoint::from_rho(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
    SnrPoint p;
    p.rho = rho;
    p.es_over_n0_db = 10.0 * std::log10(rho);
    p.rate = 1.0;
    return p;
}

double SnrPoint::eb_over_n0_db() const {
    return es_over_n0_db - 10.0 * std::log10(rate);
}

double union_bound(const WeightPoly<double>& wef, const SnrPoint& point) {
    double sum = 0.0;
    for (const auto& [d, a] : wef.coeffs()) {
        if (d == 0) continue;
        sum += a * q_function(std::sqrt(2.0 * d * point.rho));
    }
    return sum;
}

namespace {

/// Exponent of the simple bound for one spectral line. delta = d/n,
/// r = ln(A_d)/n. Falls back to the union-Chernoff exponent -r + delta*rho
/// outside the stated validity interval of the refined expression.
double simple_bound_exponent(double rho, double delta, double r) {
    const double chernoff = -r + delta * rho;
    if (delta <= 0.0 || delta >= 1.0) return chernoff;
    const double c0 = (1.0 - std::exp(-2.0 * r)) * (1.0 - delta) / (2.0 * delta);
    const double rho_hi = (std::exp(2.0 * r) - 1.0) / (2.0 * delta * (1.0 - delta));
    if (!(rho > c0) || !(rho < rho_hi)) return chernoff;
    const double radicand = rho / c0 + 2.0 * rho + rho * rho;
    if (!(radicand > 0.0)) return chernoff;
    const double f = std::sqrt(radicand) - rho - 1.0;
    const double log_arg = 1.0 - 2.0 * c0 * f;
    if (!(log_arg > 0.0) || !(f > -1.0)) return chernoff;
    return 0.5 * std::log(log_arg) + rho * f / (1.0 + f);
}

}  // namespace

double simple_bound(const WeightPoly<double>& wef, const SnrPoint& point, int n, int k) {
    if (n <= 0 || k <= 0 || k > n) throw std::invalid_argument("simple_bound: bad (n, k)");
    const double rho = point.rho;
    double sum = 0.0;
    for (const auto& [d, a] : wef.coeffs()) {
        if (d == 0 || d > n - k + 1) continue;  // summation range of the bound
        if (!(a > 0.0)) continue;               // zero lines contribute nothing
        const double union_term = a * q_function(std::sqrt(2.0 * d * rho));
        const double delta = static_cast<double>(d) / n;
        const double r = std::log(a) / n;
        const double exp_term = std::exp(-n * simple_bound_exponent(rho, delta, r));
        sum += std::min(exp_term, union_term);
    }
    return sum;
}

}  // namespace ipolar
