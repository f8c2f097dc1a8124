#pragma once

#include "ipolar/wef.hpp"

namespace ipolar {

/// Gaussian tail Q(x) = P(N(0,1) > x).
double q_function(double x);

/// One SNR operating point. rho is the parameter entering the pairwise
/// error term Q(sqrt(2 d rho)); with rho = Es/N0 this is the standard
/// BI-AWGN pairwise error probability.
struct SnrPoint {
    double rho = 0.0;            // Es/N0, linear
    double es_over_n0_db = 0.0;  // user-facing
    double rate = 1.0;           // for Eb/N0 conversion

    static SnrPoint from_es_n0_db(double db);
    static SnrPoint from_eb_n0_db(double db, double rate);
    static SnrPoint from_rho(double rho);

    double eb_over_n0_db() const;
};

/// Union bound: sum_{d>0} A_d Q(sqrt(2 d rho)). May exceed 1 at low SNR.
double union_bound(const WeightPoly<double>& wef, const SnrPoint& point);

/// Divsalar-style simple bound: termwise min of an exponential bound
/// e^{-n E(rho, delta)} and the union term, summed over d = d_min .. n-k+1.
/// Always <= union_bound restricted to that range.
double simple_bound(const WeightPoly<double>& wef, const SnrPoint& point, int n, int k);

}  // namespace ipolar
