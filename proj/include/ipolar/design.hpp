#pragma once

#include <vector>

#include "ipolar/code_spec.hpp"

namespace ipolar {

/// Mutual information of a BI-AWGN bit channel whose LLR is Gaussian with
/// variance sigma^2 and mean sigma^2/2:
///   J(sigma) = 1 - E[log2(1 + e^-X)], X ~ N(sigma^2/2, sigma^2).
/// Monotone nondecreasing, J(0) = 0, J(inf) = 1; absolute accuracy <= 1e-9.
double j_function(double sigma);

/// Inverse of j_function on [0, 1); bracketed bisection on the monotone table.
double j_inverse(double i_val);

/// Per-channel mutual information after evolving level by level:
///   I_{mu+1}^{(2i+1)} = J(sqrt(2) Jinv(I)),  I_{mu+1}^{(2i)} = 2 I - J(sqrt(2) Jinv(I)).
/// Returns the 2^m_exp values at the final level, clipped to [0, 1].
std::vector<double> ga_evolve(double i0, int m_exp);

/// GA bit-channel selection for the BI-AWGN channel: evolves from
/// I_0 = J(sqrt(8 Es/N0)) and keeps the k most reliable channels
/// (ties broken toward the lower index).
CodeSpec select_unfrozen(int m_exp, int k, double es_over_n0);

/// Builds a spec from an externally supplied priority sequence (e.g. a 5G
/// polar sequence): the first k in-range indices of the list are kept.
CodeSpec spec_from_sequence(int m_exp, int k, const std::vector<int>& priority);

}  // namespace ipolar
