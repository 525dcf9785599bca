#pragma once

#include <utility>
#include <vector>

#include "bd/model.hpp"

namespace bd {

// gamma_n: the spectral gap of the single-cluster walk generator truncated to
// sizes {2..n} (absorption at 1 and killing at n+1 fold into the diagonal).
// The block is similar to the symmetric tridiagonal with diagonal
// -(a_i z + b_i) and off-diagonal sqrt(a_i z b_{i+1}); gamma_n is the
// smallest eigenvalue magnitude.
double spectral_gap_truncated(const RateModel& model, int n, int n_cap = 10000);

struct GapEstimate {
  double value = 0.0;
  double bracket_lo = 0.0;  // gamma at the final truncation
  double bracket_hi = 0.0;  // gamma at the previous truncation
  int n_used = 0;
  std::vector<std::pair<int, double>> schedule;  // (n, gamma_n) evaluated
  // The growth clauses of the symmetrization hypothesis could not be fully
  // certified (e.g. bounded attachment rates); the estimate is still the
  // limit of the truncated gaps.
  bool h2_warning = false;
};

// Approximates the infinite-operator gap lambda by gamma_n over the geometric
// schedule n = 2, 4, 8, ... until successive values differ by < rel_tol
// relative. Requires the ratio-limit hypothesis and a_i = O(i).
GapEstimate spectral_gap_estimate(const RateModel& model, double rel_tol = 1e-3,
                                  int n_cap = 10000);

}  // namespace bd
