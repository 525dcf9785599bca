#pragma once

#include <vector>

#include "bd/model.hpp"

namespace bd {

// Transition row p^n_{ij}(t), j = 1..n+1, of the stopped single-cluster walk
// Y (absorbing at 1 and n+1), from the dense matrix exponential of the full
// (n+1)-state generator. Test oracle: n is capped (default 200).
std::vector<double> conditioned_semigroup_oracle(const RateModel& model, int n,
                                                 int i, double t,
                                                 int n_cap = 200);

struct OdeOptions {
  int i_max = 200;
  double t_end = 10.0;
  double dt = 1e-3;             // Crank-Nicolson step ceiling
  std::vector<double> probes;   // snapshot times; defaults to {t_end}
  // The system is cut at i_max with an absorbing boundary. When the cut is a
  // truncation of the infinite system, mass reaching it invalidates the run
  // (TruncationDominates); when it models the killed horizon-n system
  // exactly, set boundary_exact.
  bool boundary_exact = false;
  double boundary_tol = 1e-8;   // trigger: c_imax / max_i c_i
};

struct OdeSnapshot {
  double t = 0.0;
  std::vector<double> c;     // c_i, i = 2..i_max
  double h_dist_to_f = 0.0;  // ||c - f||_H over 2..i_max (supercritical only)
};

struct OdeTrajectory {
  std::vector<OdeSnapshot> snapshots;
  bool has_f = false;      // stationary comparison available (supercritical)
  std::vector<double> f;   // stationary intensities f_i, i = 2..i_max
};

// Integrates the deterministic linear system c' = Ac + a_1 z^2 e_2, c(0) = 0
// (Crank-Nicolson with tridiagonal solves). With boundary_exact the solution
// is the mean vector of the killed horizon-i_max population process and its
// stationary limit is f^{i_max}; otherwise it approximates the infinite
// system, whose supercritical limit is f.
OdeTrajectory integrate_linear_bd(const RateModel& model,
                                  const OdeOptions& options);

}  // namespace bd
