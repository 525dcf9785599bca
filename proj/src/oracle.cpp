#include "bd/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "bd/analytics.hpp"

namespace bd {

std::vector<double> conditioned_semigroup_oracle(const RateModel& model, int n,
                                                 int i, double t, int n_cap) {
  if (n < 2) throw InvalidIndex("conditioned_semigroup_oracle requires n >= 2");
  if (n > n_cap)
    throw ScaleExceeded("dense semigroup oracle capped at n = " +
                        std::to_string(n_cap));
  if (i < 2 || i > n)
    throw InvalidIndex("conditioned_semigroup_oracle requires 2 <= i <= n");
  if (!(t >= 0.0)) throw ConfigError("time must be nonnegative");

  // States 1..n+1 at indices 0..n; rows 1 and n+1 are absorbing.
  const int dim = n + 1;
  const double z = model.z();
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 2; s <= n; ++s) {
    const double up = model.rate_a(s) * z;
    const double down = model.rate_b(s);
    gen(s - 1, s) = up;
    gen(s - 1, s - 2) = down;
    gen(s - 1, s - 1) = -(up + down);
  }
  const Eigen::MatrixXd pt = (t * gen).exp();
  std::vector<double> row(dim);
  for (int j = 0; j < dim; ++j) row[j] = pt(i - 1, j);
  return row;
}

namespace {

// Solves (I - h/2 A) x = rhs for the tridiagonal A of the linear system
// (Thomas algorithm; diag/lower/upper describe A over sizes 2..i_max).
void thomas_solve(const std::vector<double>& lower,
                  const std::vector<double>& diag,
                  const std::vector<double>& upper, double h,
                  std::vector<double>& rhs, std::vector<double>& cp,
                  std::vector<double>& dp) {
  const size_t m = diag.size();
  cp[0] = (-h / 2 * upper[0]) / (1.0 - h / 2 * diag[0]);
  dp[0] = rhs[0] / (1.0 - h / 2 * diag[0]);
  for (size_t r = 1; r < m; ++r) {
    const double a = -h / 2 * lower[r];       // sub-diagonal of I - h/2 A
    const double b = 1.0 - h / 2 * diag[r];   // main diagonal
    const double c = -h / 2 * upper[r];       // super-diagonal
    const double denom = b - a * cp[r - 1];
    cp[r] = c / denom;
    dp[r] = (rhs[r] - a * dp[r - 1]) / denom;
  }
  rhs[m - 1] = dp[m - 1];
  for (size_t r = m - 1; r-- > 0;) rhs[r] = dp[r] - cp[r] * rhs[r + 1];
}

}  // namespace

OdeTrajectory integrate_linear_bd(const RateModel& model,
                                  const OdeOptions& options) {
  const int i_max = options.i_max;
  if (i_max < 2) throw InvalidIndex("integrate_linear_bd requires i_max >= 2");
  if (!(options.t_end >= 0.0) || !(options.dt > 0.0))
    throw ConfigError("integrate_linear_bd requires t_end >= 0 and dt > 0");
  std::vector<double> probes =
      options.probes.empty() ? std::vector<double>{options.t_end}
                             : options.probes;
  for (size_t k = 0; k < probes.size(); ++k) {
    if (probes[k] < 0.0 || probes[k] > options.t_end ||
        (k > 0 && probes[k] <= probes[k - 1]))
      throw ConfigError("probes must be increasing within [0, t_end]");
  }

  // Row i (sizes 2..i_max): c_i' = a_{i-1} z c_{i-1} - (a_i z + b_i) c_i
  //                                + b_{i+1} c_{i+1} + 1_{i=2} a_1 z^2,
  // with c_{i_max+1} terms dropped (absorbing cut).
  const double z = model.z();
  const size_t m = static_cast<size_t>(i_max) - 1;
  std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0);
  for (int i = 2; i <= i_max; ++i) {
    const size_t r = static_cast<size_t>(i) - 2;
    diag[r] = -(model.rate_a(i) * z + model.rate_b(i));
    if (i > 2) lower[r] = model.rate_a(i - 1) * z;
    if (i < i_max) upper[r] = model.rate_b(i + 1);
  }
  const double source = model.rate_a(1) * z * z;

  OdeTrajectory out;
  if (!options.boundary_exact) {
    try {
      if (model.regime() == Regime::Supercritical) {
        out.f = stationary_intensities(model, i_max, 1e-12).values;
        out.has_f = true;
      }
    } catch (const HypothesisViolation&) {
      // No saturation limit: no stationary comparison.
    }
  }

  std::vector<double> c(m, 0.0), rhs(m), cp(m), dp(m);
  const auto check_boundary = [&]() {
    if (options.boundary_exact) return;
    const double peak = *std::max_element(c.begin(), c.end());
    if (peak > 0.0 && c[m - 1] > options.boundary_tol * peak)
      throw TruncationDominates(
          "mass reached the truncation boundary of the linear system");
  };
  const auto snapshot = [&](double t) {
    OdeSnapshot snap;
    snap.t = t;
    snap.c = c;
    if (out.has_f) {
      WeightedSeq diff;
      diff.entries.resize(m);
      for (size_t r = 0; r < m; ++r) diff.entries[r] = c[r] - out.f[r];
      snap.h_dist_to_f = h_norm(model, diff);
    }
    out.snapshots.push_back(std::move(snap));
  };

  double t = 0.0;
  for (double target : probes) {
    if (target > t) {
      const int steps = static_cast<int>(std::ceil((target - t) / options.dt));
      const double h = (target - t) / steps;
      for (int s = 0; s < steps; ++s) {
        // rhs = (I + h/2 A) c + h * source e_2
        for (size_t r = 0; r < m; ++r) {
          double v = c[r] + h / 2 * diag[r] * c[r];
          if (r > 0) v += h / 2 * lower[r] * c[r - 1];
          if (r + 1 < m) v += h / 2 * upper[r] * c[r + 1];
          rhs[r] = v;
        }
        rhs[0] += h * source;
        thomas_solve(lower, diag, upper, h, rhs, cp, dp);
        c.swap(rhs);
      }
      t = target;
    }
    check_boundary();
    snapshot(t);
  }
  return out;
}

}  // namespace bd
