#include "bd/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bd {

double spectral_gap_truncated(const RateModel& model, int n, int n_cap) {
  if (n < 2) throw InvalidIndex("spectral_gap_truncated requires n >= 2");
  if (n > n_cap)
    throw ScaleExceeded("spectral gap truncation exceeds the configured cap");
  const double z = model.z();
  if (n == 2) return model.rate_a(2) * z + model.rate_b(2);

  // Eigenvalues of the negated symmetrized block: diagonal a_i z + b_i,
  // off-diagonal -sqrt(a_i z b_{i+1}) (the sign is immaterial for a
  // symmetric tridiagonal spectrum).
  const int dim = n - 1;
  Eigen::VectorXd diag(dim), sub(dim - 1);
  for (int i = 2; i <= n; ++i) {
    diag[i - 2] = model.rate_a(i) * z + model.rate_b(i);
    if (i < n) sub[i - 2] = std::sqrt(model.rate_a(i) * z * model.rate_b(i + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

GapEstimate spectral_gap_estimate(const RateModel& model, double rel_tol,
                                  int n_cap) {
  if (!(rel_tol > 0.0))
    throw ConfigError("spectral_gap_estimate requires rel_tol > 0");
  const HypothesisReport hyp = check_hypotheses(model);
  if (!hyp.pass_h1())
    throw HypothesisViolation(
        "spectral gap estimate requires the ratio-limit hypothesis: " +
        hyp.h1.note);
  const auto& p = model.params();
  const bool superlinear = (model.family() == Family::PowerLaw ||
                            model.family() == Family::Metastable) &&
                           p.alpha > 1.0;
  if (superlinear)
    throw HypothesisViolation(
        "spectral gap estimate requires a_i = O(i): " + hyp.h2.note);

  GapEstimate out;
  out.h2_warning = !hyp.pass_h2();
  double prev = spectral_gap_truncated(model, 2, n_cap);
  out.schedule.emplace_back(2, prev);
  for (int n = 4; n <= n_cap; n *= 2) {
    const double cur = spectral_gap_truncated(model, n, n_cap);
    out.schedule.emplace_back(n, cur);
    if (std::abs(cur - prev) < rel_tol * cur) {
      out.value = cur;
      out.bracket_lo = cur;
      out.bracket_hi = prev;
      out.n_used = n;
      return out;
    }
    prev = cur;
  }
  throw NoConvergence(
      "spectral gap schedule exhausted the truncation cap before settling");
}

}  // namespace bd
