#include "bd/analytics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "bd/logsum.hpp"

namespace bd {

namespace {

constexpr int kSeriesCap = 2'000'000;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_detach_ratio(const RateModel& m, int i) {
  return m.log_rate_b(i) - m.log_rate_a(i);
}

// Models whose coefficients are defined for every i (infinite-horizon series
// are computable).
bool infinite_horizon_ok(const RateModel& m) {
  return m.family() != Family::Tabulated || m.tail_rule() == TailRule::HoldLastRatio;
}

// Regime when a saturation limit exists; nullopt for power_law beta != alpha.
std::optional<Regime> soft_regime(const RateModel& m) {
  try {
    return m.regime();
  } catch (const HypothesisViolation&) {
    return std::nullopt;
  }
}

// Certified bounds on the detachment ratio b_i/a_i over all i > k:
// {inf, sup}. These come from the family's monotonicity (constant for
// Constant/PowerLaw, decreasing to z_s for Metastable and beta < alpha,
// increasing for beta > alpha) or from a finite scan plus the held tail.
struct RatioBounds {
  double inf, sup;
};

RatioBounds detach_ratio_bounds_beyond(const RateModel& m, int k) {
  const auto& p = m.params();
  switch (m.family()) {
    case Family::Constant:
      return {p.b / p.a, p.b / p.a};
    case Family::PowerLaw: {
      if (p.beta == p.alpha) {
        const double r = p.big_b / p.big_a;
        return {r, r};
      }
      const double r_next = std::exp(log_detach_ratio(m, k + 1));
      return p.beta > p.alpha ? RatioBounds{r_next, kInf}
                              : RatioBounds{0.0, r_next};
    }
    case Family::Metastable:
      // b_i/a_i = z_s exp(q i^-gamma): strictly decreasing to z_s.
      return {p.zs, std::exp(log_detach_ratio(m, k + 1))};
    case Family::Tabulated: {
      if (m.tail_rule() == TailRule::Error)
        throw IndexBeyondTable(
            "infinite-horizon series undefined: tabulated tail rule is error");
      const int cover = std::max<int>(static_cast<int>(m.table_a().size()),
                                      static_cast<int>(m.table_b().size()) + 1);
      double lo = kInf, hi = 0.0;
      for (int i = k + 1; i <= cover; ++i) {
        const double r = m.rate_b(i) / m.rate_a(i);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      const double held =
          m.table_b().back() / m.table_a().back();  // ratio past both tables
      return {std::min(lo, held), std::max(hi, held)};
    }
  }
  return {0.0, kInf};
}

// sup_{j >= k} w_{j+1}/w_j with w_j = 1/(a_j Q_j z^{j+1}): the ratio is
// b_{j+1}/(a_{j+1} z).
double w_ratio_sup(const RateModel& m, int k) {
  return detach_ratio_bounds_beyond(m, k).sup / m.z();
}

// sup_{j >= k} c_{j+1}^eq/c_j^eq = z / inf_{i > k} b_i/a_i.
double eq_ratio_sup(const RateModel& m, int k) {
  const double lo = detach_ratio_bounds_beyond(m, k).inf;
  return lo > 0.0 ? m.z() / lo : kInf;
}

struct AdaptiveSum {
  double log_value = kNegInf;
  double rel_bound = 0.0;  // certified relative remainder of the series
  int last_index = 0;
};

// Sums exp(log_term(k)) for k >= k0 until the geometric remainder bound
// log_term(k) * ratio_sup(k)/(1 - ratio_sup(k)) drops below rel_tol of the
// partial sum. ratio_sup(k) must bound every forward term ratio past k.
template <typename TermFn, typename RatioFn>
AdaptiveSum adaptive_logsum(int k0, double rel_tol, const char* what,
                            TermFn&& log_term, RatioFn&& ratio_sup) {
  AdaptiveSum out;
  const double log_tol = std::log(rel_tol);
  for (int k = k0; k <= k0 + kSeriesCap; ++k) {
    const double lt = log_term(k);
    out.log_value = logaddexp(out.log_value, lt);
    out.last_index = k;
    const double rho = ratio_sup(k);
    if (rho < 1.0) {
      const double log_rem = lt + std::log(rho) - std::log1p(-rho);
      if (log_rem <= out.log_value + log_tol) {
        out.rel_bound = std::exp(log_rem - out.log_value);
        return out;
      }
    }
  }
  throw NoConvergence(std::string(what) +
                      ": series failed to certify its tail within the index cap");
}

// Backward fold of ln sum_{k=i..n} w_k for every i = 1..n; logs[i] is the
// suffix starting at i. A single deterministic association order keeps
// absorption_prob and qsd_intensities bit-identical.
std::vector<double> log_w_suffixes(const RateModel& m, int n) {
  std::vector<double> logs(static_cast<size_t>(n) + 1, kNegInf);
  for (int i = n; i >= 1; --i)
    logs[i] = logaddexp(m.log_w(i), i < n ? logs[i + 1] : kNegInf);
  return logs;
}

AdaptiveSum log_w_tail(const RateModel& m, int i, double rel_tol,
                       const char* what) {
  return adaptive_logsum(
      i, rel_tol, what, [&](int k) { return m.log_w(k); },
      [&](int k) { return w_ratio_sup(m, k); });
}

void require_supercritical(const RateModel& m, const char* what) {
  if (m.regime() != Regime::Supercritical)
    throw SubcriticalRegime(std::string(what) +
                            " requires the super-critical regime (z > z_s)");
}

}  // namespace

double flux_jn(const RateModel& model, int n) {
  if (n < 2) throw InvalidIndex("flux_Jn requires n >= 2");
  double log_sum = kNegInf;
  for (int k = n; k >= 1; --k) log_sum = logaddexp(log_sum, model.log_w(k));
  const double jn = std::exp(-log_sum);
  assert(jn <=
         model.rate_a(1) * model.z() * model.z() * (1.0 + 1e-9));
  return jn;
}

FluxResult flux_j(const RateModel& model, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw ConfigError("flux_J requires rel_tol in (0, 1)");
  require_supercritical(model, "flux_J");
  const AdaptiveSum s = log_w_tail(model, 1, rel_tol, "flux_J");
  return {std::exp(-s.log_value), s.rel_bound, s.last_index};
}

IntensityVector qsd_intensities(const RateModel& model, int n) {
  if (n < 2) throw InvalidIndex("qsd_intensities requires n >= 2");
  const std::vector<double> logs = log_w_suffixes(model, n);
  IntensityVector out;
  out.kind = IntensityKind::Qsd;
  out.n = n;
  out.values.resize(static_cast<size_t>(n) - 1);
  for (int i = 2; i <= n; ++i) {
    out.values[i - 2] = std::exp(-logs[1] + model.log_qz(i) + logs[i]);
    out.total_mass += out.values[i - 2];
  }
  return out;
}

IntensityVector stationary_intensities(const RateModel& model, int i_max,
                                       double rel_tol) {
  if (i_max < 2) throw InvalidIndex("stationary_intensities requires i_max >= 2");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw ConfigError("stationary_intensities requires rel_tol in (0, 1)");
  require_supercritical(model, "stationary_intensities");

  // One adaptive pass certifies the shortest suffix (i = i_max); the fixed
  // absolute remainder is then at most rel_tol/2 of every longer suffix.
  const AdaptiveSum tail =
      log_w_tail(model, i_max, rel_tol / 2, "stationary_intensities");
  const int top = tail.last_index;
  std::vector<double> logs = log_w_suffixes(model, top);

  IntensityVector out;
  out.kind = IntensityKind::Stationary;
  out.tail_index = top;
  out.tail_rel_bound = 2 * tail.rel_bound;  // suffix and 1/J truncation errors
  out.mass_beyond_bound = kInf;
  out.values.resize(static_cast<size_t>(i_max) - 1);
  for (int i = 2; i <= i_max; ++i) {
    out.values[i - 2] = std::exp(-logs[1] + model.log_qz(i) + logs[i]);
    out.total_mass += out.values[i - 2];
  }
  return out;
}

IntensityVector equilibrium_intensities(const RateModel& model, int i_max) {
  if (i_max < 2) throw InvalidIndex("equilibrium_intensities requires i_max >= 2");
  IntensityVector out;
  out.kind = IntensityKind::Equilibrium;
  out.values.resize(static_cast<size_t>(i_max) - 1);
  for (int i = 2; i <= i_max; ++i) {
    out.values[i - 2] = std::exp(model.log_qz(i));
    out.total_mass += out.values[i - 2];
  }
  out.mass_beyond_bound = kInf;
  if (infinite_horizon_ok(model) && soft_regime(model) == Regime::Subcritical) {
    const double rho = eq_ratio_sup(model, i_max);
    if (rho < 1.0)
      out.mass_beyond_bound =
          std::exp(model.log_qz(i_max) + std::log(rho) - std::log1p(-rho));
  }
  return out;
}

double absorption_prob(const RateModel& model, int i, int n) {
  if (n < 2) throw InvalidIndex("absorption_prob requires n >= 2");
  if (i < 1 || i > n) throw InvalidIndex("absorption_prob requires 1 <= i <= n");
  const std::vector<double> logs = log_w_suffixes(model, n);
  return std::exp(logs[i] - logs[1]);
}

double absorption_prob_inf(const RateModel& model, int i, double rel_tol) {
  if (i < 1) throw InvalidIndex("absorption_prob_inf requires i >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw ConfigError("absorption_prob_inf requires rel_tol in (0, 1)");
  require_supercritical(model, "absorption_prob_inf");
  if (i == 1) return 1.0;
  const AdaptiveSum tail =
      log_w_tail(model, i, rel_tol, "absorption_prob_inf");
  double log_prefix = kNegInf;
  for (int k = i - 1; k >= 1; --k)
    log_prefix = logaddexp(log_prefix, model.log_w(k));
  return std::exp(tail.log_value - logaddexp(log_prefix, tail.log_value));
}

double h_norm(const RateModel& model, const WeightedSeq& x) {
  if (x.first_index < 2)
    throw InvalidIndex("h_norm entries are indexed from cluster size 2");
  double log_sq = kNegInf;
  for (size_t j = 0; j < x.entries.size(); ++j) {
    const double v = x.entries[j];
    if (v == 0.0) continue;
    const int i = x.first_index + static_cast<int>(j);
    log_sq = logaddexp(log_sq, 2 * std::log(std::abs(v)) - model.log_qz(i));
  }
  return std::exp(0.5 * log_sq);
}

BoundConstants bound_constants(const RateModel& model, int n,
                               const std::vector<double>& pi_in_means) {
  if (n < 2) throw InvalidIndex("bound_constants requires n >= 2");
  for (size_t j = 0; j < pi_in_means.size(); ++j) {
    const double v = pi_in_means[j];
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ConfigError("initial means must be finite and nonnegative");
    if (static_cast<int>(j) + 2 > n && v != 0.0)
      throw ConfigError("initial means must vanish beyond the horizon n");
  }
  const auto mean_at = [&](int i) {
    const size_t j = static_cast<size_t>(i) - 2;
    return j < pi_in_means.size() ? pi_in_means[j] : 0.0;
  };

  const std::vector<double> logs = log_w_suffixes(model, n);
  double log_kn_sq = kNegInf;
  for (int i = 2; i <= n; ++i) log_kn_sq = logaddexp(log_kn_sq, model.log_qz(i));

  BoundConstants out;
  out.n = n;
  out.k_n = std::exp(0.5 * log_kn_sq);
  out.m.resize(static_cast<size_t>(n) - 1);
  double deficit = 0.0;  // sum_i E[C_i] (1 - f_i^n/(Q_i z^i))
  for (int i = 2; i <= n; ++i) {
    const double log_absorb = logs[i] - logs[1];
    out.m[i - 2] =
        std::exp(0.5 * (log_kn_sq - model.log_qz(i)) - log_absorb);
    out.h_qsd += std::exp(0.5 * model.log_qz(i));
    const double mi = mean_at(i);
    if (mi > 0.0) {
      const double log_fin = -logs[1] + model.log_qz(i) + logs[i];
      out.h_in += mi * std::exp(0.5 * model.log_qz(i) - log_fin);
      deficit += mi * -std::expm1(log_absorb);
      out.e_in_sqrtq += mi * std::exp(-0.5 * model.log_qz(i));
    }
  }
  out.g_in_linear = 1.0 - deficit;
  out.g_negative = out.g_in_linear <= 0.0;
  out.g_in_poisson = std::exp(-deficit);

  if (infinite_horizon_ok(model)) {
    const std::optional<Regime> regime = soft_regime(model);
    if (regime == Regime::Subcritical) {
      const AdaptiveSum eq = adaptive_logsum(
          2, 1e-12, "bound_constants K",
          [&](int k) { return model.log_qz(k); },
          [&](int k) { return eq_ratio_sup(model, k); });
      const AdaptiveSum sq = adaptive_logsum(
          2, 1e-12, "bound_constants E_eq<C,sqrtQ>",
          [&](int k) { return 0.5 * model.log_qz(k); },
          [&](int k) { return std::sqrt(eq_ratio_sup(model, k)); });
      out.k_eq = std::exp(0.5 * eq.log_value);
      out.r_in = *out.k_eq * (out.e_in_sqrtq + std::exp(sq.log_value));
    } else if (regime == Regime::Supercritical) {
      // ||f||_H^2 = J^2 sum_i Q_i z^i S_i^2 with S_i the w-tail from i. Each
      // term ratio is (z/r_{i+1}) (S_{i+1}/S_i)^2, bounded by the product of
      // the equilibrium-ratio and squared w-ratio certificates.
      const FluxResult j = flux_j(model, 1e-12);
      const AdaptiveSum fsq = adaptive_logsum(
          2, 1e-12, "bound_constants ||f||_H",
          [&](int k) {
            const AdaptiveSum tail =
                log_w_tail(model, k, 1e-13, "bound_constants ||f||_H tail");
            return model.log_qz(k) + 2 * tail.log_value;
          },
          [&](int k) {
            const double rho_w = w_ratio_sup(model, k);
            return eq_ratio_sup(model, k) * rho_w * rho_w;
          });
      out.f_h_norm = std::exp(std::log(j.value) + 0.5 * fsq.log_value);
      out.r_in_n = out.k_n * out.e_in_sqrtq + out.f_h_norm;
    }
  }
  return out;
}

}  // namespace bd
