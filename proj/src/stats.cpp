#include "bd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace bd {

namespace {

void require_prob(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw ConfigError("significance level must lie in (0, 1)");
}

double poisson_log_pmf(long k, double mean) {
  if (mean == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * std::log(mean) - mean -
         std::lgamma(static_cast<double>(k) + 1.0);
}

double poisson_pmf(long k, double mean) {
  return std::exp(poisson_log_pmf(k, mean));
}

}  // namespace

// --------------------------------------------------------------------------
// EmpiricalDistribution
// --------------------------------------------------------------------------

void EmpiricalDistribution::add(const std::vector<int>& x) {
  if (n_samples > 0 && x.size() != dimension())
    throw IncompatibleSupports("sample dimension differs from the support");
  ++counts[x];
  ++n_samples;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
  if (n_samples > 0 && other.n_samples > 0 &&
      dimension() != other.dimension())
    throw IncompatibleSupports("cannot merge laws of different dimension");
  for (const auto& [key, c] : other.counts) counts[key] += c;
  n_samples += other.n_samples;
}

double EmpiricalDistribution::weight(const std::vector<int>& x) const {
  if (n_samples == 0) return 0.0;
  auto it = counts.find(x);
  return it == counts.end()
             ? 0.0
             : static_cast<double>(it->second) / static_cast<double>(n_samples);
}

size_t EmpiricalDistribution::dimension() const {
  return counts.empty() ? 0 : counts.begin()->first.size();
}

std::vector<long> EmpiricalDistribution::marginal_samples(size_t coord) const {
  if (coord >= dimension())
    throw InvalidIndex("marginal coordinate outside the support dimension");
  std::vector<long> out;
  out.reserve(static_cast<size_t>(n_samples));
  for (const auto& [key, c] : counts)
    for (long j = 0; j < c; ++j) out.push_back(key[coord]);
  return out;
}

MeanSe marginal_mean(const EmpiricalDistribution& dist, size_t coord) {
  if (dist.n_samples < 2)
    throw InsufficientSamples("marginal mean needs at least two samples");
  if (coord >= dist.dimension())
    throw InvalidIndex("marginal coordinate outside the support dimension");
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& [key, c] : dist.counts) {
    const double v = key[coord];
    sum += v * static_cast<double>(c);
    sum_sq += v * v * static_cast<double>(c);
  }
  const double n = static_cast<double>(dist.n_samples);
  MeanSe out;
  out.n = dist.n_samples;
  out.mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - out.mean * out.mean)) * n /
                     (n - 1.0);
  out.se = std::sqrt(var / n);
  return out;
}

// --------------------------------------------------------------------------
// Total variation
// --------------------------------------------------------------------------

double tv_distance(const EmpiricalDistribution& p,
                   const EmpiricalDistribution& q) {
  if (p.n_samples == 0 || q.n_samples == 0)
    throw InsufficientSamples("total variation needs nonempty laws");
  if (p.dimension() != q.dimension())
    throw IncompatibleSupports("laws live on different dimensions");
  double acc = 0.0;
  auto ip = p.counts.begin();
  auto iq = q.counts.begin();
  const double np = static_cast<double>(p.n_samples);
  const double nq = static_cast<double>(q.n_samples);
  while (ip != p.counts.end() || iq != q.counts.end()) {
    if (iq == q.counts.end() || (ip != p.counts.end() && ip->first < iq->first)) {
      acc += static_cast<double>(ip->second) / np;
      ++ip;
    } else if (ip == p.counts.end() || iq->first < ip->first) {
      acc += static_cast<double>(iq->second) / nq;
      ++iq;
    } else {
      acc += std::abs(static_cast<double>(ip->second) / np -
                      static_cast<double>(iq->second) / nq);
      ++ip;
      ++iq;
    }
  }
  return 0.5 * acc;
}

PoissonTvResult tv_to_product_poisson(const EmpiricalDistribution& p,
                                      const std::vector<double>& means) {
  if (p.n_samples == 0)
    throw InsufficientSamples("total variation needs a nonempty law");
  if (p.dimension() != means.size())
    throw IncompatibleSupports(
        "mean vector dimension differs from the empirical support");
  for (double m : means)
    if (!std::isfinite(m) || m < 0.0)
      throw ConfigError("Poisson means must be finite and >= 0");

  // Exact half-L1 against the product-Poisson law: every state off the
  // observed support contributes exactly its model mass.
  const double n = static_cast<double>(p.n_samples);
  double acc = 0.0;
  double support_mass = 0.0;
  for (const auto& [key, c] : p.counts) {
    double logq = 0.0;
    for (size_t i = 0; i < means.size(); ++i)
      logq += poisson_log_pmf(key[i], means[i]);
    const double q = std::exp(logq);
    support_mass += q;
    acc += std::abs(static_cast<double>(c) / n - q);
  }
  PoissonTvResult out;
  out.tv = 0.5 * acc + 0.5 * std::max(0.0, 1.0 - support_mass);

  // E|p_hat(x) - q(x)| <= sqrt(q(x)/N), so the expected sampling inflation is
  // bounded by sum_x sqrt(q(x))/(2 sqrt(N)), which factorizes over
  // coordinates.
  double log_root_sum = 0.0;
  for (double m : means) {
    double s = 0.0;
    const long k_hi =
        static_cast<long>(std::ceil(m + 12.0 * std::sqrt(m + 1.0) + 60.0));
    for (long k = 0; k <= k_hi; ++k) s += std::exp(0.5 * poisson_log_pmf(k, m));
    log_root_sum += std::log(s);
  }
  out.sampling_error_bound = std::exp(log_root_sum) / (2.0 * std::sqrt(n));
  return out;
}

// --------------------------------------------------------------------------
// Kolmogorov-Smirnov against an exponential law
// --------------------------------------------------------------------------

KsResult ks_exponential(const std::vector<double>& samples, double rate,
                        double alpha) {
  require_prob(alpha);
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw ConfigError("exponential rate must be positive and finite");
  if (samples.size() < 50)
    throw InsufficientSamples("KS test needs at least 50 samples");
  std::vector<double> x = samples;
  for (double v : x)
    if (!std::isfinite(v) || v < 0.0)
      throw ConfigError("exponential samples must be finite and >= 0");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double cdf = -std::expm1(-rate * x[i]);
    d = std::max(d, std::max(cdf - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - cdf));
  }
  KsResult out;
  out.d = d;
  out.alpha = alpha;
  out.n = static_cast<long>(x.size());
  out.critical = std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(n);
  out.pass = d <= out.critical;
  return out;
}

KsResult ks_exponential(const std::vector<double>& samples,
                        const std::vector<bool>& censored, double rate,
                        double alpha) {
  if (samples.size() != censored.size())
    throw ConfigError("censoring flags must match the samples");
  for (bool c : censored)
    if (c)
      throw CensoredSamplesPresent(
          "censored exit times cannot enter the KS statistic");
  return ks_exponential(samples, rate, alpha);
}

// --------------------------------------------------------------------------
// Exponential-decay fit
// --------------------------------------------------------------------------

RateFit fit_decay(const std::vector<double>& times,
                  const std::vector<double>& values, double floor) {
  if (times.size() != values.size())
    throw ConfigError("times and values must have equal length");
  if (!(floor >= 0.0) || !std::isfinite(floor))
    throw ConfigError("floor must be finite and >= 0");
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : times) {
    if (!std::isfinite(t) || !(t > prev))
      throw ConfigError("times must be finite and strictly increasing");
    prev = t;
  }
  // Leading window: stop at the first value that sinks to the noise floor.
  size_t points = 0;
  while (points < values.size()) {
    const double v = values[points];
    if (!std::isfinite(v)) throw ConfigError("values must be finite");
    if (v <= floor) break;
    ++points;
  }
  if (points < 5)
    throw WindowTooShort("decay fit needs at least 5 points above the floor");

  double vmax = 0.0;
  for (size_t k = 0; k < points; ++k) vmax = std::max(vmax, values[k]);
  // ln(v/vmax) keeps the regression response invariant under a common dyadic
  // rescaling of the values, so the slope is bit-for-bit scale-equivariant.
  double st = 0.0, sy = 0.0;
  for (size_t k = 0; k < points; ++k) {
    st += times[k];
    sy += std::log(values[k] / vmax);
  }
  const double np = static_cast<double>(points);
  const double t_bar = st / np, y_bar = sy / np;
  double sxx = 0.0, sxy = 0.0;
  for (size_t k = 0; k < points; ++k) {
    const double dt = times[k] - t_bar;
    sxx += dt * dt;
    sxy += dt * (std::log(values[k] / vmax) - y_bar);
  }
  if (!(sxx > 0.0)) throw WindowTooShort("degenerate time grid");

  RateFit fit;
  fit.points = static_cast<int>(points);
  fit.t_lo = times[0];
  fit.t_hi = times[points - 1];
  fit.slope = sxy / sxx;
  fit.intercept = y_bar - fit.slope * t_bar + std::log(vmax);
  double ss_res = 0.0;
  for (size_t k = 0; k < points; ++k) {
    const double r = std::log(values[k] / vmax) - y_bar -
                     fit.slope * (times[k] - t_bar);
    ss_res += r * r;
  }
  fit.stderr_slope = std::sqrt(ss_res / (np - 2.0) / sxx);
  return fit;
}

// --------------------------------------------------------------------------
// Poisson goodness of fit
// --------------------------------------------------------------------------

GofResult poisson_marginal_gof(const std::vector<long>& samples, double mean,
                               double alpha) {
  require_prob(alpha);
  if (!std::isfinite(mean) || mean < 0.0)
    throw ConfigError("Poisson mean must be finite and >= 0");
  if (samples.size() < 200)
    throw InsufficientSamples(
        "Poisson goodness of fit needs at least 200 samples");
  long max_obs = 0;
  for (long v : samples) {
    if (v < 0) throw ConfigError("Poisson samples must be >= 0");
    max_obs = std::max(max_obs, v);
  }
  const double n = static_cast<double>(samples.size());

  GofResult out;
  out.alpha = alpha;
  {
    double sum = 0.0, sum_sq = 0.0;
    for (long v : samples) {
      sum += static_cast<double>(v);
      sum_sq += static_cast<double>(v) * static_cast<double>(v);
    }
    out.mean.n = static_cast<long>(samples.size());
    out.mean.mean = sum / n;
    const double var =
        std::max(0.0, sum_sq / n - out.mean.mean * out.mean.mean) * n /
        (n - 1.0);
    out.mean.se = std::sqrt(var / n);
    out.dispersion.n = out.mean.n;
    if (out.mean.mean > 0.0) {
      out.dispersion.mean = var / out.mean.mean;
      out.dispersion.se = std::sqrt(2.0 / (n - 1.0));
    }
  }

  if (mean == 0.0) {
    // Degenerate null: consistent exactly when every sample is zero.
    out.pass = max_obs == 0;
    out.p_value = out.pass ? 1.0 : 0.0;
    return out;
  }

  // Raw cells 0..k_top plus an open tail, then a greedy left-to-right merge
  // (with the last bin folded back if needed) so every expected count is >= 5.
  const long k_top = std::max<long>(
      max_obs, static_cast<long>(std::ceil(mean + 10.0 * std::sqrt(mean) + 10.0)));
  std::vector<long> observed(static_cast<size_t>(k_top) + 1, 0);
  for (long v : samples) ++observed[static_cast<size_t>(v)];
  std::vector<double> expected(static_cast<size_t>(k_top) + 2, 0.0);
  double cdf = 0.0;
  for (long k = 0; k <= k_top; ++k) {
    const double pk = poisson_pmf(k, mean);
    expected[static_cast<size_t>(k)] = n * pk;
    cdf += pk;
  }
  expected[static_cast<size_t>(k_top) + 1] = n * std::max(0.0, 1.0 - cdf);

  std::vector<double> bin_obs, bin_exp;
  double oa = 0.0, ea = 0.0;
  for (size_t k = 0; k < expected.size(); ++k) {
    oa += k < observed.size() ? static_cast<double>(observed[k]) : 0.0;
    ea += expected[k];
    if (ea >= 5.0) {
      bin_obs.push_back(oa);
      bin_exp.push_back(ea);
      oa = ea = 0.0;
    }
  }
  if (ea > 0.0 || oa > 0.0) {
    if (bin_exp.empty()) {
      bin_obs.push_back(oa);
      bin_exp.push_back(ea);
    } else {
      bin_obs.back() += oa;
      bin_exp.back() += ea;
    }
  }
  if (bin_exp.size() < 2)
    throw InsufficientSamples("fewer than two usable bins after merging");

  double chi2 = 0.0;
  for (size_t b = 0; b < bin_exp.size(); ++b) {
    const double d = bin_obs[b] - bin_exp[b];
    chi2 += d * d / bin_exp[b];
  }
  out.chi2 = chi2;
  out.df = static_cast<int>(bin_exp.size()) - 1;
  out.p_value = boost::math::gamma_q(static_cast<double>(out.df) / 2.0,
                                     chi2 / 2.0);
  out.pass = out.p_value >= alpha;
  return out;
}

}  // namespace bd
