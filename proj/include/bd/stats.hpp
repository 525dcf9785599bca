#pragma once

#include <map>
#include <vector>

#include "bd/errors.hpp"

namespace bd {

// Empirical law over integer state vectors (fixed dimension per instance).
// Weights are counts/n_samples; states never seen carry weight zero.
struct EmpiricalDistribution {
  std::map<std::vector<int>, long> counts;
  long n_samples = 0;

  void add(const std::vector<int>& x);
  void merge(const EmpiricalDistribution& other);
  [[nodiscard]] double weight(const std::vector<int>& x) const;
  [[nodiscard]] size_t dimension() const;

  // Raw samples of coordinate `coord` (0-based), expanded by multiplicity.
  [[nodiscard]] std::vector<long> marginal_samples(size_t coord) const;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  long n = 0;
};
MeanSe marginal_mean(const EmpiricalDistribution& dist, size_t coord);

// Exact half-L1 total variation between two empirical laws of the same
// dimension.
double tv_distance(const EmpiricalDistribution& p,
                   const EmpiricalDistribution& q);

struct PoissonTvResult {
  double tv = 0.0;
  // Upper bound on the expected sampling inflation of the TV estimate:
  // (1/(2 sqrt(N))) prod_i sum_k sqrt(pmf_i(k)).
  double sampling_error_bound = 0.0;
};

// Exact TV between an empirical law and the product-Poisson law with the
// given means (coordinate i of the state ~ Poisson(means[i])): off-support
// product-Poisson mass folds in closed form, so there is no truncation.
PoissonTvResult tv_to_product_poisson(const EmpiricalDistribution& p,
                                      const std::vector<double>& means);

struct KsResult {
  double d = 0.0;         // one-sample KS statistic
  double critical = 0.0;  // asymptotic critical value at alpha
  double alpha = 0.0;
  long n = 0;
  bool pass = false;
};

// One-sample Kolmogorov-Smirnov test against Exp(rate).
KsResult ks_exponential(const std::vector<double>& samples, double rate,
                        double alpha = 0.01);
// Overload with censoring flags: throws CensoredSamplesPresent if any flag is
// set (censored samples must be filtered, with accounting, upstream).
KsResult ks_exponential(const std::vector<double>& samples,
                        const std::vector<bool>& censored, double rate,
                        double alpha = 0.01);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // at t = 0, in ln(value) units
  double stderr_slope = 0.0;
  double t_lo = 0.0, t_hi = 0.0;  // fitted window
  int points = 0;
};

// Least squares of ln(values) on times over the leading window of points
// strictly above `floor` (the noise-dominated tail is excluded). Values are
// normalized by their window maximum before the log, which makes the slope
// exactly invariant under dyadic rescaling of the values.
RateFit fit_decay(const std::vector<double>& times,
                  const std::vector<double>& values, double floor);

struct GofResult {
  double chi2 = 0.0;
  int df = 0;
  double p_value = 0.0;
  double alpha = 0.0;
  bool pass = false;
  MeanSe mean;        // sample mean with SE
  MeanSe dispersion;  // index of dispersion (var/mean) with asymptotic SE
};

// Chi-square goodness of fit of integer samples against Poisson(mean), with
// bins merged from both ends so every expected count is >= 5.
GofResult poisson_marginal_gof(const std::vector<long>& samples, double mean,
                               double alpha = 0.01);

}  // namespace bd
