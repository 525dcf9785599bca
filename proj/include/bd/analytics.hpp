#pragma once

#include <optional>
#include <vector>

#include "bd/model.hpp"

namespace bd {

enum class IntensityKind { Equilibrium, Stationary, Qsd };

// Product-Poisson intensity profile over cluster sizes first_index..last_index().
struct IntensityVector {
  IntensityKind kind = IntensityKind::Equilibrium;
  int first_index = 2;
  int n = 0;  // QSD horizon (kind == Qsd only)
  std::vector<double> values;

  int tail_index = 0;          // truncation index of the adaptive series (0: exact)
  double tail_rel_bound = 0.0; // certified relative remainder of that series
  double total_mass = 0.0;     // sum of the listed values
  // Bound on the intensity mass beyond last_index(); +inf when the full
  // series diverges (supercritical equilibrium).
  double mass_beyond_bound = 0.0;

  [[nodiscard]] int last_index() const {
    return first_index + static_cast<int>(values.size()) - 1;
  }
  [[nodiscard]] double at(int i) const {
    if (i < first_index || i > last_index())
      throw InvalidIndex("intensity index outside the computed range");
    return values[i - first_index];
  }
};

struct FluxResult {
  double value = 0.0;
  double rel_bound = 0.0;  // certified relative truncation error of the series
  int terms = 0;
};

// J_n = (sum_{k=1..n} 1/(a_k Q_k z^{k+1}))^{-1}; defined in every regime.
double flux_jn(const RateModel& model, int n);

// J = lim_n J_n > 0; supercritical only (throws SubcriticalRegime).
FluxResult flux_j(const RateModel& model, double rel_tol = 1e-12);

// f_i^n = J_n Q_i z^i sum_{k=i..n} 1/(a_k Q_k z^{k+1}), i = 2..n.
IntensityVector qsd_intensities(const RateModel& model, int n);

// f_i = J Q_i z^i sum_{k>=i} 1/(a_k Q_k z^{k+1}), i = 2..i_max; supercritical.
IntensityVector stationary_intensities(const RateModel& model, int i_max,
                                       double rel_tol = 1e-12);

// c_i^eq = Q_i z^i, i = 2..i_max; total mass finite only subcritically.
IntensityVector equilibrium_intensities(const RateModel& model, int i_max);

// P(single cluster started at i is absorbed at 1 before exceeding n); i = 1
// returns exactly 1. Equals f_i^n / (Q_i z^i) by construction.
double absorption_prob(const RateModel& model, int i, int n);

// n -> inf limit; supercritical only.
double absorption_prob_inf(const RateModel& model, int i,
                           double rel_tol = 1e-12);

// Sequence with entries for sizes first_index, first_index+1, ...
struct WeightedSeq {
  int first_index = 2;
  std::vector<double> entries;
};

// ||x||_H = sqrt(sum_i x_i^2 / (Q_i z^i)), log-stabilized.
double h_norm(const RateModel& model, const WeightedSeq& x);

// Constants of the quantitative bounds at horizon n, for an initial law
// described by its means E_in[C_i] (index 2..; zero beyond the vector).
struct BoundConstants {
  int n = 0;
  std::optional<double> k_eq;  // K = sqrt(sum_{k>=2} c_k^eq); subcritical only
  double k_n = 0.0;            // K_n = sqrt(sum_{k=2..n} c_k^eq)
  std::vector<double> m;       // M_{i,n}, i = 2..n

  double h_in = 0.0;   // sum_i sqrt(Q_i z^i) E_in[C_i] / f_i^n
  double h_qsd = 0.0;  // sum_{i=2..n} sqrt(Q_i z^i)

  double g_in_linear = 0.0;  // 1 - sum_i E_in[C_i](1 - f_i^n/(Q_i z^i))
  bool g_negative = false;   // linearized lower bound is vacuous
  // exp(-sum_i m_i (1 - f_i^n/(Q_i z^i))): the exact value of
  // E_in prod (f_i^n/(Q_i z^i))^{C_i} when the initial law is product-Poisson
  // with the given means.
  double g_in_poisson = 1.0;

  double e_in_sqrtq = 0.0;            // E_in <C, sqrtQ>_H
  std::optional<double> r_in;         // K (E_in<C,sqrtQ>_H + E_eq<C,sqrtQ>_H)
  std::optional<double> r_in_n;       // K_n E_in<C,sqrtQ>_H + ||f||_H
  double f_h_norm = 0.0;              // ||f||_H (supercritical only)

  [[nodiscard]] double m_at(int i) const {
    if (i < 2 || i > n) throw InvalidIndex("M_{i,n} requires 2 <= i <= n");
    return m[i - 2];
  }
  // K is defined in the sub-critical regime only.
  [[nodiscard]] double k_eq_value() const {
    if (!k_eq)
      throw SubcriticalRequired("K requires the sub-critical regime (z < z_s)");
    return *k_eq;
  }
};

BoundConstants bound_constants(const RateModel& model, int n,
                               const std::vector<double>& pi_in_means = {});

}  // namespace bd
