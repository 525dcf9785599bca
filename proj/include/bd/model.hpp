#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bd/errors.hpp"

namespace bd {

enum class Family { Constant, PowerLaw, Metastable, Tabulated };
enum class Regime { Subcritical, Supercritical };

// Tail behaviour of a Tabulated model past its arrays.
enum class TailRule { Error, HoldLastRatio };

struct Saturation {
  double zs = 0.0;
  bool exact = false;  // false: estimated from the last tabulated ratio
};

// Aggregation coefficients a_i (i >= 1), fragmentation coefficients b_i
// (i >= 2), monomer concentration z with the convention C_1 = z.
//
// Immutable and shareable between threads after construction. log Q_i
// (Q_1 = 1, Q_i = a_1...a_{i-1} / (b_2...b_i)) is memoized: entries up to
// i_max_hint are precomputed, further entries extend under an internal lock.
//
// Construction rejects nonpositive rates over the validated range, z <= 0,
// and |z - z_s| <= 1e-12 * z_s (critical case).
class RateModel {
 public:
  static RateModel constant(double a, double b, double z, int i_max_hint = 1024);
  static RateModel power_law(double big_a, double alpha, double big_b,
                             double beta, double z, int i_max_hint = 1024);
  static RateModel metastable(double big_a, double alpha, double zs, double q,
                              double gamma, double z, int i_max_hint = 1024);
  // a[0] is a_1, b[0] is b_2.
  static RateModel tabulated(std::vector<double> a, std::vector<double> b,
                             TailRule tail, double z, int i_max_hint = 1024);

  RateModel(const RateModel& other);
  RateModel& operator=(const RateModel&) = delete;

  [[nodiscard]] double rate_a(int i) const;  // i >= 1
  [[nodiscard]] double rate_b(int i) const;  // i >= 2
  [[nodiscard]] double log_rate_a(int i) const;
  [[nodiscard]] double log_rate_b(int i) const;

  [[nodiscard]] double z() const { return z_; }
  [[nodiscard]] double log_z() const { return log_z_; }
  [[nodiscard]] int i_max_hint() const { return i_max_hint_; }
  [[nodiscard]] Family family() const { return family_; }

  // ln Q_i, i >= 1 (Q_1 = 1).
  [[nodiscard]] double log_q(int i) const;
  // ln(Q_i z^i): log weight of the product-Poisson equilibrium intensity.
  [[nodiscard]] double log_qz(int i) const { return log_q(i) + i * log_z_; }
  // ln w_k with w_k = 1 / (a_k Q_k z^{k+1}), k >= 1: the resistance-series
  // terms behind every flux formula.
  [[nodiscard]] double log_w(int k) const {
    return -(log_rate_a(k) + log_q(k) + (k + 1) * log_z_);
  }

  // Throws HypothesisViolation when the family has no saturation limit
  // (PowerLaw with beta != alpha).
  [[nodiscard]] Saturation saturation() const;
  [[nodiscard]] Regime regime() const;

  // Stable key for embedding in outputs.
  [[nodiscard]] std::string digest() const;

  [[nodiscard]] const std::vector<double>& table_a() const { return tab_a_; }
  [[nodiscard]] const std::vector<double>& table_b() const { return tab_b_; }
  [[nodiscard]] TailRule tail_rule() const { return tail_; }

  struct Params {
    double a = 0, b = 0;                               // Constant
    double big_a = 0, alpha = 0, big_b = 0, beta = 0;  // PowerLaw
    double zs = 0, q = 0, gamma = 0;                   // Metastable
  };
  [[nodiscard]] const Params& params() const { return params_; }

 private:
  RateModel(Family f, Params p, std::vector<double> ta, std::vector<double> tb,
            TailRule tail, double z, int i_max_hint);
  void validate_and_seed();

  Family family_;
  Params params_;
  std::vector<double> tab_a_, tab_b_;
  TailRule tail_ = TailRule::Error;
  double z_, log_z_;
  int i_max_hint_;
  std::optional<Saturation> sat_;

  std::vector<double> base_;  // log Q_i, i <= base_top_, fixed after ctor
  int base_top_ = 0;
  mutable std::vector<double> ext_;  // log Q_i beyond base_top_, lock guarded
  mutable std::mutex ext_mu_;
};

enum class ReuterStatus { NonExplosive, Undetermined };

struct ReuterResult {
  ReuterStatus status = ReuterStatus::Undetermined;
  double log_partial_sum = 0.0;  // ln S_N of the divergence series
  bool analytic = false;         // certified by the family argument
};

// Non-explosion certificate: partial sums of
//   sum_n Q_n z^n sum_{k=n..N} 1/(a_k Q_k z^{k+1})
// exceed `blowup`, or the family carries the analytic argument ((H1) with
// z != z_s). Throws CriticalZ if z sits on the saturation value.
ReuterResult check_reuter(const RateModel& model, int n_terms = 2000,
                          double blowup = 1e6);

enum class HypStatus { AnalyticPass, EmpiricalPass, Fail };

struct HypothesisFinding {
  HypStatus status = HypStatus::Fail;
  int witness = 0;  // index substantiating a Fail (0 if structural)
  std::string note;
};

struct HypothesisReport {
  HypothesisFinding h1, h2, h3;
  int i_lo = 2, i_hi = 0;  // range actually checked (Tabulated only)
  [[nodiscard]] bool pass_h1() const { return h1.status != HypStatus::Fail; }
  [[nodiscard]] bool pass_h2() const { return h2.status != HypStatus::Fail; }
  [[nodiscard]] bool pass_h3() const { return h3.status != HypStatus::Fail; }
};

// Analytic verdicts for the built-in families; finite-range ratio checks for
// Tabulated models (the report certifies only [i_lo, i_hi] there).
HypothesisReport check_hypotheses(const RateModel& model, int i_lo = 2,
                                  int i_hi = 512);

struct CriticalSize {
  int n_star = 1;
  bool no_nucleus = false;  // z >= b_2/a_2: every cluster is supercritical
};

// Unique n* with b_{n*+1}/a_{n*+1} < z < b_{n*}/a_{n*}. Requires z > z_s
// (throws NoNucleus otherwise); throws NonMonotone if the sampled ratio
// sequence increases along the search path.
CriticalSize critical_size(const RateModel& model);

}  // namespace bd
