// Closed-form laws: nucleation fluxes, conditioned/stationary/equilibrium
// intensities, absorption probabilities, and the bound constants. Every
// numeric pin below is a hand-computed fraction for unit constant rates.

#include <cmath>

#include "bd/analytics.hpp"
#include "bd/errors.hpp"
#include "bd/model.hpp"
#include "doctest.h"

using namespace bd;

namespace {
const double kTol = 1e-12;

RateModel unit2() { return RateModel::constant(1.0, 1.0, 2.0); }
}  // namespace

TEST_CASE("finite-horizon flux J_n, constant rates z = 2") {
  // w_k = 2^{-(k+1)}; J_n = 1 / sum_{k=1..n} w_k = 2^{n+1} / (2^n - 1).
  const RateModel m = unit2();
  CHECK(flux_jn(m, 2) == doctest::Approx(8.0 / 3.0).epsilon(kTol));
  CHECK(flux_jn(m, 3) == doctest::Approx(16.0 / 7.0).epsilon(kTol));
  CHECK(flux_jn(m, 4) == doctest::Approx(32.0 / 15.0).epsilon(kTol));
  CHECK(flux_jn(m, 5) == doctest::Approx(64.0 / 31.0).epsilon(kTol));
  CHECK_THROWS_AS(flux_jn(m, 1), InvalidIndex);
  // Subcritical fluxes exist too: w_1 + w_2 = 4 + 8 at z = 1/2.
  CHECK(flux_jn(RateModel::constant(1.0, 1.0, 0.5), 2) ==
        doctest::Approx(1.0 / 12.0).epsilon(kTol));
}

TEST_CASE("stationary flux J, constant rates z = 2") {
  // sum_k w_k = 1/2, so J = 2; series is geometric, bound must be tiny.
  const FluxResult j = flux_j(unit2());
  CHECK(j.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(j.rel_bound < 1e-10);
  // z = 4: sum 4^{-(k+1)} = 1/12.
  CHECK(flux_j(RateModel::constant(1.0, 1.0, 4.0)).value ==
        doctest::Approx(12.0).epsilon(1e-10));
  CHECK_THROWS_AS(flux_j(RateModel::constant(1.0, 1.0, 0.5)),
                  SubcriticalRegime);
}

TEST_CASE("conditioned-law intensities f^n, constant rates z = 2") {
  const RateModel m = unit2();
  const IntensityVector f2 = qsd_intensities(m, 2);
  REQUIRE(f2.values.size() == 1);
  CHECK(f2.at(2) == doctest::Approx(4.0 / 3.0).epsilon(kTol));

  const IntensityVector f3 = qsd_intensities(m, 3);
  CHECK(f3.at(2) == doctest::Approx(12.0 / 7.0).epsilon(kTol));
  CHECK(f3.at(3) == doctest::Approx(8.0 / 7.0).epsilon(kTol));

  const IntensityVector f5 = qsd_intensities(m, 5);
  CHECK(f5.at(2) == doctest::Approx(60.0 / 31.0).epsilon(kTol));
  CHECK(f5.at(3) == doctest::Approx(56.0 / 31.0).epsilon(kTol));
  CHECK(f5.at(4) == doctest::Approx(48.0 / 31.0).epsilon(kTol));
  CHECK(f5.at(5) == doctest::Approx(32.0 / 31.0).epsilon(kTol));
  CHECK(f5.total_mass == doctest::Approx(196.0 / 31.0).epsilon(kTol));

  // Monotone convergence of f_2^n toward the stationary value 2.
  CHECK(qsd_intensities(m, 4).at(2) ==
        doctest::Approx(28.0 / 15.0).epsilon(kTol));
  double prev = 0.0;
  for (int n = 2; n <= 24; ++n) {
    const double f2n = qsd_intensities(m, n).at(2);
    CHECK(f2n > prev);
    CHECK(f2n < 2.0);
    prev = f2n;
  }
  CHECK(prev == doctest::Approx(2.0).epsilon(1e-6));

  CHECK_THROWS_AS(qsd_intensities(m, 1), InvalidIndex);
}

TEST_CASE("flux identity across families and horizons") {
  // a_i z f_i - b_{i+1} f_{i+1} = J_n for i < n, and a_n z f_n = J_n,
  // with the monomer convention f_1 = z.
  const RateModel models[] = {
      RateModel::constant(1.0, 1.0, 2.0),
      RateModel::constant(1.0, 1.0, 0.5),
      RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.2),
      RateModel::power_law(1.0, 1.0, 2.0, 1.0, 1.0),
  };
  for (const RateModel& m : models) {
    for (int n : {2, 3, 7, 23}) {
      const IntensityVector f = qsd_intensities(m, n);
      const double jn = flux_jn(m, n);
      auto fi = [&](int i) { return i == 1 ? m.z() : f.at(i); };
      for (int i = 1; i <= n; ++i) {
        const double out = m.rate_a(i) * m.z() * fi(i);
        const double in = i < n ? m.rate_b(i + 1) * fi(i + 1) : 0.0;
        CHECK(out - in == doctest::Approx(jn).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("absorption probabilities, constant rates z = 2") {
  const RateModel m = unit2();
  // r_{i,n} = f_i^n / (Q_i z^i) = J_n sum_{k=i..n} w_k.
  CHECK(absorption_prob(m, 2, 2) == doctest::Approx(1.0 / 3.0).epsilon(kTol));
  CHECK(absorption_prob(m, 3, 3) == doctest::Approx(1.0 / 7.0).epsilon(kTol));
  CHECK(absorption_prob(m, 2, 5) == doctest::Approx(15.0 / 31.0).epsilon(kTol));
  CHECK(absorption_prob(m, 3, 5) == doctest::Approx(7.0 / 31.0).epsilon(kTol));
  CHECK(absorption_prob(m, 4, 5) == doctest::Approx(3.0 / 31.0).epsilon(kTol));
  CHECK(absorption_prob(m, 5, 5) == doctest::Approx(1.0 / 31.0).epsilon(kTol));
  // Infinite horizon: chance of never reaching size 1 again... the survival
  // weight J sum_{k>=i} w_k.
  CHECK(absorption_prob_inf(m, 2) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(absorption_prob_inf(m, 3) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK_THROWS_AS(absorption_prob(m, 6, 5), InvalidIndex);
  CHECK(absorption_prob(m, 1, 5) == doctest::Approx(1.0));  // already at 1
}

TEST_CASE("stationary intensities, constant rates z = 2") {
  // f_i = J Q_i z^i sum_{k>=i} w_k = 2 * 2^i * 2^{-i} = 2 for every i.
  const IntensityVector f = stationary_intensities(unit2(), 9);
  for (int i = 2; i <= 9; ++i)
    CHECK(f.at(i) == doctest::Approx(2.0).epsilon(1e-10));
  // z = 4: f_i = 12 * 4^i * 4^{-i}/3 = 4 for every i.
  const IntensityVector f4 =
      stationary_intensities(RateModel::constant(1.0, 1.0, 4.0), 6);
  for (int i = 2; i <= 6; ++i)
    CHECK(f4.at(i) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK_THROWS_AS(stationary_intensities(RateModel::constant(1.0, 1.0, 0.5), 5),
                  SubcriticalRegime);
}

TEST_CASE("equilibrium intensities") {
  // Subcritical z = 1/2: c_i = Q_i z^i = 2^{-i}, total tail controlled.
  const RateModel sub = RateModel::constant(1.0, 1.0, 0.5);
  const IntensityVector c = equilibrium_intensities(sub, 6);
  for (int i = 2; i <= 6; ++i)
    CHECK(c.at(i) == doctest::Approx(std::pow(0.5, i)).epsilon(kTol));
  // True remaining mass sum_{i>=7} 2^{-i} = 2^{-6}.
  CHECK(c.mass_beyond_bound >= std::pow(2.0, -6.0) - kTol);
  CHECK(c.mass_beyond_bound < 0.05);

  // Supercritical: the full series diverges, the bound must say so.
  const IntensityVector csup = equilibrium_intensities(unit2(), 6);
  CHECK(csup.at(3) == doctest::Approx(8.0).epsilon(kTol));
  CHECK(std::isinf(csup.mass_beyond_bound));
}

TEST_CASE("bound constants, constant rates z = 2, horizon 2") {
  const BoundConstants bc = bound_constants(unit2(), 2);
  // K_2 = sqrt(c_2^eq) = sqrt(4) = 2.
  CHECK(bc.k_n == doctest::Approx(2.0).epsilon(kTol));
  // M_{2,2} = (K_2 / sqrt(Q_2 z^2)) / r_{2,2} = (2/2) / (1/3) = 3.
  CHECK(bc.m_at(2) == doctest::Approx(3.0).epsilon(kTol));
  // Supercritical: no summable equilibrium, K is absent.
  CHECK_FALSE(bc.k_eq.has_value());
}

TEST_CASE("bound constants with an initial product law") {
  // theta = 1/2 of the conditioned law at horizon 5:
  // sum_i m_i (1 - r_{i,5}) = 2304/961, so G = exp(-2304/961).
  const RateModel m = unit2();
  const IntensityVector f = qsd_intensities(m, 5);
  std::vector<double> means = f.values;
  for (double& v : means) v *= 0.5;
  const BoundConstants bc = bound_constants(m, 5, means);
  CHECK(bc.g_in_poisson ==
        doctest::Approx(std::exp(-2304.0 / 961.0)).epsilon(1e-12));
  CHECK(bc.g_in_poisson == doctest::Approx(0.0909448).epsilon(1e-5));
}

TEST_CASE("subcritical bound constants include the equilibrium constant") {
  const RateModel sub = RateModel::constant(1.0, 1.0, 0.5);
  const BoundConstants bc = bound_constants(sub, 4);
  REQUIRE(bc.k_eq.has_value());
  // K^2 = sum_{i>=2} 2^{-i} = 1/2.
  CHECK(*bc.k_eq == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
  CHECK(bc.k_n < *bc.k_eq + kTol);
}

TEST_CASE("weighted-norm helper") {
  // One doubleton: ||e_2||_H^2 = 1 / c_2^eq = 1/4, so the norm is 1/2.
  WeightedSeq e2;
  e2.first_index = 2;
  e2.entries = {1.0};
  CHECK(h_norm(unit2(), e2) == doctest::Approx(0.5).epsilon(kTol));

  // Flat profile x_i = 2 up to m: ||x||^2 = sum 4 * 2^{-i} -> 2 as m grows,
  // so the norm tends to sqrt(2).
  WeightedSeq flat;
  flat.first_index = 2;
  flat.entries.assign(29, 2.0);  // sizes 2..30
  CHECK(h_norm(unit2(), flat) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}
