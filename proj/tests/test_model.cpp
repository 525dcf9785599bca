// Coefficient families, saturation, regimes, Reuter check, critical size,
// and JSON round-trips. Oracles are hand-computed closed forms.

#include <cmath>
#include <nlohmann/json.hpp>

#include "bd/errors.hpp"
#include "bd/model.hpp"
#include "bd/model_json.hpp"
#include "doctest.h"

using namespace bd;

TEST_CASE("constant family coefficients and normalization") {
  const RateModel m = RateModel::constant(1.0, 1.0, 2.0);
  CHECK(m.family() == Family::Constant);
  CHECK(m.z() == doctest::Approx(2.0));
  for (int i = 1; i <= 20; ++i) CHECK(m.rate_a(i) == doctest::Approx(1.0));
  for (int i = 2; i <= 20; ++i) CHECK(m.rate_b(i) == doctest::Approx(1.0));
  // Q_1 = 1 and Q_i = a_1...a_{i-1} / (b_2...b_i) = 1 for unit rates.
  CHECK(m.log_q(1) == doctest::Approx(0.0));
  CHECK(m.log_q(7) == doctest::Approx(0.0));
  // Q_i z^i = 2^i.
  CHECK(m.log_qz(3) == doctest::Approx(3 * std::log(2.0)));
  // w_k = 1 / (a_k Q_k z^{k+1}) = 2^{-(k+1)}.
  CHECK(m.log_w(2) == doctest::Approx(-3 * std::log(2.0)));
  const Saturation s = m.saturation();
  CHECK(s.zs == doctest::Approx(1.0));
  CHECK(s.exact);
  CHECK(m.regime() == Regime::Supercritical);
}

TEST_CASE("constant family subcritical regime") {
  const RateModel m = RateModel::constant(1.0, 1.0, 0.5);
  CHECK(m.regime() == Regime::Subcritical);
}

TEST_CASE("critical monomer concentration is rejected") {
  CHECK_THROWS_AS(RateModel::constant(1.0, 1.0, 1.0), CriticalZ);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(RateModel::constant(0.0, 1.0, 2.0), ConfigError);
  CHECK_THROWS_AS(RateModel::constant(1.0, -1.0, 2.0), ConfigError);
  CHECK_THROWS_AS(RateModel::constant(1.0, 1.0, -2.0), ConfigError);
  CHECK_THROWS_AS(RateModel::tabulated({}, {}, TailRule::Error, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(
      RateModel::tabulated({1.0, -1.0}, {1.0}, TailRule::Error, 1.0),
      ConfigError);
}

TEST_CASE("metastable family: coefficient and Q pins") {
  // b_i = z_s a_i exp(q i^{-gamma}); with unit prefactors b_4 = e^{1/2} and
  // ln Q_2 = -ln b_2 = -2^{-1/2}.
  const RateModel m = RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.5);
  CHECK(m.rate_a(4) == doctest::Approx(1.0));
  CHECK(m.rate_b(4) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK(m.rate_b(4) == doctest::Approx(1.648721).epsilon(1e-6));
  CHECK(m.log_q(2) ==
        doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m.saturation().zs == doctest::Approx(1.0));
}

TEST_CASE("power-law family: Q values and saturation") {
  // a_i = i, b_i = 2 i: Q_2 = a_1/b_2 = 1/4, Q_3 = a_1 a_2 / (b_2 b_3) = 1/12.
  const RateModel m = RateModel::power_law(1.0, 1.0, 2.0, 1.0, 1.0);
  CHECK(m.rate_a(3) == doctest::Approx(3.0));
  CHECK(m.rate_b(3) == doctest::Approx(6.0));
  CHECK(std::exp(m.log_q(2)) == doctest::Approx(0.25));
  CHECK(std::exp(m.log_q(3)) == doctest::Approx(1.0 / 12.0));
  const Saturation s = m.saturation();
  CHECK(s.zs == doctest::Approx(2.0));
  CHECK(s.exact);
  CHECK(m.regime() == Regime::Subcritical);  // z = 1 < zs = 2
}

TEST_CASE("power-law with unequal exponents has no finite saturation ratio") {
  const RateModel m = RateModel::power_law(1.0, 1.0, 1.0, 0.5, 1.0);
  CHECK_THROWS_AS(static_cast<void>(m.saturation()), HypothesisViolation);
}

TEST_CASE("index domains") {
  const RateModel m = RateModel::constant(1.0, 1.0, 2.0);
  CHECK_THROWS_AS(static_cast<void>(m.rate_a(0)), InvalidIndex);
  CHECK_THROWS_AS(static_cast<void>(m.rate_b(1)), InvalidIndex);
  CHECK_THROWS_AS(static_cast<void>(m.log_q(0)), InvalidIndex);
}

TEST_CASE("tabulated tail rule error vs hold-last-ratio") {
  const std::vector<double> a{1.0, 1.0, 1.0};
  const std::vector<double> b{1.5, 6.0};
  // Error-tail tables must cover the declared size hint.
  const RateModel strict = RateModel::tabulated(a, b, TailRule::Error, 1.0, 3);
  CHECK(strict.rate_a(3) == doctest::Approx(1.0));
  CHECK(strict.rate_b(3) == doctest::Approx(6.0));
  CHECK_THROWS_AS(static_cast<void>(strict.rate_a(4)), IndexBeyondTable);
  CHECK_THROWS_AS(static_cast<void>(strict.rate_b(4)), IndexBeyondTable);
  // Saturation estimated from the deepest tabulated ratio, flagged inexact.
  const Saturation ss = strict.saturation();
  CHECK(ss.zs == doctest::Approx(6.0));
  CHECK_FALSE(ss.exact);

  const RateModel held = RateModel::tabulated(a, b, TailRule::HoldLastRatio,
                                              1.0);
  CHECK(held.rate_a(9) == doctest::Approx(1.0));  // last a held
  CHECK(held.rate_b(9) == doctest::Approx(6.0));  // last b held
  const Saturation s = held.saturation();
  CHECK(s.zs == doctest::Approx(6.0));  // b_last / a_last
  CHECK_FALSE(s.exact);
  CHECK(held.regime() == Regime::Subcritical);
}

TEST_CASE("Reuter non-explosion certificate") {
  // Linearly bounded attachment rates: analytic certificate.
  const ReuterResult sup = check_reuter(RateModel::constant(1.0, 1.0, 2.0));
  CHECK(sup.status == ReuterStatus::NonExplosive);
  CHECK(sup.analytic);
  const ReuterResult sub = check_reuter(RateModel::constant(1.0, 1.0, 0.5));
  CHECK(sub.status == ReuterStatus::NonExplosive);
  const ReuterResult meta =
      check_reuter(RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.5));
  CHECK(meta.status == ReuterStatus::NonExplosive);

  // Tabulated tail: numerical divergence of the Reuter series.
  const RateModel barrier = RateModel::tabulated(
      {1.0, 1.0, 1.0, 1.0, 1.0}, {1.5, 6.0, 6.0, 6.0, 6.0},
      TailRule::HoldLastRatio, 1.0);
  const ReuterResult tab = check_reuter(barrier);
  CHECK(tab.status == ReuterStatus::NonExplosive);
}

TEST_CASE("critical size pins for the metastable family") {
  // Ratios r_i = e^{1/sqrt(i)}: r_6 ~ 1.50408 > 1.5 > r_7 ~ 1.45932.
  const RateModel m15 = RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.5);
  CHECK(critical_size(m15).n_star == 6);
  const RateModel m11 = RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.1);
  CHECK(critical_size(m11).n_star == 110);
  // Just below r_2 = e^{1/sqrt(2)} ~ 2.02812: the first interior bracket.
  const RateModel m20 = RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 2.0);
  CHECK(critical_size(m20).n_star == 2);
  // No nucleus below saturation.
  const RateModel sub = RateModel::constant(1.0, 1.0, 0.5);
  CHECK_THROWS_AS(critical_size(sub), NoNucleus);
}

TEST_CASE("hypothesis report: strict saturation margin") {
  // Constant rates sit exactly on the saturation ratio, so the strict
  // lower-bound clause fails; the metastable family satisfies it by
  // construction.
  const HypothesisReport flat = check_hypotheses(RateModel::constant(1, 1, 2));
  CHECK_FALSE(flat.pass_h3());
  CHECK(flat.pass_h1());

  // alpha = 0 keeps a_i constant, so the unbounded-growth clause fails even
  // though the strict saturation margin holds.
  const HypothesisReport meta0 =
      check_hypotheses(RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.5));
  CHECK(meta0.pass_h1());
  CHECK_FALSE(meta0.pass_h2());
  CHECK(meta0.pass_h3());

  const HypothesisReport meta =
      check_hypotheses(RateModel::metastable(1.0, 0.5, 1.0, 1.0, 0.5, 1.5));
  CHECK(meta.pass_h1());
  CHECK(meta.pass_h2());
  CHECK(meta.pass_h3());
}

TEST_CASE("digest: stable, sensitive, and round-trips through JSON") {
  const RateModel a = RateModel::constant(1.0, 1.0, 2.0);
  const RateModel b = RateModel::constant(1.0, 1.0, 2.0);
  const RateModel c = RateModel::constant(1.0, 1.0, 2.5);
  CHECK(a.digest() == b.digest());
  CHECK(a.digest() != c.digest());

  const RateModel meta = RateModel::metastable(1.0, 0.0, 1.0, 1.0, 0.5, 1.5);
  const RateModel tab = RateModel::tabulated(
      {1.0, 2.0}, {3.0}, TailRule::HoldLastRatio, 0.25);
  for (const RateModel* m : {&a, &meta, &tab}) {
    const RateModel back = model_from_json(model_to_json(*m));
    CHECK(back.digest() == m->digest());
    CHECK(back.family() == m->family());
    CHECK(back.z() == doctest::Approx(m->z()));
  }
}

TEST_CASE("model JSON shape violations raise ConfigError") {
  using nlohmann::json;
  CHECK_THROWS_AS(model_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(model_from_json(json{{"family", "constant"}}), ConfigError);
  CHECK_THROWS_AS(
      model_from_json(json{{"family", "mystery"}, {"z", 2.0}}), ConfigError);
  CHECK_THROWS_AS(
      model_from_json(json{
          {"family", "tabulated"},
          {"params", json{{"a", {1.0}}, {"b", json::array()}, {"tail", "x"}}},
          {"z", 1.0}}),
      ConfigError);
}
