// Single-cluster walk: step distribution, exit laws, absorption estimates,
// reproducibility, and censoring.

#include <cmath>

#include "bd/analytics.hpp"
#include "bd/chain.hpp"
#include "bd/model.hpp"
#include "bd/rng.hpp"
#include "doctest.h"

using namespace bd;

namespace {
RateModel unit2() { return RateModel::constant(1.0, 1.0, 2.0); }
}  // namespace

TEST_CASE("chain_step: holding times and jump frequencies") {
  const RateModel m = unit2();
  RngStream rng(99, 0);
  const int n_steps = 40000;
  long ups = 0;
  double hold_sum = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    ClusterChainState s;
    s.size = 3;
    const ClusterChainState next = chain_step(m, s, rng);
    CHECK(next.time > s.time);
    CHECK((next.size == 2 || next.size == 4));
    hold_sum += next.time - s.time;
    ups += next.size == 4 ? 1 : 0;
  }
  // Total rate a_3 z + b_3 = 3, up-probability 2/3.
  const double mean_hold = hold_sum / n_steps;
  CHECK(mean_hold ==
        doctest::Approx(1.0 / 3.0).epsilon(3.0 * 1.0 / std::sqrt(n_steps)));
  const double p_up = static_cast<double>(ups) / n_steps;
  const double se = std::sqrt(2.0 / 9.0 / n_steps);
  CHECK(std::abs(p_up - 2.0 / 3.0) < 3.0 * se);
}

TEST_CASE("chain_step absorbs at size 1") {
  const RateModel m = unit2();
  RngStream rng(7, 0);
  ClusterChainState s;
  s.size = 2;
  for (int guard = 0; guard < 100000 && s.status == ChainStatus::Active;
       ++guard)
    s = chain_step(m, s, rng);
  // z = 2 is transient upward, but absorption happens with probability 1/2;
  // with this seed the loop either absorbed or wandered up. Either way the
  // invariants hold: size >= 1, absorbed iff size == 1.
  CHECK(s.size >= 1);
  if (s.status == ChainStatus::AbsorbedAt1) CHECK(s.size == 1);
}

TEST_CASE("run_until_exit is reproducible and respects bounds") {
  const RateModel m = unit2();
  for (std::uint64_t k = 0; k < 16; ++k) {
    RngStream r1(42, k), r2(42, k);
    const ExitSample a = run_until_exit(m, 2, 5, r1);
    const ExitSample b = run_until_exit(m, 2, 5, r2);
    CHECK(a.time == b.time);
    CHECK(a.outcome == b.outcome);
    CHECK_FALSE(a.censored);
    CHECK(a.time > 0.0);
    CHECK(a.start == 2);
  }
}

TEST_CASE("exit split matches the closed-form absorption probability") {
  const RateModel m = unit2();
  const int replicas = 20000;
  const AbsorptionEstimate est = estimate_absorption(m, 2, 5, replicas, 1234);
  CHECK(est.replicas == replicas);
  CHECK(est.censored == 0);
  const double truth = absorption_prob(m, 2, 5);  // 15/31
  CHECK(std::abs(est.p_down - truth) < 3.0 * est.se);

  const AbsorptionEstimate mid = estimate_absorption(m, 4, 5, replicas, 4321);
  CHECK(std::abs(mid.p_down - absorption_prob(m, 4, 5)) < 3.0 * mid.se);

  // Two-exit race from 2 at horizon 2: down-first probability 1/3.
  const AbsorptionEstimate tiny = estimate_absorption(m, 2, 2, replicas, 555);
  CHECK(std::abs(tiny.p_down - 1.0 / 3.0) < 3.0 * tiny.se);
  const AbsorptionEstimate three = estimate_absorption(m, 3, 3, replicas, 556);
  CHECK(std::abs(three.p_down - 1.0 / 7.0) < 3.0 * three.se);

  // Deep horizon approaches the infinite-volume value 1/2.
  const AbsorptionEstimate deep = estimate_absorption(m, 2, 40, replicas, 557);
  CHECK(std::abs(deep.p_down - 0.5) < 3.0 * deep.se + 1e-6);

  // Subcritical: absorption at 1 is certain, exits become vanishing events.
  const RateModel sub = RateModel::constant(1.0, 1.0, 0.5);
  const AbsorptionEstimate certain =
      estimate_absorption(sub, 2, 30, 5000, 558);
  CHECK(certain.p_down > 0.999);
}

TEST_CASE("estimate_absorption is thread-count invariant") {
  const RateModel m = unit2();
  const AbsorptionEstimate one = estimate_absorption(m, 2, 4, 4000, 77, 1);
  const AbsorptionEstimate four = estimate_absorption(m, 2, 4, 4000, 77, 4);
  CHECK(one.p_down == four.p_down);
  CHECK(one.censored == four.censored);
}

TEST_CASE("mean holding at the horizon start, n = 2") {
  // Start at 2 with horizon 2: a single exponential at rate a_2 z + b_2 = 3,
  // exit up with probability 2/3.
  const RateModel m = unit2();
  const int replicas = 30000;
  double sum = 0.0;
  long ups = 0;
  for (int k = 0; k < replicas; ++k) {
    RngStream rng(555, static_cast<std::uint64_t>(k));
    const ExitSample s = run_until_exit(m, 2, 2, rng);
    sum += s.time;
    ups += s.outcome == ExitOutcome::Up ? 1 : 0;
  }
  const double mean = sum / replicas;
  CHECK(std::abs(mean - 1.0 / 3.0) < 3.0 / 3.0 / std::sqrt(replicas));
  const double p_up = static_cast<double>(ups) / replicas;
  CHECK(std::abs(p_up - 2.0 / 3.0) < 3.0 * std::sqrt(2.0 / 9.0 / replicas));
}

TEST_CASE("censoring at the time cap") {
  // Deep subcritical walk from far below the horizon takes a long time to
  // reach it; a microscopic cap must censor.
  const RateModel slow = RateModel::constant(1e-6, 1e-6, 0.5);
  RngStream rng(3, 0);
  const ExitSample s = run_until_exit(slow, 2, 50, rng, 1e-3);
  CHECK(s.censored);
  CHECK(s.time == doctest::Approx(1e-3));
}
