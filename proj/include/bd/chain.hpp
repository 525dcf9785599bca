#pragma once

#include <cstdint>

#include "bd/model.hpp"
#include "bd/rng.hpp"

namespace bd {

enum class ChainStatus { Active, AbsorbedAt1, ExitedAbove };

// Single-cluster walk X: up-rate a_i z, down-rate b_i, absorbed at size 1.
struct ClusterChainState {
  int size = 2;
  double time = 0.0;
  ChainStatus status = ChainStatus::Active;
};

// One embedded jump: exponential holding time at rate a_i z + b_i, then up
// with probability a_i z / (a_i z + b_i). Absorbs on reaching 1.
ClusterChainState chain_step(const RateModel& model,
                             const ClusterChainState& state, RngStream& rng);

enum class ExitOutcome { Down, Up };

struct ExitSample {
  ExitOutcome outcome = ExitOutcome::Down;
  double time = 0.0;
  int start = 2;
  bool censored = false;  // t_cap hit first; outcome then meaningless
};

// Runs the stopped walk Y = X(. ^ T_n) from `start` until absorption at 1
// (Down) or the first visit to n+1 (Up). Runs past n never happen: the walk
// exits the moment it would jump to n+1.
ExitSample run_until_exit(const RateModel& model, int start, int n,
                          RngStream& rng, double t_cap = 1e7);

struct AbsorptionEstimate {
  double p_down = 0.0;  // fraction of uncensored replicas absorbed at 1
  double se = 0.0;      // binomial standard error
  int replicas = 0;
  int censored = 0;
};

// Monte-Carlo counterpart of absorption_prob(start, n); replica k draws from
// the (seed, k) stream, so the estimate is independent of scheduling.
AbsorptionEstimate estimate_absorption(const RateModel& model, int start, int n,
                                       int replicas, std::uint64_t seed,
                                       int threads = 0);

}  // namespace bd
