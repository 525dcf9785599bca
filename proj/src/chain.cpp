#include "bd/chain.hpp"

#include <cmath>
#include <vector>

#include "bd/parallel.hpp"

namespace bd {

ClusterChainState chain_step(const RateModel& model,
                             const ClusterChainState& state, RngStream& rng) {
  if (state.status != ChainStatus::Active || state.size < 2)
    throw InvalidIndex("chain_step requires an active walk at size >= 2");
  const double up = model.rate_a(state.size) * model.z();
  const double down = model.rate_b(state.size);
  ClusterChainState next = state;
  next.time += rng.exponential(up + down);
  if (rng.uniform() * (up + down) < up) {
    next.size += 1;
  } else {
    next.size -= 1;
    if (next.size == 1) next.status = ChainStatus::AbsorbedAt1;
  }
  return next;
}

ExitSample run_until_exit(const RateModel& model, int start, int n,
                          RngStream& rng, double t_cap) {
  if (n < 2) throw InvalidIndex("run_until_exit requires n >= 2");
  if (start < 2 || start > n)
    throw InvalidIndex("run_until_exit requires 2 <= start <= n");
  ClusterChainState state;
  state.size = start;
  while (true) {
    state = chain_step(model, state, rng);
    if (state.time > t_cap) return {ExitOutcome::Down, t_cap, start, true};
    if (state.status == ChainStatus::AbsorbedAt1)
      return {ExitOutcome::Down, state.time, start, false};
    if (state.size > n) return {ExitOutcome::Up, state.time, start, false};
  }
}

AbsorptionEstimate estimate_absorption(const RateModel& model, int start, int n,
                                       int replicas, std::uint64_t seed,
                                       int threads) {
  if (replicas < 100)
    throw InsufficientSamples("estimate_absorption requires >= 100 replicas");
  std::vector<signed char> result(replicas);  // 1 down, 0 up, -1 censored
  parallel_for(replicas, threads, [&](long k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    const ExitSample s = run_until_exit(model, start, n, rng);
    result[k] = s.censored ? -1 : (s.outcome == ExitOutcome::Down ? 1 : 0);
  });
  AbsorptionEstimate out;
  out.replicas = replicas;
  long down = 0, kept = 0;
  for (signed char r : result) {
    if (r < 0) {
      ++out.censored;
    } else {
      ++kept;
      down += r;
    }
  }
  if (kept == 0) throw InsufficientSamples("all replicas were censored");
  out.p_down = static_cast<double>(down) / static_cast<double>(kept);
  out.se = std::sqrt(out.p_down * (1.0 - out.p_down) /
                     static_cast<double>(kept));
  return out;
}

}  // namespace bd
