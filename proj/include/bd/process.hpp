#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bd/analytics.hpp"
#include "bd/errors.hpp"
#include "bd/model.hpp"
#include "bd/rng.hpp"
#include "bd/stats.hpp"

namespace bd {

// --------------------------------------------------------------------------
// Population state
// --------------------------------------------------------------------------

// Sparse cluster-population configuration: counts[i] = number of clusters of
// size i (i >= 2, entries strictly positive), plus the process clock.
struct SystemState {
  std::map<int, long> counts;
  double time = 0.0;

  [[nodiscard]] long count(int size) const;
  [[nodiscard]] long total_clusters() const;
  [[nodiscard]] int max_size() const;  // 0 when empty
  void set_count(int size, long value);
};

// Nondecreasing list of cluster sizes (one entry per cluster) and its
// inverse. label(unlabel(v)) == v for any nondecreasing v with entries >= 2.
std::vector<int> label(const SystemState& state);
SystemState unlabel(const std::vector<int>& sizes);

// Independent Poisson(values[i]) draws per size from an intensity vector.
SystemState sample_product_poisson(const IntensityVector& intensities,
                                   RngStream& rng);

// Initial law for ensembles: empty state, a fixed explicit state, or a
// product-Poisson law with per-size means (index 0 <-> size 2).
struct InitialLaw {
  enum class Kind { Empty, Explicit, Poisson };
  Kind kind = Kind::Empty;
  SystemState state;          // Kind::Explicit
  std::vector<double> means;  // Kind::Poisson

  static InitialLaw empty();
  static InitialLaw explicit_state(SystemState s);
  static InitialLaw poisson(const IntensityVector& intensities);
  static InitialLaw poisson_means(std::vector<double> m);

  [[nodiscard]] SystemState sample(RngStream& rng) const;
  [[nodiscard]] int max_support() const;  // largest size with positive mass
};

// --------------------------------------------------------------------------
// Exact stochastic simulation (population chain)
// --------------------------------------------------------------------------

enum class EventKind { Nucleation, Growth, Shrink };

struct Event {
  EventKind kind = EventKind::Nucleation;
  int size = 0;  // acting cluster size (Growth/Shrink); 0 for Nucleation
  double time = 0.0;
};

// Fenwick tree over sizes with per-leaf weight shadows: point assignment,
// prefix-total, and proportional selection in O(log capacity).
class WeightedIndexTree {
 public:
  explicit WeightedIndexTree(int capacity);
  void resize(int capacity);  // grows, preserving leaf weights
  void set(int index, double weight);
  [[nodiscard]] double get(int index) const;
  [[nodiscard]] double total() const;
  // Smallest index whose inclusive prefix sum exceeds u (u in [0, total())).
  [[nodiscard]] int select(double u) const;
  [[nodiscard]] int capacity() const { return capacity_; }

 private:
  int capacity_ = 0;
  int top_bit_ = 0;
  std::vector<double> tree_;  // 1-based Fenwick internal sums
  std::vector<double> leaf_;
};

// Exact simulator for the cluster-population Markov chain. Aggregate event
// rates (nucleation a_1 z^2, growth sum_i a_i z C_i, shrinkage sum_i b_i C_i)
// are cached; the event category is picked from the three aggregates and the
// acting size within a category proportionally via the size-indexed
// partial-sum trees.
class Simulator {
 public:
  Simulator(const RateModel& model, const SystemState& init);

  [[nodiscard]] const RateModel& model() const { return *model_; }
  [[nodiscard]] double time() const { return time_; }
  void advance_time(double t);  // forward only
  [[nodiscard]] long count(int size) const;
  [[nodiscard]] long total_clusters() const { return total_clusters_; }
  [[nodiscard]] int max_size() const;
  [[nodiscard]] SystemState state() const;

  [[nodiscard]] double nucleation_rate() const { return nucleation_rate_; }
  [[nodiscard]] double growth_rate() const { return up_.total(); }
  [[nodiscard]] double shrink_rate() const { return down_.total(); }
  [[nodiscard]] double total_rate() const;

  // Draws the next event type/size (one uniform variate) without applying it.
  [[nodiscard]] Event select_event(double at_time, RngStream& rng) const;
  void apply(const Event& event);
  Event step(RngStream& rng);  // exponential holding + select + apply

  // Debug validator: recomputes every cached aggregate from the raw counts
  // and throws Error on mismatch.
  void check_caches() const;

 private:
  void bump(int size, long delta);
  void ensure_capacity(int size);

  const RateModel* model_;
  double time_ = 0.0;
  double nucleation_rate_ = 0.0;
  long total_clusters_ = 0;
  std::vector<long> counts_;  // dense, index = size
  WeightedIndexTree up_;      // weight a_i z C_i at size i
  WeightedIndexTree down_;    // weight b_i C_i at size i
};

// --------------------------------------------------------------------------
// Single-trajectory runs
// --------------------------------------------------------------------------

struct RunSpec {
  double t_end = 0.0;
  std::vector<double> probes;  // strictly increasing, within [0, t_end]
  int exit_n = 0;              // 0: none; else stop when a cluster passes n
  std::uint64_t event_budget = 1'000'000'000ull;
};

struct RunResult {
  // One snapshot per probe reached before min(t_end, exit time), in order.
  std::vector<SystemState> snapshots;
  std::optional<double> exit_time;  // set iff the exit event fired
  double end_time = 0.0;
  std::uint64_t events = 0;
};

// Runs the exact chain from `init`. Probe snapshots freeze the pre-jump state
// (the hold clock is drawn once; probes inside the holding interval never
// re-draw it). With exit_n > 0 the run stops at the first growth event acting
// at size exit_n; the out-of-range cluster is not materialized. Throws
// EventBudgetExceeded when the budget is consumed first and ConfigError on a
// malformed spec or an initial state already outside the horizon.
RunResult run_ssa(const RateModel& model, const SystemState& init,
                  const RunSpec& spec, RngStream& rng);

struct TauSample {
  double tau = 0.0;  // exit time, or the cap when censored
  bool censored = false;
  std::uint64_t events = 0;
};

// First-exit time of the population process from the no-cluster-beyond-n
// region; censors (never throws) at t_cap.
TauSample first_exit(const RateModel& model, const SystemState& init, int n,
                     double t_cap, RngStream& rng);

// --------------------------------------------------------------------------
// Ensembles
// --------------------------------------------------------------------------

struct ReplicaRecord {
  std::vector<SystemState> snapshots;
  std::optional<double> exit_time;
  double end_time = 0.0;
  std::uint64_t events = 0;
};

struct EnsembleResult {
  std::vector<ReplicaRecord> records;
  std::string model_digest;
  std::uint64_t seed = 0;
};

// Independent replicas, replica k driven by the stream keyed (seed, k);
// results are byte-identical for any thread count. Requires a regime in
// which the chain is certified non-explosive; tabulated models that cannot
// certify are accepted only when the table provably covers every size the
// run can reach (exit_n set), else ConfigError.
EnsembleResult simulate_ensemble(const RateModel& model,
                                 const InitialLaw& init, const RunSpec& spec,
                                 long replicas, std::uint64_t seed,
                                 int threads = 0);

// --------------------------------------------------------------------------
// Particle representation
// --------------------------------------------------------------------------

struct ParticleResult {
  // Size of every particle alive or absorbed by t_end: first the initial
  // clusters (label order), then activated ones in activation order.
  // Size 1 marks an absorbed particle (tombstone).
  std::vector<int> final_sizes;
  std::vector<double> activation_times;  // fresh activations, increasing
  long initial_particles = 0;
};

// Equivalent construction of the population law: initial clusters evolve as
// independent single-cluster chains and fresh particles activate at the
// constant nucleation rate, each running its own forked substream.
ParticleResult simulate_particles(const RateModel& model,
                                  const SystemState& init, double t_end,
                                  RngStream& rng);

// --------------------------------------------------------------------------
// Conditioned ensembles
// --------------------------------------------------------------------------

struct ConditionedLaw {
  int n = 0;
  std::vector<double> probes;
  // laws[k]: empirical law of (C_2,...,C_n) among replicas whose exit time
  // exceeds probes[k].
  std::vector<EmpiricalDistribution> laws;
  std::vector<long> survivors;
  long replicas = 0;
  std::optional<double> exit_rate;  // Fleming-Viot only
};

// Conditioning by rejection: run every replica to the last probe with exit
// detection at n and keep, per probe, the replicas still inside the horizon.
// Throws TooFewSurvivors if any probe retains fewer than min_survivors.
ConditionedLaw conditioned_ensemble_rejection(
    const RateModel& model, int n, const InitialLaw& init,
    const std::vector<double>& probes, long replicas, std::uint64_t seed,
    int threads = 0, long min_survivors = 200);

// Conditioning by a Fleming-Viot particle system: `particles` coupled copies
// evolve in global event order and an exiting copy restarts from the current
// state of a uniformly chosen other copy. The law at a probe is the ensemble
// empirical law; exit_rate estimates the conditioned exit intensity from the
// resampling flux over the second half of the run.
ConditionedLaw conditioned_ensemble_fv(const RateModel& model, int n,
                                       const InitialLaw& init,
                                       const std::vector<double>& probes,
                                       long particles, std::uint64_t seed);

// --------------------------------------------------------------------------
// Exit-time domination coupling
// --------------------------------------------------------------------------

struct DominationPair {
  double tau_dominated = 0.0;  // exit time started from the thinned state
  double tau_qsd = 0.0;        // exit time started from the QSD state
  bool censored = false;       // either side hit the cap
};

struct DominationResult {
  std::vector<DominationPair> pairs;
  // True when every dominated-law mean was certified <= the matching QSD
  // intensity, so the binomial thinning is a genuine coupling.
  bool precondition_verified = true;
  long violations = 0;  // pairs with tau_dominated < tau_qsd (expect 0)
};

// Couples, pair by pair, an exit run started from product-Poisson(means) with
// one started from the QSD product law at horizon n: the QSD state is sampled
// first, the dominated state is a binomial thinning of it, shared clusters
// reuse one substream, and both sides share one fresh-nucleation subsystem.
// Pathwise tau_dominated >= tau_qsd whenever the precondition holds.
DominationResult domination_run(const RateModel& model, int n,
                                const std::vector<double>& means, long pairs,
                                std::uint64_t seed, int threads = 0,
                                double t_cap = 1e6);

}  // namespace bd
