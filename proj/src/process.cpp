#include "bd/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>

#include "bd/chain.hpp"
#include "bd/parallel.hpp"

namespace bd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_time(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0)
    throw ConfigError(std::string(what) + " must be finite and nonnegative");
}

void require_probe_grid(const std::vector<double>& probes, double t_lo,
                        double t_hi) {
  double prev = -kInf;
  for (double p : probes) {
    if (!std::isfinite(p) || p < t_lo || p > t_hi)
      throw ConfigError("probe outside the run interval");
    if (!(p > prev)) throw ConfigError("probes must be strictly increasing");
    prev = p;
  }
}

}  // namespace

// --------------------------------------------------------------------------
// SystemState
// --------------------------------------------------------------------------

long SystemState::count(int size) const {
  auto it = counts.find(size);
  return it == counts.end() ? 0 : it->second;
}

long SystemState::total_clusters() const {
  long total = 0;
  for (const auto& [size, c] : counts) {
    (void)size;
    total += c;
  }
  return total;
}

int SystemState::max_size() const {
  return counts.empty() ? 0 : counts.rbegin()->first;
}

void SystemState::set_count(int size, long value) {
  if (size < 2) throw InvalidIndex("cluster sizes start at 2");
  if (value < 0) throw ConfigError("cluster counts must be nonnegative");
  if (value == 0)
    counts.erase(size);
  else
    counts[size] = value;
}

std::vector<int> label(const SystemState& state) {
  std::vector<int> sizes;
  sizes.reserve(static_cast<size_t>(std::max(0L, state.total_clusters())));
  for (const auto& [size, c] : state.counts) {
    if (size < 2) throw InvalidIndex("cluster sizes start at 2");
    if (c < 0) throw ConfigError("cluster counts must be nonnegative");
    for (long j = 0; j < c; ++j) sizes.push_back(size);
  }
  return sizes;
}

SystemState unlabel(const std::vector<int>& sizes) {
  SystemState state;
  for (int s : sizes) {
    if (s < 2) throw InvalidIndex("cluster sizes start at 2");
    ++state.counts[s];
  }
  return state;
}

SystemState sample_product_poisson(const IntensityVector& intensities,
                                   RngStream& rng) {
  SystemState state;
  for (size_t k = 0; k < intensities.values.size(); ++k) {
    const double mean = intensities.values[k];
    if (!std::isfinite(mean) || mean < 0.0)
      throw ConfigError("product-Poisson intensities must be finite and >= 0");
    const long c = sample_poisson(rng, mean);
    if (c > 0) state.counts[intensities.first_index + static_cast<int>(k)] = c;
  }
  return state;
}

// --------------------------------------------------------------------------
// InitialLaw
// --------------------------------------------------------------------------

InitialLaw InitialLaw::empty() { return {}; }

InitialLaw InitialLaw::explicit_state(SystemState s) {
  InitialLaw law;
  law.kind = Kind::Explicit;
  for (const auto& [size, c] : s.counts) {
    if (size < 2) throw InvalidIndex("cluster sizes start at 2");
    if (c < 0) throw ConfigError("cluster counts must be nonnegative");
  }
  law.state = std::move(s);
  return law;
}

InitialLaw InitialLaw::poisson(const IntensityVector& intensities) {
  if (intensities.first_index != 2)
    throw ConfigError("initial Poisson law must start at size 2");
  return poisson_means(intensities.values);
}

InitialLaw InitialLaw::poisson_means(std::vector<double> m) {
  InitialLaw law;
  law.kind = Kind::Poisson;
  for (double v : m)
    if (!std::isfinite(v) || v < 0.0)
      throw ConfigError("Poisson means must be finite and >= 0");
  law.means = std::move(m);
  return law;
}

SystemState InitialLaw::sample(RngStream& rng) const {
  switch (kind) {
    case Kind::Empty:
      return {};
    case Kind::Explicit:
      return state;
    case Kind::Poisson: {
      SystemState out;
      for (size_t k = 0; k < means.size(); ++k) {
        const long c = sample_poisson(rng, means[k]);
        if (c > 0) out.counts[2 + static_cast<int>(k)] = c;
      }
      return out;
    }
  }
  throw Error("unreachable initial-law kind");
}

int InitialLaw::max_support() const {
  switch (kind) {
    case Kind::Empty:
      return 0;
    case Kind::Explicit:
      return state.max_size();
    case Kind::Poisson: {
      for (size_t k = means.size(); k > 0; --k)
        if (means[k - 1] > 0.0) return 2 + static_cast<int>(k - 1);
      return 0;
    }
  }
  throw Error("unreachable initial-law kind");
}

// --------------------------------------------------------------------------
// WeightedIndexTree
// --------------------------------------------------------------------------

WeightedIndexTree::WeightedIndexTree(int capacity) { resize(capacity); }

void WeightedIndexTree::resize(int capacity) {
  if (capacity < capacity_)
    throw Error("WeightedIndexTree: capacity cannot shrink");
  if (capacity == capacity_ && !tree_.empty()) return;
  std::vector<double> old_leaf = std::move(leaf_);
  capacity_ = capacity;
  top_bit_ = 1;
  while ((top_bit_ << 1) <= capacity_) top_bit_ <<= 1;
  tree_.assign(static_cast<size_t>(capacity_) + 1, 0.0);
  leaf_.assign(static_cast<size_t>(capacity_) + 1, 0.0);
  for (size_t i = 1; i < old_leaf.size(); ++i)
    if (old_leaf[i] != 0.0) set(static_cast<int>(i), old_leaf[i]);
}

void WeightedIndexTree::set(int index, double weight) {
  if (index < 1 || index > capacity_)
    throw InvalidIndex("WeightedIndexTree index out of range");
  const double delta = weight - leaf_[static_cast<size_t>(index)];
  leaf_[static_cast<size_t>(index)] = weight;
  for (int j = index; j <= capacity_; j += j & -j)
    tree_[static_cast<size_t>(j)] += delta;
}

double WeightedIndexTree::get(int index) const {
  if (index < 1 || index > capacity_)
    throw InvalidIndex("WeightedIndexTree index out of range");
  return leaf_[static_cast<size_t>(index)];
}

double WeightedIndexTree::total() const {
  double s = 0.0;
  for (int j = capacity_; j > 0; j -= j & -j) s += tree_[static_cast<size_t>(j)];
  return s;
}

int WeightedIndexTree::select(double u) const {
  int pos = 0;
  for (int bit = top_bit_; bit > 0; bit >>= 1) {
    const int next = pos + bit;
    if (next <= capacity_ && tree_[static_cast<size_t>(next)] <= u) {
      u -= tree_[static_cast<size_t>(next)];
      pos = next;
    }
  }
  return pos + 1;
}

// --------------------------------------------------------------------------
// Simulator
// --------------------------------------------------------------------------

namespace {

// Rounding in the cached aggregates can push a selection fractionally past
// the last populated leaf; snap to the nearest occupied size below.
int snap_to_leaf(const WeightedIndexTree& tree, int index) {
  if (index >= 1 && index <= tree.capacity() && tree.get(index) > 0.0)
    return index;
  for (int j = std::min(index, tree.capacity()); j >= 1; --j)
    if (tree.get(j) > 0.0) return j;
  throw Error("selection from an empty weight tree");
}

}  // namespace

Simulator::Simulator(const RateModel& model, const SystemState& init)
    : model_(&model),
      time_(init.time),
      up_(std::max(64, 2 * std::max(init.max_size(), 2))),
      down_(std::max(64, 2 * std::max(init.max_size(), 2))) {
  if (!std::isfinite(init.time) || init.time < 0.0)
    throw ConfigError("initial state time must be finite and nonnegative");
  counts_.assign(static_cast<size_t>(up_.capacity()) + 1, 0);
  const double z = model_->z();
  nucleation_rate_ = model_->rate_a(1) * z * z;
  for (const auto& [size, c] : init.counts) {
    if (size < 2) throw InvalidIndex("cluster sizes start at 2");
    if (c < 0) throw ConfigError("cluster counts must be nonnegative");
    if (c == 0) continue;
    bump(size, c);
  }
}

void Simulator::advance_time(double t) {
  if (t < time_) throw Error("simulator clock cannot move backward");
  time_ = t;
}

long Simulator::count(int size) const {
  if (size < 2) throw InvalidIndex("cluster sizes start at 2");
  if (size >= static_cast<int>(counts_.size())) return 0;
  return counts_[static_cast<size_t>(size)];
}

int Simulator::max_size() const {
  for (int i = static_cast<int>(counts_.size()) - 1; i >= 2; --i)
    if (counts_[static_cast<size_t>(i)] > 0) return i;
  return 0;
}

SystemState Simulator::state() const {
  SystemState out;
  out.time = time_;
  for (int i = 2; i < static_cast<int>(counts_.size()); ++i)
    if (counts_[static_cast<size_t>(i)] > 0)
      out.counts[i] = counts_[static_cast<size_t>(i)];
  return out;
}

double Simulator::total_rate() const {
  return nucleation_rate_ + std::max(0.0, up_.total()) +
         std::max(0.0, down_.total());
}

Event Simulator::select_event(double at_time, RngStream& rng) const {
  const double up = std::max(0.0, up_.total());
  const double down = std::max(0.0, down_.total());
  double u = rng.uniform() * (nucleation_rate_ + up + down);
  if (u < nucleation_rate_) return Event{EventKind::Nucleation, 0, at_time};
  u -= nucleation_rate_;
  if (u < up)
    return Event{EventKind::Growth, snap_to_leaf(up_, up_.select(u)), at_time};
  u -= up;
  return Event{EventKind::Shrink, snap_to_leaf(down_, down_.select(u)),
               at_time};
}

void Simulator::apply(const Event& event) {
  switch (event.kind) {
    case EventKind::Nucleation:
      bump(2, +1);
      break;
    case EventKind::Growth:
      if (count(event.size) <= 0)
        throw Error("growth event on an empty size class");
      ensure_capacity(event.size + 1);
      bump(event.size, -1);
      bump(event.size + 1, +1);
      break;
    case EventKind::Shrink:
      if (count(event.size) <= 0)
        throw Error("shrink event on an empty size class");
      bump(event.size, -1);
      if (event.size > 2) bump(event.size - 1, +1);
      break;
  }
  advance_time(event.time);
}

Event Simulator::step(RngStream& rng) {
  const double dt = rng.exponential(total_rate());
  Event ev = select_event(time_ + dt, rng);
  apply(ev);
  return ev;
}

void Simulator::bump(int size, long delta) {
  ensure_capacity(size);
  long& c = counts_[static_cast<size_t>(size)];
  c += delta;
  if (c < 0) throw Error("cluster count went negative");
  total_clusters_ += delta;
  const double z = model_->z();
  up_.set(size, model_->rate_a(size) * z * static_cast<double>(c));
  down_.set(size, model_->rate_b(size) * static_cast<double>(c));
}

void Simulator::ensure_capacity(int size) {
  if (size <= up_.capacity()) return;
  int cap = up_.capacity();
  while (cap < size) cap *= 2;
  counts_.resize(static_cast<size_t>(cap) + 1, 0);
  up_.resize(cap);
  down_.resize(cap);
}

void Simulator::check_caches() const {
  const double z = model_->z();
  const double nuc = model_->rate_a(1) * z * z;
  if (nucleation_rate_ != nuc) throw Error("nucleation rate cache is stale");
  long clusters = 0;
  double up = 0.0, down = 0.0;
  for (int i = 2; i < static_cast<int>(counts_.size()); ++i) {
    const long c = counts_[static_cast<size_t>(i)];
    if (c < 0) throw Error("negative cluster count");
    const double cw = static_cast<double>(c);
    const double wu = model_->rate_a(i) * z * cw;
    const double wd = model_->rate_b(i) * cw;
    if (up_.get(i) != wu || down_.get(i) != wd)
      throw Error("weight tree leaf disagrees with the counts");
    clusters += c;
    up += wu;
    down += wd;
  }
  if (clusters != total_clusters_) throw Error("cluster-count cache is stale");
  const double tol = 1e-9;
  if (std::abs(up_.total() - up) > tol * (1.0 + up) ||
      std::abs(down_.total() - down) > tol * (1.0 + down))
    throw Error("aggregate rate cache drifted beyond tolerance");
}

// --------------------------------------------------------------------------
// Single-trajectory runs
// --------------------------------------------------------------------------

RunResult run_ssa(const RateModel& model, const SystemState& init,
                  const RunSpec& spec, RngStream& rng) {
  require_finite_time(spec.t_end, "t_end");
  require_finite_time(init.time, "initial time");
  if (init.time > spec.t_end)
    throw ConfigError("initial time is beyond t_end");
  require_probe_grid(spec.probes, init.time, spec.t_end);
  if (spec.exit_n != 0 && spec.exit_n < 2)
    throw ConfigError("exit_n must be 0 (disabled) or >= 2");
  if (spec.exit_n >= 2 && init.max_size() > spec.exit_n)
    throw ConfigError("initial state already beyond the exit horizon");

  Simulator sim(model, init);
  RunResult out;
  size_t pi = 0;
  auto flush_probes = [&](double bound) {
    while (pi < spec.probes.size() && spec.probes[pi] <= bound) {
      SystemState snap = sim.state();
      snap.time = spec.probes[pi];
      out.snapshots.push_back(std::move(snap));
      ++pi;
    }
  };

  while (sim.time() < spec.t_end) {
    const double dt = rng.exponential(sim.total_rate());
    const double t_next = sim.time() + dt;
    if (t_next >= spec.t_end) {
      flush_probes(spec.t_end);
      sim.advance_time(spec.t_end);
      break;
    }
    flush_probes(t_next);  // pre-jump snapshots inside the holding interval
    if (out.events >= spec.event_budget)
      throw EventBudgetExceeded("event budget exhausted before t_end");
    ++out.events;
    const Event ev = sim.select_event(t_next, rng);
    if (spec.exit_n >= 2 && ev.kind == EventKind::Growth &&
        ev.size == spec.exit_n) {
      out.exit_time = t_next;
      out.end_time = t_next;
      return out;
    }
    sim.apply(ev);
  }
  flush_probes(spec.t_end);
  out.end_time = spec.t_end;
  return out;
}

TauSample first_exit(const RateModel& model, const SystemState& init, int n,
                     double t_cap, RngStream& rng) {
  if (n < 2) throw ConfigError("exit horizon must be >= 2");
  RunSpec spec;
  spec.t_end = t_cap;
  spec.exit_n = n;
  const RunResult run = run_ssa(model, init, spec, rng);
  TauSample out;
  out.events = run.events;
  if (run.exit_time) {
    out.tau = *run.exit_time;
    out.censored = false;
  } else {
    out.tau = t_cap;
    out.censored = true;
  }
  return out;
}

// --------------------------------------------------------------------------
// Ensembles
// --------------------------------------------------------------------------

namespace {

// simulate() contract: the chain must be certified non-explosive before an
// ensemble is launched. Tabulated models with a hard table edge cannot carry
// the certificate; they are accepted only when the exit horizon confines the
// run within the table.
void require_simulable(const RateModel& model, const RunSpec& spec) {
  if (model.family() == Family::Tabulated &&
      model.tail_rule() == TailRule::Error) {
    const int covered = static_cast<int>(
        std::min(model.table_a().size(), model.table_b().size() + 1));
    if (spec.exit_n < 2)
      throw ConfigError(
          "tabulated model with a hard table edge needs an exit horizon");
    if (spec.exit_n > covered)
      throw ConfigError("exit horizon exceeds the tabulated range");
    return;
  }
  const ReuterResult reuter = check_reuter(model);
  if (reuter.status != ReuterStatus::NonExplosive)
    throw HypothesisViolation(
        "cannot certify non-explosiveness for this model");
}

}  // namespace

EnsembleResult simulate_ensemble(const RateModel& model,
                                 const InitialLaw& init, const RunSpec& spec,
                                 long replicas, std::uint64_t seed,
                                 int threads) {
  if (replicas <= 0) throw ConfigError("ensemble needs at least one replica");
  if (spec.exit_n >= 2 && init.max_support() > spec.exit_n)
    throw ConfigError("initial law puts mass beyond the exit horizon");
  require_simulable(model, spec);

  EnsembleResult out;
  out.model_digest = model.digest();
  out.seed = seed;
  out.records.resize(static_cast<size_t>(replicas));
  parallel_for(replicas, threads, [&](long k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    const SystemState s0 = init.sample(rng);
    RunResult run = run_ssa(model, s0, spec, rng);
    ReplicaRecord& rec = out.records[static_cast<size_t>(k)];
    rec.snapshots = std::move(run.snapshots);
    rec.exit_time = run.exit_time;
    rec.end_time = run.end_time;
    rec.events = run.events;
  });
  return out;
}

// --------------------------------------------------------------------------
// Particle representation
// --------------------------------------------------------------------------

namespace {

// Evolves one cluster from (size, start time) to t_end under its own stream;
// returns the size at t_end, or 1 once absorbed (tombstone).
int evolve_particle(const RateModel& model, int size, double start,
                    double t_end, RngStream& rng) {
  const double z = model.z();
  double t = start;
  while (size >= 2) {
    const double up = model.rate_a(size) * z;
    const double down = model.rate_b(size);
    const double dt = rng.exponential(up + down);
    if (t + dt > t_end) return size;
    t += dt;
    if (rng.uniform() * (up + down) < up)
      ++size;
    else
      --size;
  }
  return 1;
}

}  // namespace

ParticleResult simulate_particles(const RateModel& model,
                                  const SystemState& init, double t_end,
                                  RngStream& rng) {
  require_finite_time(t_end, "t_end");
  require_finite_time(init.time, "initial time");
  if (init.time > t_end) throw ConfigError("initial time is beyond t_end");

  ParticleResult out;
  const std::vector<int> initial = label(init);
  out.initial_particles = static_cast<long>(initial.size());

  // Activation point process at the constant whole-system nucleation rate,
  // drawn on the master stream; each particle then owns a forked substream.
  const double rate = model.rate_a(1) * model.z() * model.z();
  double t = init.time;
  while (true) {
    t += rng.exponential(rate);
    if (t > t_end) break;
    out.activation_times.push_back(t);
  }

  out.final_sizes.resize(initial.size() + out.activation_times.size());
  for (size_t j = 0; j < initial.size(); ++j) {
    RngStream sub = rng.fork(static_cast<std::uint64_t>(j));
    out.final_sizes[j] =
        evolve_particle(model, initial[j], init.time, t_end, sub);
  }
  for (size_t a = 0; a < out.activation_times.size(); ++a) {
    RngStream sub = rng.fork(static_cast<std::uint64_t>(initial.size() + a));
    out.final_sizes[initial.size() + a] =
        evolve_particle(model, 2, out.activation_times[a], t_end, sub);
  }
  return out;
}

// --------------------------------------------------------------------------
// Conditioned ensembles
// --------------------------------------------------------------------------

namespace {

std::vector<int> restricted_key(const SystemState& state, int n) {
  std::vector<int> key(static_cast<size_t>(n) - 1, 0);
  for (const auto& [size, c] : state.counts) {
    if (size < 2 || size > n)
      throw Error("conditioned state leaked beyond the horizon");
    key[static_cast<size_t>(size) - 2] = static_cast<int>(c);
  }
  return key;
}

}  // namespace

ConditionedLaw conditioned_ensemble_rejection(
    const RateModel& model, int n, const InitialLaw& init,
    const std::vector<double>& probes, long replicas, std::uint64_t seed,
    int threads, long min_survivors) {
  if (n < 2) throw ConfigError("conditioning horizon must be >= 2");
  if (probes.empty()) throw ConfigError("conditioning needs at least one probe");
  if (replicas <= 0) throw ConfigError("ensemble needs at least one replica");
  require_probe_grid(probes, 0.0, probes.back());
  if (init.max_support() > n)
    throw ConfigError("initial law puts mass beyond the horizon");

  RunSpec spec;
  spec.t_end = probes.back();
  spec.probes = probes;
  spec.exit_n = n;
  const EnsembleResult ens =
      simulate_ensemble(model, init, spec, replicas, seed, threads);

  ConditionedLaw out;
  out.n = n;
  out.probes = probes;
  out.replicas = replicas;
  out.laws.assign(probes.size(), {});
  out.survivors.assign(probes.size(), 0);
  for (const ReplicaRecord& rec : ens.records) {
    for (size_t k = 0; k < rec.snapshots.size() && k < probes.size(); ++k) {
      if (rec.exit_time && !(probes[k] < *rec.exit_time)) continue;
      out.laws[k].add(restricted_key(rec.snapshots[k], n));
      ++out.survivors[k];
    }
  }
  for (size_t k = 0; k < probes.size(); ++k)
    if (out.survivors[k] < min_survivors)
      throw TooFewSurvivors("conditioning retained too few survivors at t=" +
                            std::to_string(probes[k]));
  return out;
}

ConditionedLaw conditioned_ensemble_fv(const RateModel& model, int n,
                                       const InitialLaw& init,
                                       const std::vector<double>& probes,
                                       long particles, std::uint64_t seed) {
  if (n < 2) throw ConfigError("conditioning horizon must be >= 2");
  if (probes.empty()) throw ConfigError("conditioning needs at least one probe");
  require_probe_grid(probes, 0.0, probes.back());
  if (particles < 100)
    throw ConfigError("Fleming-Viot needs at least 100 particles");
  if (init.max_support() > n)
    throw ConfigError("initial law puts mass beyond the horizon");

  RngStream rng(seed, 0);
  std::vector<Simulator> sims;
  sims.reserve(static_cast<size_t>(particles));
  for (long k = 0; k < particles; ++k) {
    SystemState s0 = init.sample(rng);
    if (s0.max_size() > n) throw Error("sampled state beyond the horizon");
    sims.emplace_back(model, s0);
  }

  struct Pending {
    double t = 0.0;
    long replica = 0;
    std::uint64_t version = 0;
    bool operator>(const Pending& o) const { return t > o.t; }
  };
  std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>>
      heap;
  std::vector<std::uint64_t> version(static_cast<size_t>(particles), 0);
  auto schedule = [&](long k, double now) {
    const double dt =
        rng.exponential(sims[static_cast<size_t>(k)].total_rate());
    heap.push(Pending{now + dt, k, ++version[static_cast<size_t>(k)]});
  };
  for (long k = 0; k < particles; ++k) schedule(k, 0.0);

  ConditionedLaw out;
  out.n = n;
  out.probes = probes;
  out.replicas = particles;
  out.laws.assign(probes.size(), {});
  out.survivors.assign(probes.size(), particles);

  const double t_final = probes.back();
  const double window_start = 0.5 * t_final;
  long window_exits = 0;
  size_t pi = 0;
  std::uint64_t events = 0;
  constexpr std::uint64_t kFvBudget = 1'000'000'000ull;

  while (pi < probes.size()) {
    if (heap.empty()) throw Error("Fleming-Viot event queue drained");
    const Pending e = heap.top();
    heap.pop();
    if (e.version != version[static_cast<size_t>(e.replica)]) continue;
    while (pi < probes.size() && probes[pi] <= e.t) {
      for (long k = 0; k < particles; ++k)
        out.laws[pi].add(restricted_key(sims[static_cast<size_t>(k)].state(), n));
      ++pi;
    }
    if (pi == probes.size()) break;
    if (events >= kFvBudget)
      throw EventBudgetExceeded("Fleming-Viot event budget exhausted");
    ++events;
    Simulator& sim = sims[static_cast<size_t>(e.replica)];
    const Event ev = sim.select_event(e.t, rng);
    if (ev.kind == EventKind::Growth && ev.size == n) {
      // Exit: restart from the current state of a uniform other particle.
      if (particles < 2)
        throw AllExitedSimultaneously("no donor particle available");
      long donor =
          static_cast<long>(rng.uniform() * static_cast<double>(particles - 1));
      if (donor >= e.replica) ++donor;
      if (e.t >= window_start) ++window_exits;
      SystemState ds = sims[static_cast<size_t>(donor)].state();
      ds.time = e.t;
      sim = Simulator(model, ds);
    } else {
      sim.apply(ev);
    }
    schedule(e.replica, e.t);
  }

  if (t_final > window_start)
    out.exit_rate = static_cast<double>(window_exits) /
                    (static_cast<double>(particles) * (t_final - window_start));
  return out;
}

// --------------------------------------------------------------------------
// Exit-time domination coupling
// --------------------------------------------------------------------------

DominationResult domination_run(const RateModel& model, int n,
                                const std::vector<double>& means, long pairs,
                                std::uint64_t seed, int threads, double t_cap) {
  if (n < 2) throw ConfigError("domination horizon must be >= 2");
  if (pairs <= 0) throw ConfigError("domination needs at least one pair");
  require_finite_time(t_cap, "t_cap");
  if (static_cast<int>(means.size()) > n - 1)
    for (size_t k = static_cast<size_t>(n) - 1; k < means.size(); ++k)
      if (means[k] != 0.0)
        throw ConfigError("dominated means extend beyond the horizon");

  const IntensityVector qsd = qsd_intensities(model, n);
  bool pre_ok = true;
  std::vector<double> thin_p(static_cast<size_t>(n) - 1, 0.0);
  for (int i = 2; i <= n; ++i) {
    const double f = qsd.at(i);
    const double m =
        static_cast<size_t>(i - 2) < means.size() ? means[i - 2] : 0.0;
    if (!std::isfinite(m) || m < 0.0)
      throw ConfigError("dominated means must be finite and >= 0");
    if (m > f * (1.0 + 1e-12)) pre_ok = false;
    thin_p[static_cast<size_t>(i) - 2] = f > 0.0 ? std::min(1.0, m / f) : 0.0;
  }

  DominationResult out;
  out.precondition_verified = pre_ok;
  out.pairs.resize(static_cast<size_t>(pairs));
  parallel_for(pairs, threads, [&](long k) {
    RngStream base(seed, static_cast<std::uint64_t>(k));
    RngStream init_rng = base.fork(0);
    RngStream fresh_rng = base.fork(1);

    // Shared fresh-nucleation subsystem: one exit run from the empty state.
    RunSpec fresh_spec;
    fresh_spec.t_end = t_cap;
    fresh_spec.exit_n = n;
    const RunResult fresh = run_ssa(model, SystemState{}, fresh_spec, fresh_rng);
    const double tau0 = fresh.exit_time ? *fresh.exit_time : kInf;

    double tau_y = tau0;  // QSD copy
    double tau_x = tau0;  // dominated copy (its exit candidates are a subset)
    std::uint64_t particle = 0;
    for (int i = 2; i <= n; ++i) {
      const long y = sample_poisson(init_rng, qsd.at(i));
      const long x =
          sample_binomial(init_rng, y, thin_p[static_cast<size_t>(i) - 2]);
      for (long j = 0; j < y; ++j) {
        RngStream walk_rng = base.fork(2 + particle);
        ++particle;
        const ExitSample walk = run_until_exit(model, i, n, walk_rng, t_cap);
        if (!walk.censored && walk.outcome == ExitOutcome::Up) {
          tau_y = std::min(tau_y, walk.time);
          // By exchangeability the first x of the y clusters are the shared
          // (thinned) ones; they reuse the identical walk realization.
          if (j < x) tau_x = std::min(tau_x, walk.time);
        }
      }
    }

    DominationPair pair;
    pair.censored = !(tau_x <= t_cap) || !(tau_y <= t_cap);
    pair.tau_qsd = std::min(tau_y, t_cap);
    pair.tau_dominated = std::min(tau_x, t_cap);
    out.pairs[static_cast<size_t>(k)] = pair;
  });
  for (const DominationPair& p : out.pairs)
    if (p.tau_dominated < p.tau_qsd) ++out.violations;
  return out;
}

}  // namespace bd
