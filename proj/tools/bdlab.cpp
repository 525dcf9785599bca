// bdlab: batch front door for the cluster-population laboratory.
//
// Subcommands: analyze, simulate, exit-times, qsd, metastability, verify.
// All outputs are CSV/JSON; every file embeds the config digest and the code
// version so results are replayable and diffable. Exit codes: 0 success,
// 1 configuration error, 2 hypothesis-class error, 3 anything else (including
// failed verification gates).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "bd/analytics.hpp"
#include "bd/chain.hpp"
#include "bd/errors.hpp"
#include "bd/model.hpp"
#include "bd/model_json.hpp"
#include "bd/parallel.hpp"
#include "bd/process.hpp"
#include "bd/rng.hpp"
#include "bd/spectral.hpp"
#include "bd/stats.hpp"
#include "bd/verify.hpp"
#include "bd/version.hpp"

namespace {

using nlohmann::json;

// ----------------------------------------------------------------- config --

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<long> replicas;
  int threads = 0;
};

struct LoadedConfig {
  json doc;
  std::string digest;  // FNV-1a of the canonical dump + CLI overrides
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

LoadedConfig load_config(const CommonArgs& args, bool required = true) {
  LoadedConfig out;
  if (args.config_path.empty()) {
    if (required) throw bd::ConfigError("--config is required");
    out.doc = json::object();
  } else {
    std::ifstream in(args.config_path);
    if (!in) throw bd::ConfigError("cannot open config: " + args.config_path);
    try {
      in >> out.doc;
    } catch (const std::exception& e) {
      throw bd::ConfigError(std::string("config parse error in ") +
                            args.config_path + ": " + e.what());
    }
    if (!out.doc.is_object())
      throw bd::ConfigError("config root must be a JSON object");
  }
  std::ostringstream key;
  key << out.doc.dump() << "|seed=" << (args.seed ? *args.seed : 0)
      << "|replicas=" << (args.replicas ? *args.replicas : -1);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(key.str())));
  out.digest = buf;
  return out;
}

std::uint64_t require_seed(const CommonArgs& args, const json& cfg) {
  if (args.seed) return *args.seed;
  if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
  throw bd::ConfigError("seed is mandatory: pass --seed or a \"seed\" field");
}

bd::RateModel model_from_config(const json& cfg) {
  if (!cfg.contains("model"))
    throw bd::ConfigError("config is missing the \"model\" block");
  return bd::model_from_json(cfg.at("model"));
}

template <typename T>
T field_or(const json& cfg, const char* name, T fallback) {
  if (!cfg.contains(name)) return fallback;
  try {
    return cfg.at(name).get<T>();
  } catch (const std::exception& e) {
    throw bd::ConfigError(std::string("config field \"") + name +
                          "\": " + e.what());
  }
}

std::vector<double> probes_from(const json& cfg) {
  std::vector<double> probes = field_or(cfg, "probes", std::vector<double>{});
  for (size_t k = 1; k < probes.size(); ++k)
    if (!(probes[k] > probes[k - 1]))
      throw bd::ConfigError("probe grid must be strictly increasing");
  return probes;
}

bd::InitialLaw initial_law_from(const json& cfg, const bd::RateModel& model,
                                int n) {
  if (!cfg.contains("init")) return bd::InitialLaw::empty();
  const json& init = cfg.at("init");
  if (init.is_string()) {
    const std::string kind = init.get<std::string>();
    if (kind == "empty") return bd::InitialLaw::empty();
    if (kind == "poisson:eq") {
      const int depth = n >= 2 ? n : field_or(cfg, "init_depth", 64);
      return bd::InitialLaw::poisson(bd::equilibrium_intensities(model, depth));
    }
    if (kind == "poisson:qsd") {
      if (n < 2)
        throw bd::ConfigError("init poisson:qsd needs a horizon field \"n\"");
      return bd::InitialLaw::poisson(bd::qsd_intensities(model, n));
    }
    throw bd::ConfigError("unknown init kind: " + kind);
  }
  if (init.is_object() && init.contains("counts")) {
    bd::SystemState state;
    for (const auto& [key, value] : init.at("counts").items())
      state.set_count(std::stoi(key), value.get<long>());
    return bd::InitialLaw::explicit_state(std::move(state));
  }
  throw bd::ConfigError(
      "init must be \"empty\", \"poisson:eq\", \"poisson:qsd\", or "
      "{\"counts\": {size: count}}");
}

// ----------------------------------------------------------------- output --

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw bd::ConfigError("cannot write output file: " + path);
  out.precision(17);
  return out;
}

std::string csv_header(const LoadedConfig& cfg, const std::string& model_digest,
                       std::uint64_t seed) {
  std::ostringstream h;
  h << "# " << bd::kVersion << " config=" << cfg.digest
    << " model=" << model_digest << " seed=" << seed << "\n";
  return h.str();
}

json summary_base(const LoadedConfig& cfg, const std::string& model_digest,
                  std::uint64_t seed) {
  return json{{"version", bd::kVersion},
              {"config_digest", cfg.digest},
              {"model_digest", model_digest},
              {"seed", seed}};
}

void write_json(const std::string& dir, const std::string& name,
                const json& doc) {
  auto out = open_out(dir, name);
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------- analyze --

int cmd_analyze(const CommonArgs& args) {
  const LoadedConfig cfg = load_config(args);
  const bd::RateModel model = model_from_config(cfg.doc);
  const std::uint64_t seed =
      args.seed ? *args.seed : field_or<std::uint64_t>(cfg.doc, "seed", 0);
  const int n = field_or(cfg.doc, "n", 5);
  const int i_max = field_or(cfg.doc, "i_max", std::max(n, 8));
  if (n < 2) throw bd::ConfigError("horizon n must be >= 2");

  json doc = summary_base(cfg, model.digest(), seed);
  doc["model"] = bd::model_to_json(model);

  const bd::Saturation sat = model.saturation();
  doc["zs"] = sat.zs;
  doc["zs_exact"] = sat.exact;
  const bd::Regime regime = model.regime();
  doc["regime"] =
      regime == bd::Regime::Subcritical ? "subcritical" : "supercritical";

  auto annotate = [](const bd::IntensityVector& v) {
    json arr = json::array();
    for (int i = v.first_index; i <= v.last_index(); ++i)
      arr.push_back(json{{"size", i}, {"value", v.at(i)}});
    return arr;
  };

  json jn = json::array();
  for (int m = 2; m <= n; ++m)
    jn.push_back(json{{"n", m}, {"value", bd::flux_jn(model, m)}});
  doc["J_n"] = jn;
  doc["f_n"] = annotate(bd::qsd_intensities(model, n));
  doc["c_eq"] = annotate(bd::equilibrium_intensities(model, i_max));

  if (regime == bd::Regime::Supercritical) {
    const bd::FluxResult j = bd::flux_j(model);
    doc["J"] = j.value;
    doc["J_rel_bound"] = j.rel_bound;
    doc["f"] = annotate(bd::stationary_intensities(model, i_max));
    const bd::CriticalSize cs = bd::critical_size(model);
    doc["n_star"] = cs.n_star;
    doc["no_nucleus"] = cs.no_nucleus;
  }

  json gammas = json::array();
  for (int m = 2; m <= n; ++m)
    gammas.push_back(
        json{{"n", m}, {"value", bd::spectral_gap_truncated(model, m)}});
  doc["gamma_n"] = gammas;
  try {
    const bd::GapEstimate lambda = bd::spectral_gap_estimate(model);
    doc["lambda"] = json{{"value", lambda.value},
                         {"bracket_lo", lambda.bracket_lo},
                         {"bracket_hi", lambda.bracket_hi},
                         {"n_used", lambda.n_used},
                         {"h2_warning", lambda.h2_warning}};
  } catch (const bd::Error& e) {
    doc["lambda"] = json{{"unavailable", e.what()}};
  }

  const bd::BoundConstants bc = bd::bound_constants(model, n);
  json constants;
  constants["K_n"] = bc.k_n;
  if (bc.k_eq) constants["K"] = *bc.k_eq;
  json ms = json::array();
  for (int i = 2; i <= n; ++i)
    ms.push_back(json{{"size", i}, {"value", bc.m_at(i)}});
  constants["M"] = ms;
  constants["H_in"] = bc.h_in;
  constants["H_qsd"] = bc.h_qsd;
  constants["G_in"] = bc.g_in_poisson;
  constants["G_in_linear"] = bc.g_in_linear;
  doc["constants"] = constants;

  write_json(args.out_dir, "analysis.json", doc);
  std::cout << "analyze: wrote " << args.out_dir << "/analysis.json\n";
  return 0;
}

// --------------------------------------------------------------- simulate --

int cmd_simulate(const CommonArgs& args) {
  const LoadedConfig cfg = load_config(args);
  const bd::RateModel model = model_from_config(cfg.doc);
  const std::uint64_t seed = require_seed(args, cfg.doc);
  const long replicas =
      args.replicas ? *args.replicas : field_or<long>(cfg.doc, "replicas", 1);
  if (replicas < 1) throw bd::ConfigError("replicas must be >= 1");

  bd::RunSpec spec;
  spec.t_end = field_or(cfg.doc, "t_end", 0.0);
  spec.probes = probes_from(cfg.doc);
  spec.exit_n = field_or(cfg.doc, "n", 0);
  spec.event_budget =
      field_or<std::uint64_t>(cfg.doc, "event_budget", 1'000'000'000ull);
  const bd::InitialLaw init =
      initial_law_from(cfg.doc, model, spec.exit_n);

  const bd::EnsembleResult ens =
      bd::simulate_ensemble(model, init, spec, replicas, seed, args.threads);

  auto runs = open_out(args.out_dir, "runs.csv");
  runs << csv_header(cfg, model.digest(), seed);
  runs << "replica,probe_time,size,count\n";
  for (size_t r = 0; r < ens.records.size(); ++r)
    for (const bd::SystemState& snap : ens.records[r].snapshots)
      for (const auto& [size, count] : snap.counts)
        runs << r << "," << snap.time << "," << size << "," << count << "\n";

  if (spec.exit_n >= 2) {
    auto exits = open_out(args.out_dir, "exits.csv");
    exits << csv_header(cfg, model.digest(), seed);
    exits << "replica,tau_n,censored\n";
    for (size_t r = 0; r < ens.records.size(); ++r) {
      const auto& rec = ens.records[r];
      exits << r << "," << (rec.exit_time ? *rec.exit_time : rec.end_time)
            << "," << (rec.exit_time ? 0 : 1) << "\n";
    }
  }

  json doc = summary_base(cfg, model.digest(), seed);
  doc["replicas"] = replicas;
  doc["t_end"] = spec.t_end;
  std::uint64_t events = 0;
  for (const auto& rec : ens.records) events += rec.events;
  doc["total_events"] = events;
  doc["regime"] = model.regime() == bd::Regime::Subcritical ? "subcritical"
                                                            : "supercritical";
  if (spec.exit_n >= 2) {
    doc["n"] = spec.exit_n;
    doc["J_n"] = bd::flux_jn(model, spec.exit_n);
    long exited = 0;
    for (const auto& rec : ens.records) exited += rec.exit_time ? 1 : 0;
    doc["exited"] = exited;
  }
  write_json(args.out_dir, "summary.json", doc);
  std::cout << "simulate: " << replicas << " replicas, " << events
            << " events -> " << args.out_dir << "\n";
  return 0;
}

// ------------------------------------------------------------- exit-times --

int cmd_exit_times(const CommonArgs& args) {
  const LoadedConfig cfg = load_config(args);
  const bd::RateModel model = model_from_config(cfg.doc);
  const std::uint64_t seed = require_seed(args, cfg.doc);
  const int n = field_or(cfg.doc, "n", 5);
  const int start = field_or(cfg.doc, "start", 2);
  const double t_cap = field_or(cfg.doc, "t_cap", 1e7);
  const long replicas = args.replicas
                            ? *args.replicas
                            : field_or<long>(cfg.doc, "replicas", 1000);
  if (replicas < 1) throw bd::ConfigError("replicas must be >= 1");
  if (n < 2 || start < 2 || start > n)
    throw bd::ConfigError("need 2 <= start <= n");

  std::vector<bd::ExitSample> samples(static_cast<size_t>(replicas));
  bd::parallel_for(replicas, args.threads, [&](long k) {
    bd::RngStream rng(seed, static_cast<std::uint64_t>(k));
    samples[static_cast<size_t>(k)] =
        bd::run_until_exit(model, start, n, rng, t_cap);
  });

  auto csv = open_out(args.out_dir, "exit_times.csv");
  csv << csv_header(cfg, model.digest(), seed);
  csv << "replica,start,n,outcome,time\n";
  long down = 0, censored = 0;
  for (size_t k = 0; k < samples.size(); ++k) {
    const bd::ExitSample& s = samples[k];
    const char* outcome =
        s.censored ? "censored"
                   : (s.outcome == bd::ExitOutcome::Down ? "down" : "up");
    if (s.censored)
      ++censored;
    else if (s.outcome == bd::ExitOutcome::Down)
      ++down;
    csv << k << "," << start << "," << n << "," << outcome << "," << s.time
        << "\n";
  }

  json doc = summary_base(cfg, model.digest(), seed);
  doc["n"] = n;
  doc["start"] = start;
  doc["replicas"] = replicas;
  doc["censored"] = censored;
  doc["J_n"] = bd::flux_jn(model, n);
  doc["absorption_prob"] = bd::absorption_prob(model, start, n);
  const long kept = replicas - censored;
  if (kept > 0) {
    const double p = static_cast<double>(down) / static_cast<double>(kept);
    doc["p_down_hat"] = p;
    doc["p_down_se"] =
        std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(kept));
  }
  write_json(args.out_dir, "exit_times_summary.json", doc);
  std::cout << "exit-times: " << replicas << " walks -> " << args.out_dir
            << "\n";
  return 0;
}

// -------------------------------------------------------------------- qsd --

int cmd_qsd(const CommonArgs& args) {
  const LoadedConfig cfg = load_config(args);
  const bd::RateModel model = model_from_config(cfg.doc);
  const std::uint64_t seed = require_seed(args, cfg.doc);
  const int n = field_or(cfg.doc, "n", 5);
  if (n < 2) throw bd::ConfigError("horizon n must be >= 2");
  const std::vector<double> probes = probes_from(cfg.doc);
  if (probes.empty()) throw bd::ConfigError("qsd needs a probe grid");
  const std::string estimator =
      field_or<std::string>(cfg.doc, "estimator", "rejection");
  const bd::InitialLaw init = initial_law_from(cfg.doc, model, n);

  bd::ConditionedLaw cond;
  if (estimator == "rejection") {
    const long replicas = args.replicas
                              ? *args.replicas
                              : field_or<long>(cfg.doc, "replicas", 20000);
    const long min_survivors = field_or<long>(cfg.doc, "min_survivors", 200);
    cond = bd::conditioned_ensemble_rejection(model, n, init, probes, replicas,
                                              seed, args.threads,
                                              min_survivors);
  } else if (estimator == "fv") {
    const long particles = args.replicas
                               ? *args.replicas
                               : field_or<long>(cfg.doc, "particles", 1000);
    cond = bd::conditioned_ensemble_fv(model, n, init, probes, particles, seed);
  } else {
    throw bd::ConfigError("estimator must be \"rejection\" or \"fv\"");
  }

  const bd::IntensityVector f = bd::qsd_intensities(model, n);
  auto csv = open_out(args.out_dir, "qsd_marginals.csv");
  csv << csv_header(cfg, model.digest(), seed);
  csv << "probe_time,size,mean,se,survivors,f_n\n";
  json tv = json::array();
  for (size_t k = 0; k < probes.size(); ++k) {
    for (int i = 2; i <= n; ++i) {
      const bd::MeanSe ms =
          bd::marginal_mean(cond.laws[k], static_cast<size_t>(i - 2));
      csv << probes[k] << "," << i << "," << ms.mean << "," << ms.se << ","
          << cond.survivors[k] << "," << f.at(i) << "\n";
    }
    const bd::PoissonTvResult r =
        bd::tv_to_product_poisson(cond.laws[k], f.values);
    tv.push_back(json{{"t", probes[k]},
                      {"tv", r.tv},
                      {"sampling_error_bound", r.sampling_error_bound},
                      {"survivors", cond.survivors[k]}});
  }

  json doc = summary_base(cfg, model.digest(), seed);
  doc["n"] = n;
  doc["estimator"] = estimator;
  doc["replicas"] = cond.replicas;
  doc["J_n"] = bd::flux_jn(model, n);
  doc["gamma_n"] = bd::spectral_gap_truncated(model, n);
  doc["tv_to_qsd"] = tv;
  if (cond.exit_rate) doc["fv_exit_rate"] = *cond.exit_rate;
  write_json(args.out_dir, "qsd_summary.json", doc);
  std::cout << "qsd: " << estimator << " estimator, " << cond.replicas
            << " replicas -> " << args.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------- metastability --

int cmd_metastability(const CommonArgs& args) {
  const LoadedConfig cfg = load_config(args);
  const bd::RateModel model = model_from_config(cfg.doc);
  if (model.family() != bd::Family::Metastable)
    throw bd::ConfigError("metastability sweep requires the Metastable family");
  const std::uint64_t seed =
      args.seed ? *args.seed : field_or<std::uint64_t>(cfg.doc, "seed", 0);
  std::vector<double> sweep =
      field_or(cfg.doc, "sweep", std::vector<double>{1.5, 1.3, 1.2, 1.1});
  if (sweep.empty()) throw bd::ConfigError("sweep must list at least one z");
  const double zs = model.saturation().zs;
  for (size_t k = 0; k < sweep.size(); ++k) {
    if (sweep[k] <= zs)
      throw bd::ConfigError("sweep must stay strictly above z_s");
    if (k > 0 && !(sweep[k] < sweep[k - 1]))
      throw bd::ConfigError("sweep must be strictly decreasing toward z_s");
  }

  const bd::RateModel::Params& p = model.params();
  auto csv = open_out(args.out_dir, "metastability.csv");
  csv << csv_header(cfg, model.digest(), seed);
  csv << "z,n_star,j_nstar,gamma_nstar,ratio,t,bound_survival,bound_tv\n";
  for (double z : sweep) {
    const bd::RateModel m =
        bd::RateModel::metastable(p.big_a, p.alpha, p.zs, p.q, p.gamma, z);
    const bd::CriticalSize cs = bd::critical_size(m);
    const double jn = bd::flux_jn(m, cs.n_star);
    const double gap = bd::spectral_gap_truncated(m, cs.n_star);
    const bd::BoundConstants bc = bd::bound_constants(m, cs.n_star);
    for (double mult : {1.0, 3.0, 10.0}) {
      const double t = mult / gap;
      // Survival of the nucleation clock and relaxation of the conditioned
      // law over the metastable window.
      const double bound_survival = std::exp(-jn * t);
      const double bound_tv =
          bc.k_n * bc.h_qsd * std::exp((jn - gap) * t);
      csv << z << "," << cs.n_star << "," << jn << "," << gap << ","
          << gap / jn << "," << t << "," << bound_survival << "," << bound_tv
          << "\n";
    }
  }
  std::cout << "metastability: wrote " << args.out_dir
            << "/metastability.csv\n";
  return 0;
}

// ----------------------------------------------------------------- verify --

int cmd_verify(const CommonArgs& args, double scale, const std::string& only,
               double corrupt_jn) {
  const LoadedConfig cfg = load_config(args, /*required=*/false);
  bd::VerifyOptions opt;
  opt.seed = args.seed ? *args.seed
                       : field_or<std::uint64_t>(cfg.doc, "seed", 20240801ull);
  opt.scale = scale > 0 ? scale : field_or(cfg.doc, "scale", 1.0);
  opt.threads = args.threads;
  opt.only = !only.empty() ? only : field_or<std::string>(cfg.doc, "only", "");
  opt.corrupt_jn =
      corrupt_jn != 1.0 ? corrupt_jn : field_or(cfg.doc, "corrupt_jn", 1.0);

  const std::vector<bd::Verdict> verdicts = bd::run_acceptance(opt);
  json arr = json::array();
  bool all_pass = true;
  for (const bd::Verdict& v : verdicts) {
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << v.name
              << "  statistic=" << v.statistic << " threshold=" << v.threshold
              << "\n      " << v.detail << "\n";
    all_pass = all_pass && v.pass;
    arr.push_back(json{{"name", v.name},
                       {"pass", v.pass},
                       {"statistic", v.statistic},
                       {"threshold", v.threshold},
                       {"detail", v.detail}});
  }
  json doc = json{{"version", bd::kVersion},
                  {"config_digest", cfg.digest},
                  {"seed", opt.seed},
                  {"scale", opt.scale},
                  {"all_pass", all_pass},
                  {"verdicts", arr}};
  write_json(args.out_dir, "verdicts.json", doc);
  std::cout << (all_pass ? "ALL GATES PASS" : "GATE FAILURES PRESENT") << "\n";
  return all_pass ? 0 : 3;
}

int classify_exception(const std::exception& e) {
  if (dynamic_cast<const bd::ConfigError*>(&e)) return 1;
  if (dynamic_cast<const bd::CriticalZ*>(&e) ||
      dynamic_cast<const bd::HypothesisViolation*>(&e) ||
      dynamic_cast<const bd::SubcriticalRegime*>(&e) ||
      dynamic_cast<const bd::SubcriticalRequired*>(&e) ||
      dynamic_cast<const bd::NoNucleus*>(&e))
    return 2;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(bd::kVersion) +
               " - exact cluster-population laboratory"};
  app.require_subcommand(1);

  CommonArgs args;
  double scale = 0.0;
  std::string only;
  double corrupt_jn = 1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON experiment config");
    cmd->add_option("--seed", args.seed, "RNG seed (mandatory for sampling)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--replicas", args.replicas, "replica-count override");
    cmd->add_option("--threads", args.threads,
                    "worker threads (0 = hardware); never affects results");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "closed-form report");
  CLI::App* simulate = app.add_subcommand("simulate", "exact ensemble runs");
  CLI::App* exits = app.add_subcommand("exit-times", "single-cluster exits");
  CLI::App* qsd = app.add_subcommand("qsd", "conditioned-law estimators");
  CLI::App* meta = app.add_subcommand("metastability", "z-sweep time scales");
  CLI::App* verify = app.add_subcommand("verify", "acceptance gates");
  for (CLI::App* cmd : {analyze, simulate, exits, qsd, meta, verify})
    add_common(cmd);
  verify->add_option("--scale", scale, "replica-budget multiplier");
  verify->add_option("--only", only, "run a single named gate");
  verify->add_option("--corrupt-jn", corrupt_jn,
                     "fault-injection factor on J_n (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(args);
    if (app.got_subcommand(simulate)) return cmd_simulate(args);
    if (app.got_subcommand(exits)) return cmd_exit_times(args);
    if (app.got_subcommand(qsd)) return cmd_qsd(args);
    if (app.got_subcommand(meta)) return cmd_metastability(args);
    if (app.got_subcommand(verify))
      return cmd_verify(args, scale, only, corrupt_jn);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_exception(e);
  }
  return 1;
}
