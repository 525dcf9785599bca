// End-to-end CLI checks: exit codes, output schemas, closed-form values in
// reports, and byte-identical reruns (including thread-count invariance).
// BDLAB_BINARY and TEST_DATA_DIR are injected by the build.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string data(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

int run(const std::string& args) {
  const std::string cmd = std::string(BDLAB_BINARY) + " " + args +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("bdlab_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

double jn_value(const json& arr, int n) {
  for (const json& e : arr)
    if (e.at("n").get<int>() == n) return e.at("value").get<double>();
  REQUIRE(false);
  return 0.0;
}

double sized_value(const json& arr, int size) {
  for (const json& e : arr)
    if (e.at("size").get<int>() == size) return e.at("value").get<double>();
  REQUIRE(false);
  return 0.0;
}

}  // namespace

TEST_CASE("analyze: closed-form report for constant rates at z = 2") {
  const fs::path dir = fresh_dir("analyze");
  REQUIRE(run("analyze --config " + data("constant_z2.json") + " --out " +
              dir.string()) == 0);
  const json doc = slurp_json(dir / "analysis.json");
  CHECK(doc.at("regime") == "supercritical");
  CHECK(doc.at("J").get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(jn_value(doc.at("J_n"), 2) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(jn_value(doc.at("J_n"), 5) ==
        doctest::Approx(64.0 / 31.0).epsilon(1e-12));
  CHECK(sized_value(doc.at("f_n"), 2) ==
        doctest::Approx(60.0 / 31.0).epsilon(1e-12));
  CHECK(sized_value(doc.at("f"), 3) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(doc.at("zs").get<double>() == doctest::Approx(1.0));
  CHECK(doc.contains("constants"));
  CHECK(doc.contains("config_digest"));
  CHECK(doc.at("gamma_n").is_array());
}

TEST_CASE("analyze: horizon 2 exposes the small closed forms") {
  const fs::path dir = fresh_dir("analyze2");
  REQUIRE(run("analyze --config " + data("constant_z2_n2.json") + " --out " +
              dir.string()) == 0);
  const json doc = slurp_json(dir / "analysis.json");
  CHECK(sized_value(doc.at("f_n"), 2) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(jn_value(doc.at("gamma_n"), 2) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("analyze: metastable report carries the critical size") {
  const fs::path dir = fresh_dir("analyzemeta");
  REQUIRE(run("analyze --config " + data("metastable.json") + " --out " +
              dir.string()) == 0);
  const json doc = slurp_json(dir / "analysis.json");
  CHECK(doc.at("regime").get<std::string>() == "supercritical");
  CHECK(doc.at("n_star").get<long>() == 6);
  CHECK_FALSE(doc.at("no_nucleus").get<bool>());
}

TEST_CASE("analyze: saturated monomer concentration exits with code 2") {
  const fs::path dir = fresh_dir("critical");
  CHECK(run("analyze --config " + data("critical.json") + " --out " +
            dir.string()) == 2);
}

TEST_CASE("bad configs exit with code 1") {
  const fs::path dir = fresh_dir("bad");
  CHECK(run("analyze --config " + data("badfamily.json") + " --out " +
            dir.string()) == 1);
  CHECK(run("analyze --config /nonexistent.json --out " + dir.string()) == 1);
  CHECK(run("analyze --out " + dir.string()) == 1);  // missing --config
  // Sampling without any seed source is refused.
  CHECK(run("simulate --config " + data("noseed.json") + " --out " +
            dir.string()) == 1);
}

TEST_CASE("simulate: runs, exit files, and reruns are byte-identical") {
  const fs::path d1 = fresh_dir("sim1");
  const fs::path d2 = fresh_dir("sim2");
  const fs::path d3 = fresh_dir("sim3");
  const std::string base = "simulate --config " + data("constant_z2.json") +
                           " --replicas 40";
  REQUIRE(run(base + " --out " + d1.string()) == 0);
  REQUIRE(run(base + " --out " + d2.string()) == 0);
  REQUIRE(run(base + " --threads 4 --out " + d3.string()) == 0);
  CHECK(slurp(d1 / "runs.csv") == slurp(d2 / "runs.csv"));
  CHECK(slurp(d1 / "runs.csv") == slurp(d3 / "runs.csv"));
  CHECK(slurp(d1 / "exits.csv") == slurp(d3 / "exits.csv"));

  const json doc = slurp_json(d1 / "summary.json");
  CHECK(doc.at("replicas").get<long>() == 40);
  CHECK(doc.at("J_n").get<double>() ==
        doctest::Approx(64.0 / 31.0).epsilon(1e-12));

  // CSV header carries the provenance line and schema.
  const std::string runs = slurp(d1 / "runs.csv");
  CHECK(runs.find("replica,probe_time,size,count") != std::string::npos);
  const std::string exits = slurp(d1 / "exits.csv");
  CHECK(exits.find("replica,tau_n,censored") != std::string::npos);
}

TEST_CASE("simulate: subcritical open-horizon run") {
  const fs::path dir = fresh_dir("sub");
  REQUIRE(run("simulate --config " + data("subcritical.json") +
              " --replicas 30 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "runs.csv"));
  CHECK_FALSE(fs::exists(dir / "exits.csv"));  // no horizon configured
  const json doc = slurp_json(dir / "summary.json");
  CHECK(doc.at("regime") == "subcritical");
}

TEST_CASE("exit-times: sidecar carries the analytic comparators") {
  const fs::path dir = fresh_dir("exits");
  REQUIRE(run("exit-times --config " + data("constant_z2.json") +
              " --replicas 500 --out " + dir.string()) == 0);
  const std::string csv = slurp(dir / "exit_times.csv");
  CHECK(csv.find("replica,start,n,outcome,time") != std::string::npos);
  const json doc = slurp_json(dir / "exit_times_summary.json");
  CHECK(doc.at("J_n").get<double>() ==
        doctest::Approx(64.0 / 31.0).epsilon(1e-12));
  CHECK(doc.at("absorption_prob").get<double>() ==
        doctest::Approx(15.0 / 31.0).epsilon(1e-12));
  // The empirical split must sit near its comparator.
  const double p = doc.at("p_down_hat").get<double>();
  const double se = doc.at("p_down_se").get<double>();
  CHECK(std::abs(p - 15.0 / 31.0) < 4.0 * se);
}

TEST_CASE("qsd: rejection sampler on the barrier model") {
  const fs::path dir = fresh_dir("qsd");
  REQUIRE(run("qsd --config " + data("barrier.json") + " --out " +
              dir.string()) == 0);
  const std::string csv = slurp(dir / "qsd_marginals.csv");
  CHECK(csv.find("probe_time,size,mean,se,survivors,f_n") !=
        std::string::npos);
  const json doc = slurp_json(dir / "qsd_summary.json");
  CHECK(doc.at("estimator") == "rejection");
  CHECK(doc.at("tv_to_qsd").size() == 3);
  // TV decreases from the first to the last probe on this fast-mixing model.
  const double tv0 = doc.at("tv_to_qsd")[0].at("tv").get<double>();
  const double tv2 = doc.at("tv_to_qsd")[2].at("tv").get<double>();
  CHECK(tv2 < tv0);
}

TEST_CASE("qsd: Fleming-Viot estimator reports an exit rate") {
  const fs::path dir = fresh_dir("fv");
  REQUIRE(run("qsd --config " + data("fv.json") + " --out " + dir.string()) ==
          0);
  const json doc = slurp_json(dir / "qsd_summary.json");
  CHECK(doc.at("estimator") == "fv");
  const double jn = doc.at("J_n").get<double>();
  const double rate = doc.at("fv_exit_rate").get<double>();
  CHECK(rate > 0.6 * jn);
  CHECK(rate < 1.6 * jn);
}

TEST_CASE("metastability: sweep table and family guard") {
  const fs::path dir = fresh_dir("meta");
  REQUIRE(run("metastability --config " + data("metastable.json") + " --out " +
              dir.string()) == 0);
  const std::string csv = slurp(dir / "metastability.csv");
  CHECK(csv.find("z,n_star,j_nstar,gamma_nstar,ratio,t,bound_survival,"
                 "bound_tv") != std::string::npos);
  // Two sweep points, three horizon multiples each, plus comment + header.
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 2 + 6);

  CHECK(run("metastability --config " + data("constant_z2.json") + " --out " +
            dir.string()) == 1);
}

TEST_CASE("verify: single-gate filter, negative control, unknown gate") {
  const fs::path dir = fresh_dir("verify");
  REQUIRE(run("verify --only flux-qsd-algebra --out " + dir.string()) == 0);
  const json doc = slurp_json(dir / "verdicts.json");
  CHECK(doc.at("all_pass").get<bool>());
  CHECK(doc.at("verdicts").size() == 1);
  CHECK(doc.at("verdicts")[0].at("name") == "flux-qsd-algebra");

  // Fault injection: corrupting the flux constant must flip the gate.
  CHECK(run("verify --only flux-qsd-algebra --corrupt-jn 1.01 --out " +
            dir.string()) == 3);
  const json bad = slurp_json(dir / "verdicts.json");
  CHECK_FALSE(bad.at("all_pass").get<bool>());

  CHECK(run("verify --only no-such-gate --out " + dir.string()) == 1);
}

TEST_CASE("spot-values gate runs standalone") {
  const fs::path dir = fresh_dir("spot");
  CHECK(run("verify --only spot-values --out " + dir.string()) == 0);
}
