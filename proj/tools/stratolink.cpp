// Command-line front end: loads a scenario, runs one of the three study
// types (backhaul sweep, access CDFs, chain planner), and writes plot-ready
// CSV plus a manifest with full reproducibility metadata.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "stratolink/stratolink.hpp"

namespace fs = std::filesystem;
using namespace stratolink;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> trials_flag;
  int workers = 0;  // 0 -> hardware concurrency
  std::string command_line;
};

std::uint64_t resolve_seed(const CommonArgs& args, const Scenario& sc) {
  if (args.seed_flag) return *args.seed_flag;
  if (sc.rng_seed_from_config) return sc.rng_seed;
  if (const char* env = std::getenv("STRATOLINK_SEED")) {
    std::string text(env);
    std::size_t pos = 0;
    std::uint64_t value = 0;
    try {
      value = std::stoull(text, &pos);
    } catch (const std::exception&) {
      throw ConfigError("STRATOLINK_SEED", "not a valid unsigned integer: " + text);
    }
    if (pos != text.size())
      throw ConfigError("STRATOLINK_SEED", "not a valid unsigned integer: " + text);
    return value;
  }
  return 0;
}

int resolve_workers(const CommonArgs& args) {
  if (args.workers > 0) return args.workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

Scenario prepare_scenario(const CommonArgs& args) {
  Scenario sc = load_scenario(args.scenario_path);
  sc.rng_seed = resolve_seed(args, sc);
  if (args.trials_flag) {
    if (*args.trials_flag < 1) throw ConfigError("trials", "must be >= 1");
    sc.trials = *args.trials_flag;
  }
  return sc;
}

std::string cdf_to_csv(const CdfSeries& series) {
  std::string out = "rate_bps,cum_prob\n";
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    out += format_double(series.samples[i]);
    out += ',';
    out += format_double(series.cum_prob(i));
    out += '\n';
  }
  return out;
}

void finish_run(const fs::path& out_dir, const Scenario& sc, const CommonArgs& args,
                const std::vector<std::pair<std::string, std::string>>& files,
                std::chrono::steady_clock::time_point started) {
  fs::create_directories(out_dir);
  RunManifest manifest;
  manifest.scenario_hash = scenario_hash(sc);
  manifest.seed = sc.rng_seed;
  manifest.command_line = args.command_line;
  for (const auto& [name, content] : files) {
    atomic_write_file(out_dir / name, content);
    manifest.outputs.push_back(name);
  }
  manifest.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_manifest(out_dir, manifest);
}

int cmd_backhaul(const CommonArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const Scenario sc = prepare_scenario(args);
  if (sc.sweep.distances_km.empty()) throw ConfigError("sweep.distances_km", "must be non-empty");
  if (sc.sweep.n_haps.empty()) throw ConfigError("sweep.n_haps", "must be non-empty");

  const auto rows = sweep_backhaul(sc.sweep.distances_km, sc.sweep.n_haps,
                                   sc.central_weather(), sc.disaster_weather(),
                                   sc.link(Band::Fso));

  std::string csv = "distance_km,n_haps,end_to_end_gbps,bottleneck_hop\n";
  for (const SweepRow& row : rows) {
    csv += format_double(row.distance_km);
    csv += ',';
    csv += std::to_string(row.n_haps);
    csv += ',';
    csv += format_double(row.result.end_to_end_bps / 1e9);
    csv += ',';
    csv += std::to_string(row.result.bottleneck_hop);
    csv += '\n';
  }

  finish_run(args.out_dir, sc, args, {{"backhaul.csv", csv}}, started);
  return kExitOk;
}

int cmd_access(const CommonArgs& args, const std::string& band_token,
               const std::string& weather_token) {
  const auto started = std::chrono::steady_clock::now();
  const Scenario sc = prepare_scenario(args);

  if (band_token != "fso" && band_token != "thz" && band_token != "ka" && band_token != "s" &&
      band_token != "hybrid")
    throw ConfigError("band", "unknown band '" + band_token + "' (valid: fso|thz|ka|s|hybrid)");
  const Condition condition = detail::parse_condition(weather_token, "weather");

  const int workers = resolve_workers(args);
  std::vector<std::pair<std::string, std::string>> files;
  const std::string suffix = "_" + std::string(condition_name(condition)) + ".csv";

  if (band_token == "hybrid") {
    const HybridAccessCdf cdfs =
        access_cdf_hybrid(sc, NodeKind::TerrestrialBs, condition, sc.trials, workers);
    files.emplace_back("cdf_fso" + suffix, cdf_to_csv(cdfs.fso));
    files.emplace_back("cdf_thz" + suffix, cdf_to_csv(cdfs.thz));
    files.emplace_back("cdf_hybrid" + suffix, cdf_to_csv(cdfs.hybrid));
  } else {
    Band band = Band::Fso;
    NodeKind kind = NodeKind::TerrestrialBs;
    if (band_token == "thz") band = Band::Thz;
    if (band_token == "ka") {
      band = Band::KaBand;
      kind = NodeKind::VsatTerminal;
    }
    if (band_token == "s") {
      band = Band::SBand;
      kind = NodeKind::HandheldUser;
    }
    const AccessCdf cdf = access_cdf(sc, band, kind, condition, sc.trials, workers);
    if (band == Band::KaBand || band == Band::SBand) {
      // shared rate is the headline series; the dedicated-link rate goes
      // alongside for comparison
      const std::string stem = "cdf_" + band_token + "_" + condition_name(condition);
      files.emplace_back(stem + ".csv", cdf_to_csv(cdf.shared));
      files.emplace_back(stem + "_per_link.csv", cdf_to_csv(cdf.per_link));
    } else {
      files.emplace_back("cdf_" + band_token + suffix, cdf_to_csv(cdf.per_link));
    }
  }

  finish_run(args.out_dir, sc, args, files, started);
  return kExitOk;
}

int cmd_plan(const CommonArgs& args, double target_gbps, int n_max) {
  const auto started = std::chrono::steady_clock::now();
  if (target_gbps < 0) throw ConfigError("target_gbps", "must be >= 0");
  if (n_max < 1) throw ConfigError("n_max", "must be >= 1");
  const Scenario sc = prepare_scenario(args);

  const PlanResult plan = plan_min_nodes(sc.disaster_center_arc_km, target_gbps * 1e9, n_max,
                                         sc.link(Band::Fso), sc.atmosphere);

  nlohmann::json j = {{"total_distance_km", sc.disaster_center_arc_km},
                      {"target_gbps", target_gbps},
                      {"n_max", n_max},
                      {"feasible", plan.feasible}};
  if (plan.feasible) {
    j["n_haps"] = plan.n_haps;
    j["achieved_gbps"] = plan.achieved_bps / 1e9;
    std::cout << plan.n_haps << "\n";
  } else {
    std::cout << "INFEASIBLE\n";
  }

  finish_run(args.out_dir, sc, args, {{"plan.json", j.dump(2) + "\n"}}, started);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratolink: HAPS emergency-network link and capacity simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    args.command_line = os.str();
  }

  std::uint64_t seed_value = 0;
  int trials_value = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--scenario", args.scenario_path, "scenario JSON file")->required();
    auto* out = cmd->add_option("--out", args.out_dir, "output directory");
    if (needs_out) out->required();
    cmd->add_option("--seed", seed_value, "master RNG seed (overrides scenario)");
    cmd->add_option("--trials", trials_value, "Monte Carlo trials (overrides scenario)");
    cmd->add_option("--workers", args.workers, "worker threads (default: all processors)");
  };

  CLI::App* backhaul = app.add_subcommand("backhaul", "end-to-end backhaul capacity sweep");
  add_common(backhaul, true);

  std::string band_token, weather_token;
  CLI::App* access = app.add_subcommand("access", "Monte Carlo access/fronthaul rate CDFs");
  add_common(access, true);
  access->add_option("--band", band_token, "fso|thz|ka|s|hybrid")->required();
  access->add_option("--weather", weather_token, "clear|cloud|fog|rain")->required();

  double target_gbps = 0.0;
  int n_max = 8;
  CLI::App* plan = app.add_subcommand("plan", "minimal HAPS count for a target rate");
  add_common(plan, true);
  plan->add_option("--target-gbps", target_gbps, "required end-to-end rate")->required();
  plan->add_option("--n-max", n_max, "largest chain size to consider");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* active = backhaul->parsed() ? backhaul : access->parsed() ? access : plan;
  if (active->count("--seed") > 0) args.seed_flag = seed_value;
  if (active->count("--trials") > 0) args.trials_flag = trials_value;

  try {
    if (backhaul->parsed()) return cmd_backhaul(args);
    if (access->parsed()) return cmd_access(args, band_token, weather_token);
    if (plan->parsed()) return cmd_plan(args, target_gbps, n_max);
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
