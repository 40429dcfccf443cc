#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "stratolink/link_budget.hpp"
#include "stratolink/rng.hpp"
#include "stratolink/scenario.hpp"

namespace stratolink {

/// End-to-end result for one backhaul chain; the achievable rate is the
/// bottleneck (minimum) hop capacity.
struct ChainResult {
  int n_haps = 0;
  double total_distance_km = 0.0;
  std::vector<LinkBudgetResult> per_hop;  // ground->H1, H1->H2, ..., ->endpoint
  double end_to_end_bps = 0.0;
  int bottleneck_hop = 0;
};

/// Ground station at arc 0, first HAPS near-overhead (20 km arc by default,
/// closer when the span is short), remaining HAPS equally spaced so the last
/// sits at total_distance. All HAPS at 20 km altitude.
inline std::vector<Node> place_chain(double total_distance_km, int n_haps) {
  if (n_haps < 1) throw DomainError("place_chain: n_haps must be >= 1");
  if (!(total_distance_km > 0)) throw DomainError("place_chain: total_distance must be > 0");

  std::vector<Node> chain;
  chain.reserve(static_cast<std::size_t>(n_haps) + 1);
  chain.push_back(Node{"gs", NodeKind::GroundStation, 0.0, 0.0});

  std::vector<double> arcs;
  if (n_haps == 1) {
    arcs.push_back(total_distance_km);
  } else {
    const double first = std::min(20.0, total_distance_km / n_haps);
    const double step = (total_distance_km - first) / (n_haps - 1);
    for (int i = 0; i < n_haps; ++i) arcs.push_back(first + step * i);
  }
  for (int i = 0; i < n_haps; ++i) {
    const bool last = (i == n_haps - 1);
    chain.push_back(Node{"haps" + std::to_string(i + 1),
                         last ? NodeKind::HapsEndpoint : NodeKind::HapsRelay, arcs[i], 20.0});
  }
  return chain;
}

/// FSO capacity of every hop and the bottleneck rate. The ground hop sees the
/// central region's weather; inter-HAPS hops are stratospheric unless the ray
/// dips below the weather ceiling, in which case the weather of the nearer
/// region (ground station vs. chain endpoint) applies over the dip.
inline ChainResult chain_capacity(const std::vector<Node>& chain,
                                  const WeatherState& weather_central,
                                  const WeatherState& weather_disaster,
                                  const LinkSpec& fso_spec) {
  if (chain.size() < 2) throw DomainError("chain_capacity: chain needs at least two nodes");

  ChainResult res;
  res.n_haps = static_cast<int>(chain.size()) - 1;
  res.total_distance_km = chain.back().ground_arc_km;

  const double central_arc = chain.front().ground_arc_km;
  const double disaster_arc = chain.back().ground_arc_km;

  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const Node& a = chain[i];
    const Node& b = chain[i + 1];
    const WeatherState* w = &weather_central;
    if (i > 0) {
      const double mid = 0.5 * (a.ground_arc_km + b.ground_arc_km);
      if (std::abs(mid - disaster_arc) < std::abs(mid - central_arc)) w = &weather_disaster;
    }
    res.per_hop.push_back(fso_budget(a, b, fso_spec, *w));
  }

  res.bottleneck_hop = 0;
  res.end_to_end_bps = res.per_hop[0].capacity_bps;
  for (std::size_t i = 1; i < res.per_hop.size(); ++i) {
    if (res.per_hop[i].capacity_bps < res.end_to_end_bps) {
      res.end_to_end_bps = res.per_hop[i].capacity_bps;
      res.bottleneck_hop = static_cast<int>(i);
    }
  }
  return res;
}

struct SweepRow {
  double distance_km = 0.0;
  int n_haps = 0;
  ChainResult result;
};

/// Cartesian product of the sweep axes, rows sorted by (n_haps, distance).
inline std::vector<SweepRow> sweep_backhaul(std::vector<double> distances_km,
                                            std::vector<int> node_counts,
                                            const WeatherState& weather_central,
                                            const WeatherState& weather_disaster,
                                            const LinkSpec& fso_spec) {
  if (distances_km.empty() || node_counts.empty())
    throw DomainError("sweep_backhaul: sweep axes must be non-empty");
  std::sort(distances_km.begin(), distances_km.end());
  std::sort(node_counts.begin(), node_counts.end());

  std::vector<SweepRow> rows;
  rows.reserve(distances_km.size() * node_counts.size());
  for (int n : node_counts) {
    for (double d : distances_km) {
      SweepRow row;
      row.distance_km = d;
      row.n_haps = n;
      row.result = chain_capacity(place_chain(d, n), weather_central, weather_disaster, fso_spec);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Uniformly distributed points over a ground disk (square-root radius
/// transform, uniform angle); deterministic for a given stream.
inline std::vector<Node> sample_disk(std::int64_t count, double radius_km,
                                     double center_arc_km, RngStream& stream,
                                     NodeKind kind = NodeKind::HandheldUser) {
  if (count < 0) throw DomainError("sample_disk: count must be >= 0");
  if (!(radius_km > 0)) throw DomainError("sample_disk: radius must be > 0");

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const double r = radius_km * std::sqrt(stream.uniform01());
    const double ang = stream.uniform01() * 2.0 * kPi;
    Node n;
    n.kind = kind;
    n.ground_arc_km = center_arc_km + r * std::cos(ang);
    n.cross_range_km = r * std::sin(ang);
    n.altitude_km = 0.0;
    nodes.push_back(n);
  }
  return nodes;
}

/// Empirical CDF of per-terminal rates with its reproducibility metadata.
struct CdfSeries {
  std::vector<double> samples;   // sorted ascending, bps
  std::string series_label;     // band name or "hybrid"
  std::string rate_kind;        // "per_link" or "shared"
  Condition condition = Condition::Clear;
  NodeKind terminal_kind = NodeKind::HandheldUser;
  int trials = 0;
  std::uint64_t seed = 0;

  double cum_prob(std::size_t i) const {
    return static_cast<double>(i + 1) / static_cast<double>(samples.size());
  }

  double median() const {
    const std::size_t n = samples.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  }

  bool valid() const {
    if (samples.empty()) return false;
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (samples[i] < samples[i - 1]) return false;
    double prev = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double p = cum_prob(i);
      if (p < prev || p < 0.0 || p > 1.0) return false;
      prev = p;
    }
    return cum_prob(samples.size() - 1) == 1.0;
  }
};

/// Access-link CDFs for one band/terminal kind: the per-link rates and the
/// rates after the active users share the band (S/Ka only; the optical and
/// THz fronthaul links are dedicated, so shared == per_link there).
struct AccessCdf {
  CdfSeries per_link;
  CdfSeries shared;
  std::int64_t active_users = 1;
};

/// Joint evaluation of the optical and THz fronthaul over identical
/// placements, plus their selection-combined hybrid.
struct HybridAccessCdf {
  CdfSeries fso;
  CdfSeries thz;
  CdfSeries hybrid;
};

namespace detail {

/// Placements for one trial: disk positions plus UAV altitudes. Draw order
/// is fixed (positions first, then altitudes) so every consumer of a trial
/// stream sees identical placements.
inline std::vector<Node> sample_terminals(const Scenario& sc, NodeKind kind,
                                          std::int64_t count, RngStream& stream) {
  std::vector<Node> nodes =
      sample_disk(count, sc.disaster_radius_km, sc.disaster_center_arc_km, stream, kind);
  if (kind == NodeKind::Uav) {
    for (Node& n : nodes) n.altitude_km = 3.0 - stream.uniform01() * 2.9;  // (0.1, 3]
  }
  return nodes;
}

template <typename PerTrial>
inline void run_trials(int trials, int workers, PerTrial&& per_trial) {
  if (workers <= 1 || trials <= 1) {
    for (int t = 0; t < trials; ++t) per_trial(t);
    return;
  }
  const int n_threads = std::min(workers, trials);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) {
    pool.emplace_back([&per_trial, w, trials, n_threads] {
      for (int t = w; t < trials; t += n_threads) per_trial(t);
    });
  }
  for (std::thread& th : pool) th.join();
}

inline CdfSeries make_series(std::vector<double> samples, std::string label,
                             std::string rate_kind, Condition cond, NodeKind kind, int trials,
                             std::uint64_t seed) {
  std::sort(samples.begin(), samples.end());
  CdfSeries s;
  s.samples = std::move(samples);
  s.series_label = std::move(label);
  s.rate_kind = std::move(rate_kind);
  s.condition = cond;
  s.terminal_kind = kind;
  s.trials = trials;
  s.seed = seed;
  return s;
}

inline std::int64_t active_user_count(const Scenario& sc, NodeKind kind) {
  const double active = std::floor(static_cast<double>(sc.populations.of(kind)) *
                                   sc.activity_factor.of(kind));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(active));
}

}  // namespace detail

/// Monte Carlo CDF of access/fronthaul rates from the end-point HAPS to
/// terminals sampled in the disaster disk. S- and Ka-band rates are divided
/// by the active-user share; trials may run concurrently without changing
/// the result.
inline AccessCdf access_cdf(const Scenario& sc, Band band, NodeKind kind, Condition condition,
                            int trials, int workers = 1) {
  if (trials < 1) throw DomainError("access_cdf: trials must be >= 1");
  const std::int64_t population = sc.populations.of(kind);
  if (population <= 0)
    throw DomainError(std::string("access_cdf: population for ") + node_kind_name(kind) +
                      " is zero");
  if (sc.chain.empty() || sc.chain.back().kind != NodeKind::HapsEndpoint)
    throw DomainError("access_cdf: scenario chain has no end-point HAPS");

  const Node endpoint = sc.chain.back();
  const WeatherState weather{condition, sc.atmosphere};
  const LinkSpec& spec = sc.link(band);

  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
  detail::run_trials(trials, workers, [&](int t) {
    RngStream stream = trial_stream(sc.rng_seed, static_cast<std::uint64_t>(t));
    const std::vector<Node> terminals = detail::sample_terminals(sc, kind, population, stream);
    std::vector<double>& rates = per_trial[static_cast<std::size_t>(t)];
    rates.reserve(terminals.size());
    for (const Node& term : terminals)
      rates.push_back(link_budget(endpoint, term, spec, weather).capacity_bps);
  });

  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(trials) * static_cast<std::size_t>(population));
  for (const auto& v : per_trial) pooled.insert(pooled.end(), v.begin(), v.end());

  AccessCdf result;
  const bool shared_band = (band == Band::KaBand || band == Band::SBand);
  result.active_users = shared_band ? detail::active_user_count(sc, kind) : 1;

  result.per_link = detail::make_series(pooled, band_name(band), "per_link", condition, kind,
                                        trials, sc.rng_seed);
  for (double& r : pooled) r /= static_cast<double>(result.active_users);
  result.shared = detail::make_series(std::move(pooled), band_name(band), "shared", condition,
                                      kind, trials, sc.rng_seed);
  return result;
}

/// FSO, THz, and hybrid CDFs over identical placements.
inline HybridAccessCdf access_cdf_hybrid(const Scenario& sc, NodeKind kind, Condition condition,
                                         int trials, int workers = 1) {
  if (trials < 1) throw DomainError("access_cdf: trials must be >= 1");
  const std::int64_t population = sc.populations.of(kind);
  if (population <= 0)
    throw DomainError(std::string("access_cdf: population for ") + node_kind_name(kind) +
                      " is zero");
  if (sc.chain.empty() || sc.chain.back().kind != NodeKind::HapsEndpoint)
    throw DomainError("access_cdf: scenario chain has no end-point HAPS");

  const Node endpoint = sc.chain.back();
  const WeatherState weather{condition, sc.atmosphere};
  const LinkSpec& fso_spec = sc.link(Band::Fso);
  const LinkSpec& thz_spec = sc.link(Band::Thz);

  struct TrialRates {
    std::vector<double> fso, thz, hybrid;
  };
  std::vector<TrialRates> per_trial(static_cast<std::size_t>(trials));
  detail::run_trials(trials, workers, [&](int t) {
    RngStream stream = trial_stream(sc.rng_seed, static_cast<std::uint64_t>(t));
    const std::vector<Node> terminals = detail::sample_terminals(sc, kind, population, stream);
    TrialRates& r = per_trial[static_cast<std::size_t>(t)];
    r.fso.reserve(terminals.size());
    r.thz.reserve(terminals.size());
    r.hybrid.reserve(terminals.size());
    for (const Node& term : terminals) {
      const LinkBudgetResult f = fso_budget(endpoint, term, fso_spec, weather);
      const LinkBudgetResult z = rf_budget(endpoint, term, thz_spec, weather);
      r.fso.push_back(f.capacity_bps);
      r.thz.push_back(z.capacity_bps);
      r.hybrid.push_back(hybrid_rate(f, z));
    }
  });

  std::vector<double> fso_all, thz_all, hyb_all;
  const std::size_t total = static_cast<std::size_t>(trials) * static_cast<std::size_t>(population);
  fso_all.reserve(total);
  thz_all.reserve(total);
  hyb_all.reserve(total);
  for (const TrialRates& r : per_trial) {
    fso_all.insert(fso_all.end(), r.fso.begin(), r.fso.end());
    thz_all.insert(thz_all.end(), r.thz.begin(), r.thz.end());
    hyb_all.insert(hyb_all.end(), r.hybrid.begin(), r.hybrid.end());
  }

  HybridAccessCdf out;
  out.fso = detail::make_series(std::move(fso_all), "fso", "per_link", condition, kind, trials,
                                sc.rng_seed);
  out.thz = detail::make_series(std::move(thz_all), "thz", "per_link", condition, kind, trials,
                                sc.rng_seed);
  out.hybrid = detail::make_series(std::move(hyb_all), "hybrid", "per_link", condition, kind,
                                   trials, sc.rng_seed);
  return out;
}

/// Planner verdict: smallest chain that meets the target, or infeasible.
struct PlanResult {
  bool feasible = false;
  int n_haps = 0;
  double achieved_bps = 0.0;
};

/// Smallest HAPS count in [1, n_max] whose clear-sky chain meets the target
/// rate. Exploits capacity growth in the node count but verifies the
/// boundary explicitly, falling back to a linear scan if the capacity turns
/// out non-monotone over the probed range.
inline PlanResult plan_min_nodes(double total_distance_km, double target_bps, int n_max,
                                 const LinkSpec& fso_spec, const AtmosphereModel& atmosphere) {
  if (!(target_bps >= 0)) throw DomainError("plan_min_nodes: target must be >= 0");
  if (n_max < 1) throw DomainError("plan_min_nodes: n_max must be >= 1");

  const WeatherState clear{Condition::Clear, atmosphere};
  auto capacity = [&](int n) {
    return chain_capacity(place_chain(total_distance_km, n), clear, clear, fso_spec)
        .end_to_end_bps;
  };

  int lo = 1, hi = n_max, best = -1;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    if (capacity(mid) >= target_bps) {
      best = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }

  PlanResult res;
  if (best < 0) return res;

  // explicit boundary verification; binary search assumed monotonicity
  const bool boundary_ok =
      capacity(best) >= target_bps && (best == 1 || capacity(best - 1) < target_bps);
  if (!boundary_ok) {
    best = -1;
    for (int n = 1; n <= n_max; ++n) {
      if (capacity(n) >= target_bps) {
        best = n;
        break;
      }
    }
    if (best < 0) return res;
  }

  res.feasible = true;
  res.n_haps = best;
  res.achieved_bps = capacity(best);
  return res;
}

}  // namespace stratolink
