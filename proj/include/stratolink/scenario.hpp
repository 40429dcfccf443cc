#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "stratolink/errors.hpp"

namespace stratolink {

enum class Band { Fso, Thz, KaBand, SBand };
enum class NodeKind {
  GroundStation,
  HapsRelay,
  HapsEndpoint,
  HandheldUser,
  VsatTerminal,
  Uav,
  TerrestrialBs
};
enum class Condition { Clear, Cloud, Fog, Rain };

inline constexpr std::array<Band, 4> kAllBands = {Band::Fso, Band::Thz, Band::KaBand,
                                                  Band::SBand};
inline constexpr std::array<Condition, 4> kAllConditions = {Condition::Clear, Condition::Cloud,
                                                            Condition::Fog, Condition::Rain};

inline const char* band_name(Band b) {
  switch (b) {
    case Band::Fso: return "fso";
    case Band::Thz: return "thz";
    case Band::KaBand: return "ka";
    case Band::SBand: return "s";
  }
  return "?";
}

inline const char* condition_name(Condition c) {
  switch (c) {
    case Condition::Clear: return "clear";
    case Condition::Cloud: return "cloud";
    case Condition::Fog: return "fog";
    case Condition::Rain: return "rain";
  }
  return "?";
}

inline const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::GroundStation: return "ground_station";
    case NodeKind::HapsRelay: return "haps_relay";
    case NodeKind::HapsEndpoint: return "haps_endpoint";
    case NodeKind::HandheldUser: return "handheld";
    case NodeKind::VsatTerminal: return "vsat";
    case NodeKind::Uav: return "uav";
    case NodeKind::TerrestrialBs: return "terrestrial_bs";
  }
  return "?";
}

inline bool is_haps_kind(NodeKind k) {
  return k == NodeKind::HapsRelay || k == NodeKind::HapsEndpoint;
}

inline bool is_ground_kind(NodeKind k) {
  return k == NodeKind::GroundStation || k == NodeKind::HandheldUser ||
         k == NodeKind::VsatTerminal || k == NodeKind::TerrestrialBs;
}

/// A platform somewhere on (or above) the sphere. Positions are expressed as
/// a great-circle arc from the ground station plus an optional perpendicular
/// cross-range offset; chain nodes always have cross_range_km = 0.
struct Node {
  std::string id;
  NodeKind kind = NodeKind::GroundStation;
  double ground_arc_km = 0.0;
  double altitude_km = 0.0;
  double cross_range_km = 0.0;
};

inline double default_altitude_km(NodeKind k) { return is_haps_kind(k) ? 20.0 : 0.0; }

/// Per-band transmitter/receiver/channel parameters. Constructed defaults
/// are the published simulation parameter set for each band; every field is
/// overridable from the scenario file.
struct LinkSpec {
  Band band = Band::Fso;

  double wavelength_nm = 0.0;   // optical carrier (FSO only)
  double frequency_GHz = 0.0;   // RF carrier (THz/Ka/S only)
  double tx_power_dBm = 0.0;
  double bandwidth_Hz = 0.0;
  double tx_gain_dBi = 0.0;     // RF only
  double rx_gain_dBi = 0.0;     // RF only
  double noise_psd_dBm_per_Hz = -174.0;

  // FSO receiver chain
  double tx_efficiency = 0.8;
  double rx_efficiency = 0.8;
  double rx_telescope_diameter_m = 0.08;
  double pointing_error_tx_urad = 1.0;
  double pointing_error_rx_urad = 1.0;
  double full_divergence_urad = 15.0;
  // Direct-detection calibration constants; not part of the published table.
  double responsivity_A_per_W = 0.8;
  double noise_current_density_A_per_sqrtHz = 1e-11;
};

inline LinkSpec default_linkspec(Band band) {
  LinkSpec s;
  s.band = band;
  switch (band) {
    case Band::Fso:
      s.wavelength_nm = 1550.0;
      s.tx_power_dBm = 17.5;
      s.bandwidth_Hz = 50e9;  // electrical bandwidth, calibration default
      break;
    case Band::Thz:
      s.frequency_GHz = 144.0;
      s.tx_power_dBm = 17.5;
      s.bandwidth_Hz = 30e9;
      s.tx_gain_dBi = 55.0;
      s.rx_gain_dBi = 55.0;
      break;
    case Band::KaBand:
      s.frequency_GHz = 30.0;
      s.tx_power_dBm = 43.2;
      s.bandwidth_Hz = 400e6;
      s.tx_gain_dBi = 13.8;
      s.rx_gain_dBi = 39.7;
      break;
    case Band::SBand:
      s.frequency_GHz = 2.4;
      s.tx_power_dBm = 43.2;
      s.bandwidth_Hz = 100e6;
      s.tx_gain_dBi = 13.8;
      s.rx_gain_dBi = 0.0;
      break;
  }
  return s;
}

/// Altitude slab occupied by a weather condition.
struct AltitudeLayer {
  double lo_km = 0.0;
  double hi_km = 0.0;
  bool empty() const { return hi_km <= lo_km; }
  double thickness_km() const { return empty() ? 0.0 : hi_km - lo_km; }
};

/// Layered Beer-Lambert atmosphere: per-band specific attenuations inside
/// each condition's altitude slab plus a clear-sky gaseous term applied
/// below the weather ceiling. All values are calibration defaults and may
/// be overridden from the scenario file.
struct AtmosphereModel {
  double weather_ceiling_km = 10.0;
  double fog_ceiling_km = 0.5;          // fog slab is [0, fog_ceiling_km]
  AltitudeLayer cloud_layer_km{1.0, 3.0};
  AltitudeLayer rain_layer_km{0.0, 4.0};

  // gamma_dB_per_km[band][condition]
  std::array<std::array<double, 4>, 4> gamma_dB_per_km{};
  std::array<double, 4> clear_sky_gaseous_dB_per_km{};

  double gamma(Band b, Condition c) const {
    return gamma_dB_per_km[static_cast<int>(b)][static_cast<int>(c)];
  }
  double& gamma(Band b, Condition c) {
    return gamma_dB_per_km[static_cast<int>(b)][static_cast<int>(c)];
  }
  double gaseous(Band b) const { return clear_sky_gaseous_dB_per_km[static_cast<int>(b)]; }
  double& gaseous(Band b) { return clear_sky_gaseous_dB_per_km[static_cast<int>(b)]; }
};

inline AtmosphereModel default_atmosphere() {
  AtmosphereModel m;
  auto set = [&m](Band b, double cloud, double fog, double rain) {
    m.gamma(b, Condition::Clear) = 0.0;
    m.gamma(b, Condition::Cloud) = cloud;
    m.gamma(b, Condition::Fog) = fog;
    m.gamma(b, Condition::Rain) = rain;
  };
  set(Band::Fso, 30.0, 100.0, 6.0);
  set(Band::Thz, 1.0, 1.0, 10.0);
  set(Band::KaBand, 0.3, 0.3, 3.0);
  set(Band::SBand, 0.0, 0.0, 0.0);
  m.gaseous(Band::Fso) = 0.2;
  m.gaseous(Band::Thz) = 0.5;
  m.gaseous(Band::KaBand) = 0.05;
  m.gaseous(Band::SBand) = 0.0;
  return m;
}

/// Atmospheric condition at one region, bundled with the model parameters
/// needed to evaluate it. Immutable after scenario load.
struct WeatherState {
  Condition condition = Condition::Clear;
  AtmosphereModel model;
};

struct Populations {
  std::int64_t handheld = 1'000'000;
  std::int64_t vsat = 1'000;
  std::int64_t uav = 100;
  std::int64_t terrestrial_bs = 100;

  std::int64_t of(NodeKind k) const {
    switch (k) {
      case NodeKind::HandheldUser: return handheld;
      case NodeKind::VsatTerminal: return vsat;
      case NodeKind::Uav: return uav;
      case NodeKind::TerrestrialBs: return terrestrial_bs;
      default: return 0;
    }
  }
};

/// Fraction of a terminal population simultaneously sharing the access band.
struct ActivityFactors {
  double handheld = 1e-3;
  double vsat = 1.0;
  double uav = 1.0;
  double terrestrial_bs = 1.0;

  double of(NodeKind k) const {
    switch (k) {
      case NodeKind::HandheldUser: return handheld;
      case NodeKind::VsatTerminal: return vsat;
      case NodeKind::Uav: return uav;
      case NodeKind::TerrestrialBs: return terrestrial_bs;
      default: return 1.0;
    }
  }
};

struct SweepAxes {
  std::vector<double> distances_km = {400, 500, 600, 700, 800};
  std::vector<int> n_haps = {3, 4, 5};
};

/// Full experiment description. Immutable after load; safe to share
/// read-only across concurrent workers.
struct Scenario {
  int spec_version = 1;
  std::vector<Node> chain;
  double disaster_center_arc_km = 400.0;
  double disaster_radius_km = 50.0;
  Populations populations;
  ActivityFactors activity_factor;
  Condition weather_disaster = Condition::Clear;
  Condition weather_central = Condition::Clear;
  AtmosphereModel atmosphere = default_atmosphere();
  std::array<LinkSpec, 4> links = {default_linkspec(Band::Fso), default_linkspec(Band::Thz),
                                   default_linkspec(Band::KaBand), default_linkspec(Band::SBand)};
  std::uint64_t rng_seed = 0;
  bool rng_seed_from_config = false;  // whether the file set the seed (for CLI precedence)
  int trials = 10;
  SweepAxes sweep;

  const LinkSpec& link(Band b) const { return links[static_cast<int>(b)]; }
  LinkSpec& link(Band b) { return links[static_cast<int>(b)]; }
  WeatherState disaster_weather() const { return WeatherState{weather_disaster, atmosphere}; }
  WeatherState central_weather() const { return WeatherState{weather_central, atmosphere}; }
};

/// Built-in default chain: ground station plus three HAPS over a 400 km arc,
/// matching place_chain(400, 3).
inline std::vector<Node> default_chain() {
  return {
      Node{"gs", NodeKind::GroundStation, 0.0, 0.0},
      Node{"haps1", NodeKind::HapsRelay, 20.0, 20.0},
      Node{"haps2", NodeKind::HapsRelay, 210.0, 20.0},
      Node{"haps3", NodeKind::HapsEndpoint, 400.0, 20.0},
  };
}

inline Scenario default_scenario() {
  Scenario sc;
  sc.chain = default_chain();
  return sc;
}

namespace detail {

inline void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

inline void validate_linkspec(const LinkSpec& s, const std::string& prefix) {
  check(std::isfinite(s.tx_power_dBm), prefix + ".tx_power_dbm", "must be finite");
  check(std::isfinite(s.tx_gain_dBi) && std::isfinite(s.rx_gain_dBi),
        prefix + ".tx_gain_dbi/rx_gain_dbi", "must be finite");
  check(std::isfinite(s.noise_psd_dBm_per_Hz), prefix + ".noise_psd_dbm_per_hz",
        "must be finite");
  check(s.bandwidth_Hz > 0 && std::isfinite(s.bandwidth_Hz), prefix + ".bandwidth_hz",
        "must be > 0");
  if (s.band == Band::Fso) {
    check(s.wavelength_nm > 0, prefix + ".wavelength_nm", "must be > 0");
    check(s.tx_efficiency > 0 && s.tx_efficiency <= 1, prefix + ".tx_efficiency",
          "must be in (0,1]");
    check(s.rx_efficiency > 0 && s.rx_efficiency <= 1, prefix + ".rx_efficiency",
          "must be in (0,1]");
    check(s.rx_telescope_diameter_m > 0, prefix + ".rx_telescope_diameter_m", "must be > 0");
    check(s.pointing_error_tx_urad >= 0, prefix + ".pointing_error_tx_urad", "must be >= 0");
    check(s.pointing_error_rx_urad >= 0, prefix + ".pointing_error_rx_urad", "must be >= 0");
    check(s.full_divergence_urad > 0, prefix + ".full_divergence_urad", "must be > 0");
    check(s.responsivity_A_per_W > 0, prefix + ".responsivity_a_per_w", "must be > 0");
    check(s.noise_current_density_A_per_sqrtHz > 0,
          prefix + ".noise_current_density_a_per_sqrthz", "must be > 0");
  } else {
    check(s.frequency_GHz > 0, prefix + ".frequency_ghz", "must be > 0");
  }
}

inline void validate_node(const Node& n, const std::string& prefix) {
  check(!n.id.empty(), prefix + ".id", "must be non-empty");
  check(std::isfinite(n.ground_arc_km) && n.ground_arc_km >= 0, prefix + ".ground_arc_km",
        "must be >= 0");
  check(std::isfinite(n.altitude_km) && n.altitude_km >= 0, prefix + ".altitude_km",
        "must be >= 0");
  check(std::isfinite(n.cross_range_km), prefix + ".cross_range_km", "must be finite");
  if (is_ground_kind(n.kind))
    check(n.altitude_km <= 0.5, prefix + ".altitude_km", "ground kinds must be within [0, 0.5]");
  if (n.kind == NodeKind::Uav)
    check(n.altitude_km > 0 && n.altitude_km <= 10, prefix + ".altitude_km",
          "UAV altitude must be within (0, 10]");
}

inline void validate_layer(const AltitudeLayer& l, const std::string& key) {
  check(std::isfinite(l.lo_km) && std::isfinite(l.hi_km), key, "bounds must be finite");
  check(l.lo_km >= 0, key, "lower bound must be >= 0");
  check(l.hi_km > l.lo_km, key, "upper bound must exceed lower bound");
  check(l.hi_km < 20, key, "layer must lie below 20 km");
}

}  // namespace detail

/// Full invariant check; throws ConfigError naming the offending key.
/// Every Scenario returned by load_scenario satisfies this.
inline void validate(const Scenario& sc) {
  using detail::check;
  check(sc.spec_version == 1, "spec_version", "unsupported version (expected 1)");

  check(sc.chain.size() >= 2, "chain", "must contain at least a ground station and one HAPS");
  check(sc.chain.front().kind == NodeKind::GroundStation, "chain[0].kind",
        "chain must start at a ground station");
  check(sc.chain.back().kind == NodeKind::HapsEndpoint, "chain[last].kind",
        "chain must end at an end-point HAPS");
  for (std::size_t i = 0; i < sc.chain.size(); ++i) {
    const std::string prefix = "chain[" + std::to_string(i) + "]";
    detail::validate_node(sc.chain[i], prefix);
    check(sc.chain[i].cross_range_km == 0.0, prefix + ".cross_range_km",
          "chain nodes must lie on the backhaul great circle");
    if (i > 0) {
      check(sc.chain[i].ground_arc_km > sc.chain[i - 1].ground_arc_km,
            prefix + ".ground_arc_km", "chain ground arcs must be strictly increasing");
      check(is_haps_kind(sc.chain[i].kind), prefix + ".kind",
            "nodes after the ground station must be HAPS");
    }
  }

  check(std::isfinite(sc.disaster_center_arc_km) && sc.disaster_center_arc_km >= 0,
        "disaster_center_arc_km", "must be >= 0");
  check(std::isfinite(sc.disaster_radius_km) && sc.disaster_radius_km > 0,
        "disaster_radius_km", "must be > 0");

  check(sc.populations.handheld >= 0, "populations.handheld", "must be >= 0");
  check(sc.populations.vsat >= 0, "populations.vsat", "must be >= 0");
  check(sc.populations.uav >= 0, "populations.uav", "must be >= 0");
  check(sc.populations.terrestrial_bs >= 0, "populations.terrestrial_bs", "must be >= 0");

  auto check_af = [](double v, const char* key) {
    detail::check(std::isfinite(v) && v >= 0 && v <= 1, key, "must be in [0, 1]");
  };
  check_af(sc.activity_factor.handheld, "activity_factor.handheld");
  check_af(sc.activity_factor.vsat, "activity_factor.vsat");
  check_af(sc.activity_factor.uav, "activity_factor.uav");
  check_af(sc.activity_factor.terrestrial_bs, "activity_factor.terrestrial_bs");

  const AtmosphereModel& atm = sc.atmosphere;
  check(atm.weather_ceiling_km > 0 && atm.weather_ceiling_km < 20,
        "atmosphere.weather_ceiling_km", "must be in (0, 20)");
  check(atm.fog_ceiling_km > 0 && atm.fog_ceiling_km < 20, "atmosphere.fog_ceiling_km",
        "must be in (0, 20)");
  detail::validate_layer(atm.cloud_layer_km, "atmosphere.layers_km.cloud");
  detail::validate_layer(atm.rain_layer_km, "atmosphere.layers_km.rain");
  for (Band b : kAllBands) {
    for (Condition c : kAllConditions) {
      std::string key = std::string("atmosphere.gamma_db_per_km.") + band_name(b) + "." +
                        condition_name(c);
      check(std::isfinite(atm.gamma(b, c)) && atm.gamma(b, c) >= 0, key, "must be >= 0");
    }
    std::string key = std::string("atmosphere.clear_sky_gaseous_db_per_km.") + band_name(b);
    check(std::isfinite(atm.gaseous(b)) && atm.gaseous(b) >= 0, key, "must be >= 0");
  }

  for (Band b : kAllBands) {
    detail::validate_linkspec(sc.link(b), std::string("links.") + band_name(b));
    check(sc.link(b).band == b, std::string("links.") + band_name(b), "band tag mismatch");
  }

  check(sc.trials >= 1, "trials", "must be >= 1");
  for (std::size_t i = 0; i < sc.sweep.distances_km.size(); ++i)
    check(sc.sweep.distances_km[i] > 0,
          "sweep.distances_km[" + std::to_string(i) + "]", "must be > 0");
  for (std::size_t i = 0; i < sc.sweep.n_haps.size(); ++i)
    check(sc.sweep.n_haps[i] >= 1, "sweep.n_haps[" + std::to_string(i) + "]", "must be >= 1");
}

}  // namespace stratolink
