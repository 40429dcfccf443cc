#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stratolink/errors.hpp"
#include "stratolink/scenario.hpp"

namespace stratolink {

namespace detail {

/// Wrapper over a JSON object that tracks consumed keys; any key left over
/// is reported as unknown rather than silently ignored.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected a JSON object");
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const nlohmann::json* child(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    consumed_.insert(key);
    return &j_.at(key);
  }

  void opt_double(const std::string& key, double& out) {
    if (const nlohmann::json* v = child(key)) {
      if (!v->is_number()) throw ConfigError(key_path(key), "expected a number");
      out = v->get<double>();
    }
  }

  void opt_int(const std::string& key, int& out) {
    if (const nlohmann::json* v = child(key)) {
      if (!v->is_number_integer()) throw ConfigError(key_path(key), "expected an integer");
      out = v->get<int>();
    }
  }

  void opt_u64(const std::string& key, std::uint64_t& out, bool* present = nullptr) {
    if (const nlohmann::json* v = child(key)) {
      if (!(v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0)))
        throw ConfigError(key_path(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
      if (present) *present = true;
    }
  }

  void opt_i64(const std::string& key, std::int64_t& out) {
    if (const nlohmann::json* v = child(key)) {
      if (!v->is_number_integer() && !v->is_number_unsigned())
        throw ConfigError(key_path(key), "expected an integer");
      out = v->get<std::int64_t>();
    }
  }

  void opt_string(const std::string& key, std::string& out) {
    if (const nlohmann::json* v = child(key)) {
      if (!v->is_string()) throw ConfigError(key_path(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  /// Throws on any key that was never consumed.
  void done() const {
    for (const auto& item : j_.items()) {
      if (!consumed_.count(item.key()))
        throw ConfigError(key_path(item.key()), "unknown key");
    }
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> consumed_;
};

inline NodeKind parse_node_kind(const std::string& token, const std::string& path) {
  for (NodeKind k : {NodeKind::GroundStation, NodeKind::HapsRelay, NodeKind::HapsEndpoint,
                     NodeKind::HandheldUser, NodeKind::VsatTerminal, NodeKind::Uav,
                     NodeKind::TerrestrialBs}) {
    if (token == node_kind_name(k)) return k;
  }
  throw ConfigError(path, "unknown node kind '" + token + "'");
}

inline Condition parse_condition(const std::string& token, const std::string& path) {
  for (Condition c : kAllConditions)
    if (token == condition_name(c)) return c;
  throw ConfigError(path, "unknown weather condition '" + token +
                              "' (expected clear|cloud|fog|rain)");
}

inline AltitudeLayer parse_layer(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path, "expected [lo_km, hi_km]");
  return AltitudeLayer{j[0].get<double>(), j[1].get<double>()};
}

inline Node parse_node(const nlohmann::json& j, const std::string& path) {
  StrictObject obj(j, path);
  Node n;
  obj.opt_string("id", n.id);
  if (n.id.empty()) throw ConfigError(path + ".id", "required");
  std::string kind_token;
  obj.opt_string("kind", kind_token);
  if (kind_token.empty()) throw ConfigError(path + ".kind", "required");
  n.kind = parse_node_kind(kind_token, path + ".kind");
  if (!obj.has("ground_arc_km")) throw ConfigError(path + ".ground_arc_km", "required");
  obj.opt_double("ground_arc_km", n.ground_arc_km);
  n.altitude_km = default_altitude_km(n.kind);
  obj.opt_double("altitude_km", n.altitude_km);
  obj.opt_double("cross_range_km", n.cross_range_km);
  obj.done();
  return n;
}

inline void parse_linkspec(const nlohmann::json& j, const std::string& path, LinkSpec& s) {
  StrictObject obj(j, path);
  obj.opt_double("tx_power_dbm", s.tx_power_dBm);
  obj.opt_double("bandwidth_hz", s.bandwidth_Hz);
  if (s.band == Band::Fso) {
    obj.opt_double("wavelength_nm", s.wavelength_nm);
    obj.opt_double("tx_efficiency", s.tx_efficiency);
    obj.opt_double("rx_efficiency", s.rx_efficiency);
    obj.opt_double("rx_telescope_diameter_m", s.rx_telescope_diameter_m);
    obj.opt_double("pointing_error_tx_urad", s.pointing_error_tx_urad);
    obj.opt_double("pointing_error_rx_urad", s.pointing_error_rx_urad);
    obj.opt_double("full_divergence_urad", s.full_divergence_urad);
    obj.opt_double("responsivity_a_per_w", s.responsivity_A_per_W);
    obj.opt_double("noise_current_density_a_per_sqrthz", s.noise_current_density_A_per_sqrtHz);
  } else {
    obj.opt_double("frequency_ghz", s.frequency_GHz);
    obj.opt_double("tx_gain_dbi", s.tx_gain_dBi);
    obj.opt_double("rx_gain_dbi", s.rx_gain_dBi);
    obj.opt_double("noise_psd_dbm_per_hz", s.noise_psd_dBm_per_Hz);
  }
  obj.done();
}

inline void parse_atmosphere(const nlohmann::json& j, const std::string& path,
                             AtmosphereModel& m) {
  StrictObject obj(j, path);
  obj.opt_double("weather_ceiling_km", m.weather_ceiling_km);
  obj.opt_double("fog_ceiling_km", m.fog_ceiling_km);
  if (const nlohmann::json* layers = obj.child("layers_km")) {
    StrictObject lo(*layers, path + ".layers_km");
    if (const nlohmann::json* v = lo.child("cloud"))
      m.cloud_layer_km = parse_layer(*v, path + ".layers_km.cloud");
    if (const nlohmann::json* v = lo.child("rain"))
      m.rain_layer_km = parse_layer(*v, path + ".layers_km.rain");
    lo.done();
  }
  if (const nlohmann::json* gamma = obj.child("gamma_db_per_km")) {
    StrictObject go(*gamma, path + ".gamma_db_per_km");
    for (Band b : kAllBands) {
      if (const nlohmann::json* bj = go.child(band_name(b))) {
        StrictObject bo(*bj, path + ".gamma_db_per_km." + band_name(b));
        for (Condition c : {Condition::Cloud, Condition::Fog, Condition::Rain}) {
          double v = m.gamma(b, c);
          bo.opt_double(condition_name(c), v);
          m.gamma(b, c) = v;
        }
        bo.done();
      }
    }
    go.done();
  }
  if (const nlohmann::json* gas = obj.child("clear_sky_gaseous_db_per_km")) {
    StrictObject go(*gas, path + ".clear_sky_gaseous_db_per_km");
    for (Band b : kAllBands) {
      double v = m.gaseous(b);
      go.opt_double(band_name(b), v);
      m.gaseous(b) = v;
    }
    go.done();
  }
  obj.done();
}

}  // namespace detail

/// Parse a scenario document; omitted fields keep their built-in defaults.
/// Unknown keys are errors, not warnings.
inline Scenario parse_scenario(const nlohmann::json& j) {
  using detail::StrictObject;
  Scenario sc = default_scenario();
  StrictObject obj(j, "");

  obj.opt_int("spec_version", sc.spec_version);
  if (sc.spec_version != 1)
    throw ConfigError("spec_version", "unsupported version (expected 1)");

  if (const nlohmann::json* chain = obj.child("chain")) {
    if (!chain->is_array()) throw ConfigError("chain", "expected an array of nodes");
    sc.chain.clear();
    for (std::size_t i = 0; i < chain->size(); ++i)
      sc.chain.push_back(detail::parse_node((*chain)[i], "chain[" + std::to_string(i) + "]"));
  }

  obj.opt_double("disaster_center_arc_km", sc.disaster_center_arc_km);
  obj.opt_double("disaster_radius_km", sc.disaster_radius_km);

  if (const nlohmann::json* pops = obj.child("populations")) {
    StrictObject po(*pops, "populations");
    po.opt_i64("handheld", sc.populations.handheld);
    po.opt_i64("vsat", sc.populations.vsat);
    po.opt_i64("uav", sc.populations.uav);
    po.opt_i64("terrestrial_bs", sc.populations.terrestrial_bs);
    po.done();
  }
  if (const nlohmann::json* af = obj.child("activity_factor")) {
    StrictObject ao(*af, "activity_factor");
    ao.opt_double("handheld", sc.activity_factor.handheld);
    ao.opt_double("vsat", sc.activity_factor.vsat);
    ao.opt_double("uav", sc.activity_factor.uav);
    ao.opt_double("terrestrial_bs", sc.activity_factor.terrestrial_bs);
    ao.done();
  }

  std::string token;
  token = condition_name(sc.weather_disaster);
  obj.opt_string("weather_disaster", token);
  sc.weather_disaster = detail::parse_condition(token, "weather_disaster");
  token = condition_name(sc.weather_central);
  obj.opt_string("weather_central", token);
  sc.weather_central = detail::parse_condition(token, "weather_central");

  if (const nlohmann::json* atm = obj.child("atmosphere"))
    detail::parse_atmosphere(*atm, "atmosphere", sc.atmosphere);

  if (const nlohmann::json* links = obj.child("links")) {
    StrictObject lo(*links, "links");
    for (Band b : kAllBands) {
      if (const nlohmann::json* bj = lo.child(band_name(b)))
        detail::parse_linkspec(*bj, std::string("links.") + band_name(b), sc.link(b));
    }
    lo.done();
  }

  obj.opt_u64("rng_seed", sc.rng_seed, &sc.rng_seed_from_config);
  obj.opt_int("trials", sc.trials);

  if (const nlohmann::json* sweep = obj.child("sweep")) {
    StrictObject so(*sweep, "sweep");
    if (const nlohmann::json* d = so.child("distances_km")) {
      if (!d->is_array()) throw ConfigError("sweep.distances_km", "expected an array");
      sc.sweep.distances_km.clear();
      for (std::size_t i = 0; i < d->size(); ++i) {
        if (!(*d)[i].is_number())
          throw ConfigError("sweep.distances_km[" + std::to_string(i) + "]",
                            "expected a number");
        sc.sweep.distances_km.push_back((*d)[i].get<double>());
      }
    }
    if (const nlohmann::json* n = so.child("n_haps")) {
      if (!n->is_array()) throw ConfigError("sweep.n_haps", "expected an array");
      sc.sweep.n_haps.clear();
      for (std::size_t i = 0; i < n->size(); ++i) {
        if (!(*n)[i].is_number_integer())
          throw ConfigError("sweep.n_haps[" + std::to_string(i) + "]", "expected an integer");
        sc.sweep.n_haps.push_back((*n)[i].get<int>());
      }
    }
    so.done();
  }

  obj.done();
  validate(sc);
  return sc;
}

/// Canonical full-form serialization; parse_scenario(serialize(sc)) yields an
/// identical scenario.
inline nlohmann::json serialize(const Scenario& sc) {
  nlohmann::json j;
  j["spec_version"] = sc.spec_version;

  nlohmann::json chain = nlohmann::json::array();
  for (const Node& n : sc.chain) {
    chain.push_back({{"id", n.id},
                     {"kind", node_kind_name(n.kind)},
                     {"ground_arc_km", n.ground_arc_km},
                     {"altitude_km", n.altitude_km},
                     {"cross_range_km", n.cross_range_km}});
  }
  j["chain"] = chain;

  j["disaster_center_arc_km"] = sc.disaster_center_arc_km;
  j["disaster_radius_km"] = sc.disaster_radius_km;
  j["populations"] = {{"handheld", sc.populations.handheld},
                      {"vsat", sc.populations.vsat},
                      {"uav", sc.populations.uav},
                      {"terrestrial_bs", sc.populations.terrestrial_bs}};
  j["activity_factor"] = {{"handheld", sc.activity_factor.handheld},
                          {"vsat", sc.activity_factor.vsat},
                          {"uav", sc.activity_factor.uav},
                          {"terrestrial_bs", sc.activity_factor.terrestrial_bs}};
  j["weather_disaster"] = condition_name(sc.weather_disaster);
  j["weather_central"] = condition_name(sc.weather_central);

  nlohmann::json gamma;
  for (Band b : kAllBands) {
    gamma[band_name(b)] = {{"cloud", sc.atmosphere.gamma(b, Condition::Cloud)},
                           {"fog", sc.atmosphere.gamma(b, Condition::Fog)},
                           {"rain", sc.atmosphere.gamma(b, Condition::Rain)}};
  }
  nlohmann::json gaseous;
  for (Band b : kAllBands) gaseous[band_name(b)] = sc.atmosphere.gaseous(b);
  j["atmosphere"] = {
      {"weather_ceiling_km", sc.atmosphere.weather_ceiling_km},
      {"fog_ceiling_km", sc.atmosphere.fog_ceiling_km},
      {"layers_km",
       {{"cloud", {sc.atmosphere.cloud_layer_km.lo_km, sc.atmosphere.cloud_layer_km.hi_km}},
        {"rain", {sc.atmosphere.rain_layer_km.lo_km, sc.atmosphere.rain_layer_km.hi_km}}}},
      {"gamma_db_per_km", gamma},
      {"clear_sky_gaseous_db_per_km", gaseous}};

  nlohmann::json links;
  for (Band b : kAllBands) {
    const LinkSpec& s = sc.link(b);
    nlohmann::json lj = {{"tx_power_dbm", s.tx_power_dBm}, {"bandwidth_hz", s.bandwidth_Hz}};
    if (b == Band::Fso) {
      lj["wavelength_nm"] = s.wavelength_nm;
      lj["tx_efficiency"] = s.tx_efficiency;
      lj["rx_efficiency"] = s.rx_efficiency;
      lj["rx_telescope_diameter_m"] = s.rx_telescope_diameter_m;
      lj["pointing_error_tx_urad"] = s.pointing_error_tx_urad;
      lj["pointing_error_rx_urad"] = s.pointing_error_rx_urad;
      lj["full_divergence_urad"] = s.full_divergence_urad;
      lj["responsivity_a_per_w"] = s.responsivity_A_per_W;
      lj["noise_current_density_a_per_sqrthz"] = s.noise_current_density_A_per_sqrtHz;
    } else {
      lj["frequency_ghz"] = s.frequency_GHz;
      lj["tx_gain_dbi"] = s.tx_gain_dBi;
      lj["rx_gain_dbi"] = s.rx_gain_dBi;
      lj["noise_psd_dbm_per_hz"] = s.noise_psd_dBm_per_Hz;
    }
    links[band_name(b)] = lj;
  }
  j["links"] = links;

  j["rng_seed"] = sc.rng_seed;
  j["trials"] = sc.trials;
  j["sweep"] = {{"distances_km", sc.sweep.distances_km}, {"n_haps", sc.sweep.n_haps}};
  return j;
}

inline bool scenario_equal(const Scenario& a, const Scenario& b) {
  return serialize(a) == serialize(b);
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stable content hash of a scenario (canonical serialization).
inline std::string scenario_hash(const Scenario& sc) {
  const std::uint64_t h = fnv1a64(serialize(sc).dump());
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

/// Load, parse, and validate a scenario file.
inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario", "cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("scenario", std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return parse_scenario(j);
}

}  // namespace stratolink
