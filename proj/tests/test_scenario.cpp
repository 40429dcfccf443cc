#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "stratolink/network.hpp"
#include "stratolink/scenario.hpp"
#include "stratolink/scenario_io.hpp"

using namespace stratolink;
using nlohmann::json;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("default link specs carry the published parameter table") {
  const LinkSpec fso = default_linkspec(Band::Fso);
  CHECK(fso.wavelength_nm == 1550.0);
  CHECK(fso.tx_power_dBm == 17.5);
  CHECK(fso.tx_efficiency == 0.8);
  CHECK(fso.rx_efficiency == 0.8);
  CHECK(fso.rx_telescope_diameter_m == 0.08);
  CHECK(fso.pointing_error_tx_urad == 1.0);
  CHECK(fso.pointing_error_rx_urad == 1.0);
  CHECK(fso.full_divergence_urad == 15.0);
  CHECK(fso.bandwidth_Hz == 50e9);
  CHECK(fso.responsivity_A_per_W == 0.8);
  CHECK(fso.noise_current_density_A_per_sqrtHz == 1e-11);

  const LinkSpec thz = default_linkspec(Band::Thz);
  CHECK(thz.frequency_GHz == 144.0);
  CHECK(thz.tx_power_dBm == 17.5);
  CHECK(thz.bandwidth_Hz == 30e9);
  CHECK(thz.tx_gain_dBi == 55.0);
  CHECK(thz.rx_gain_dBi == 55.0);
  CHECK(thz.noise_psd_dBm_per_Hz == -174.0);

  const LinkSpec ka = default_linkspec(Band::KaBand);
  CHECK(ka.frequency_GHz == 30.0);
  CHECK(ka.tx_power_dBm == 43.2);
  CHECK(ka.bandwidth_Hz == 400e6);
  CHECK(ka.tx_gain_dBi == 13.8);
  CHECK(ka.rx_gain_dBi == 39.7);
  CHECK(ka.noise_psd_dBm_per_Hz == -174.0);

  const LinkSpec s = default_linkspec(Band::SBand);
  CHECK(s.frequency_GHz == 2.4);
  CHECK(s.tx_power_dBm == 43.2);
  CHECK(s.bandwidth_Hz == 100e6);
  CHECK(s.tx_gain_dBi == 13.8);
  CHECK(s.rx_gain_dBi == 0.0);
}

TEST_CASE("defaults are complete and valid") {
  const Scenario sc = default_scenario();
  CHECK_NOTHROW(validate(sc));
  CHECK(sc.disaster_radius_km == 50.0);
  CHECK(sc.rng_seed == 0);
  CHECK(sc.populations.handheld == 1'000'000);
  CHECK(sc.populations.vsat == 1'000);
  CHECK(sc.weather_central == Condition::Clear);
}

TEST_CASE("default chain matches place_chain(400, 3)") {
  const std::vector<Node> placed = place_chain(400.0, 3);
  const std::vector<Node> def = default_chain();
  REQUIRE(def.size() == placed.size());
  for (std::size_t i = 0; i < def.size(); ++i) {
    CHECK(def[i].kind == placed[i].kind);
    CHECK(def[i].ground_arc_km == placed[i].ground_arc_km);
    CHECK(def[i].altitude_km == placed[i].altitude_km);
  }
}

TEST_CASE("empty config yields the built-in defaults") {
  const Scenario sc = parse_scenario(json::object());
  CHECK(scenario_equal(sc, default_scenario()));
  CHECK_FALSE(sc.rng_seed_from_config);
}

TEST_CASE("single-field override changes only that field") {
  const Scenario sc = parse_scenario(json{{"links", {{"ka", {{"tx_power_dbm", 40.0}}}}}});
  CHECK(sc.link(Band::KaBand).tx_power_dBm == 40.0);

  Scenario expected = default_scenario();
  expected.link(Band::KaBand).tx_power_dBm = 40.0;
  CHECK(scenario_equal(sc, expected));
}

TEST_CASE("invariant violations name the offending key") {
  try {
    parse_scenario(json{{"disaster_radius_km", -5.0}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("disaster_radius_km"));
  }

  // non-increasing chain arcs
  const json bad_chain = json::parse(R"({
    "chain": [
      {"id": "gs", "kind": "ground_station", "ground_arc_km": 0},
      {"id": "h1", "kind": "haps_relay", "ground_arc_km": 100},
      {"id": "h2", "kind": "haps_endpoint", "ground_arc_km": 80}
    ]})");
  try {
    parse_scenario(bad_chain);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("ground_arc_km"));
  }

  CHECK_THROWS_AS(parse_scenario(json{{"trials", 0}}), ConfigError);
  CHECK_THROWS_AS(parse_scenario(json{{"links", {{"fso", {{"tx_efficiency", 0.0}}}}}}),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(json{{"links", {{"thz", {{"bandwidth_hz", -1.0}}}}}}),
                  ConfigError);
}

TEST_CASE("unknown keys are rejected, not ignored") {
  try {
    parse_scenario(json{{"disaster_radius", 50.0}});  // typo'd key
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("disaster_radius"));
    CHECK_THAT(e.what(), ContainsSubstring("unknown key"));
  }

  try {
    parse_scenario(json{{"links", {{"fso", {{"frequency_ghz", 200.0}}}}}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("links.fso.frequency_ghz"));
  }
}

TEST_CASE("unsupported schema versions are rejected") {
  CHECK_THROWS_AS(parse_scenario(json{{"spec_version", 2}}), ConfigError);
  CHECK(parse_scenario(json{{"spec_version", 1}}).spec_version == 1);
}

TEST_CASE("weather tokens") {
  const Scenario sc = parse_scenario(json{{"weather_disaster", "rain"}});
  CHECK(sc.weather_disaster == Condition::Rain);
  CHECK_THROWS_AS(parse_scenario(json{{"weather_disaster", "snow"}}), ConfigError);
}

TEST_CASE("scenario serialization round trip") {
  json overrides = json::parse(R"({
    "disaster_radius_km": 35.5,
    "weather_disaster": "fog",
    "rng_seed": 1234567890123,
    "trials": 77,
    "populations": {"handheld": 5000, "uav": 17},
    "activity_factor": {"handheld": 0.01},
    "atmosphere": {"gamma_db_per_km": {"thz": {"rain": 12.5}},
                    "layers_km": {"cloud": [0.8, 2.5]}},
    "links": {"fso": {"full_divergence_urad": 20.0}, "s": {"rx_gain_dbi": 3.0}},
    "sweep": {"distances_km": [100.0, 250.0], "n_haps": [2, 4]}
  })");
  const Scenario sc = parse_scenario(overrides);
  CHECK(sc.rng_seed_from_config);

  const Scenario reparsed = parse_scenario(serialize(sc));
  CHECK(scenario_equal(sc, reparsed));
  CHECK(serialize(sc).dump() == serialize(reparsed).dump());
  CHECK(scenario_hash(sc) == scenario_hash(reparsed));
  CHECK(scenario_hash(sc) != scenario_hash(default_scenario()));
}

TEST_CASE("node altitude defaults follow the kind") {
  const json cfg = json::parse(R"({
    "chain": [
      {"id": "gs", "kind": "ground_station", "ground_arc_km": 0},
      {"id": "h1", "kind": "haps_relay", "ground_arc_km": 20},
      {"id": "he", "kind": "haps_endpoint", "ground_arc_km": 300}
    ]})");
  const Scenario sc = parse_scenario(cfg);
  CHECK(sc.chain[0].altitude_km == 0.0);
  CHECK(sc.chain[1].altitude_km == 20.0);
  CHECK(sc.chain[2].altitude_km == 20.0);
}

TEST_CASE("fuzzed valid configs always validate") {
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    json cfg;
    if (unit(gen) < 0.5) cfg["disaster_radius_km"] = 1.0 + 99.0 * unit(gen);
    if (unit(gen) < 0.5) cfg["disaster_center_arc_km"] = 800.0 * unit(gen);
    if (unit(gen) < 0.5) cfg["trials"] = 1 + static_cast<int>(20 * unit(gen));
    if (unit(gen) < 0.5) cfg["rng_seed"] = static_cast<std::uint64_t>(1e12 * unit(gen));
    if (unit(gen) < 0.5)
      cfg["weather_disaster"] = condition_name(kAllConditions[gen() % 4]);
    if (unit(gen) < 0.5)
      cfg["populations"] = {{"handheld", static_cast<std::int64_t>(1e6 * unit(gen))}};
    if (unit(gen) < 0.5)
      cfg["atmosphere"] = {{"gamma_db_per_km", {{"fso", {{"rain", 50.0 * unit(gen)}}}}}};
    if (unit(gen) < 0.5)
      cfg["links"] = {{"s", {{"tx_power_dbm", 60.0 * unit(gen)}}}};

    const Scenario sc = parse_scenario(cfg);
    CHECK_NOTHROW(validate(sc));
    const Scenario reparsed = parse_scenario(serialize(sc));
    CHECK(scenario_equal(sc, reparsed));
  }
}

TEST_CASE("malformed and missing files") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/path/to/scenario.json"), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "stratolink_malformed.json";
  {
    std::ofstream out(path);
    out << "{ this is not json";
  }
  CHECK_THROWS_AS(load_scenario(path.string()), ConfigError);
  std::filesystem::remove(path);
}
