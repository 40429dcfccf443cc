#pragma once

#include <cmath>
#include <string>

#include "stratolink/geometry.hpp"
#include "stratolink/scenario.hpp"

namespace stratolink {

/// Path attenuation split into its clear-sky gaseous and weather-layer parts.
struct PathAttenuation {
  Band band = Band::Fso;
  Condition condition = Condition::Clear;
  double tropospheric_km = 0.0;  // chord length below the weather ceiling
  double gaseous_dB = 0.0;
  double weather_dB = 0.0;
  double total_dB = 0.0;
};

/// Altitude slab occupied by the condition. Clear occupies no slab; the fog
/// slab tops out at the configured fog ceiling.
inline AltitudeLayer condition_layer(Condition c, const AtmosphereModel& model) {
  switch (c) {
    case Condition::Clear: return AltitudeLayer{0.0, 0.0};
    case Condition::Cloud: return model.cloud_layer_km;
    case Condition::Fog: return AltitudeLayer{0.0, model.fog_ceiling_km};
    case Condition::Rain: return model.rain_layer_km;
  }
  return AltitudeLayer{0.0, 0.0};
}

/// Layered Beer-Lambert attenuation along the straight path a->b.
/// Stratospheric segments contribute nothing; the gaseous term applies below
/// the weather ceiling and the condition's specific attenuation inside its
/// slab.
inline PathAttenuation path_attenuation(const Node& a, const Node& b, Band band,
                                        const WeatherState& weather) {
  const AtmosphereModel& m = weather.model;
  const double g = m.gamma(band, weather.condition);
  if (!(g >= 0) || !std::isfinite(g))
    throw ConfigError(std::string("atmosphere.gamma_db_per_km.") + band_name(band) + "." +
                          condition_name(weather.condition),
                      "specific attenuation is missing or invalid");

  PathAttenuation r;
  r.band = band;
  r.condition = weather.condition;
  r.tropospheric_km = tropospheric_length(a, b, m.weather_ceiling_km);
  r.gaseous_dB = m.gaseous(band) * r.tropospheric_km;
  r.weather_dB = g * layer_length(a, b, condition_layer(weather.condition, m));
  r.total_dB = r.gaseous_dB + r.weather_dB;
  return r;
}

}  // namespace stratolink
