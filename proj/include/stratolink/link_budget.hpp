#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "stratolink/atmosphere.hpp"
#include "stratolink/geometry.hpp"
#include "stratolink/scenario.hpp"
#include "stratolink/units.hpp"

namespace stratolink {

/// Outcome of one link evaluation.
struct LinkBudgetResult {
  Band band = Band::Fso;
  double rx_power_dBm = 0.0;
  double snr_dB = 0.0;
  double capacity_bps = 0.0;
  double path_length_km = 0.0;
  double tropospheric_segment_km = 0.0;
  double attenuation_dB = 0.0;
  bool los_blocked = false;  // ray dips below the surface
};

/// Friis free-space path loss, dB.
inline double fspl_dB(double freq_GHz, double distance_km) {
  if (!(distance_km > 0)) throw DomainError("fspl_dB: distance must be > 0");
  if (!(freq_GHz > 0)) throw DomainError("fspl_dB: frequency must be > 0");
  return 20.0 *
         std::log10(4.0 * kPi * (distance_km * 1000.0) * (freq_GHz * 1e9) / kSpeedOfLightMps);
}

inline double shannon_capacity(double bandwidth_Hz, double snr_linear) {
  return bandwidth_Hz * std::log2(1.0 + snr_linear);
}

/// Multiplicative loss chain of an optical link.
struct FsoLossBreakdown {
  double geometric_capture = 1.0;  // telescope area over beam footprint, clamped at 1
  double pointing_loss = 1.0;      // Gaussian-beam offset at the combined jitter
  double optics_efficiency = 1.0;  // tx * rx optics
  double atmospheric_dB = 0.0;
};

inline FsoLossBreakdown fso_loss_breakdown(const Node& a, const Node& b, const LinkSpec& spec,
                                           const WeatherState& weather) {
  const double d_m = slant_range(a, b) * 1000.0;
  if (!(d_m > 0)) throw DomainError("fso_budget: zero-length link");

  FsoLossBreakdown r;
  const double divergence_rad = spec.full_divergence_urad * 1e-6;
  const double beam_ratio = spec.rx_telescope_diameter_m / (divergence_rad * d_m);
  r.geometric_capture = std::min(1.0, beam_ratio * beam_ratio);

  const double sigma_tot_rad = 1e-6 * std::hypot(spec.pointing_error_tx_urad,
                                                 spec.pointing_error_rx_urad);
  const double theta_half = divergence_rad / 2.0;
  const double ratio = sigma_tot_rad / theta_half;
  r.pointing_loss = std::exp(-2.0 * ratio * ratio);

  r.optics_efficiency = spec.tx_efficiency * spec.rx_efficiency;
  r.atmospheric_dB = path_attenuation(a, b, Band::Fso, weather).total_dB;
  return r;
}

/// Direct-detection optical budget: received optical power through the loss
/// chain, electrical SNR from responsivity and noise current density over
/// the electrical bandwidth.
inline LinkBudgetResult fso_budget(const Node& a, const Node& b, const LinkSpec& spec,
                                   const WeatherState& weather) {
  const GeoRay ray = ray_clearance(a, b);
  if (!(ray.chord_km > 0)) throw DomainError("fso_budget: zero-length link");

  LinkBudgetResult res;
  res.band = Band::Fso;
  res.path_length_km = ray.chord_km;
  res.tropospheric_segment_km = tropospheric_length(a, b, weather.model.weather_ceiling_km);

  if (ray.blocked()) {
    res.los_blocked = true;
    res.rx_power_dBm = -std::numeric_limits<double>::infinity();
    res.snr_dB = -std::numeric_limits<double>::infinity();
    res.capacity_bps = 0.0;
    res.attenuation_dB = 0.0;
    return res;
  }

  const FsoLossBreakdown loss = fso_loss_breakdown(a, b, spec, weather);
  res.attenuation_dB = loss.atmospheric_dB;

  const double p_rx_w = dbm_to_watts(spec.tx_power_dBm) * loss.optics_efficiency *
                        loss.geometric_capture * loss.pointing_loss *
                        db_to_linear(-loss.atmospheric_dB);
  const double signal_current = spec.responsivity_A_per_W * p_rx_w;
  const double noise_power = spec.noise_current_density_A_per_sqrtHz *
                             spec.noise_current_density_A_per_sqrtHz * spec.bandwidth_Hz;
  const double snr = signal_current * signal_current / noise_power;

  res.rx_power_dBm = watts_to_dbm(p_rx_w);
  res.snr_dB = linear_to_db(snr);
  res.capacity_bps = shannon_capacity(spec.bandwidth_Hz, snr);
  return res;
}

/// RF budget (THz / Ka / S): Friis loss plus layered attenuation against a
/// thermal noise floor.
inline LinkBudgetResult rf_budget(const Node& a, const Node& b, const LinkSpec& spec,
                                  const WeatherState& weather) {
  const GeoRay ray = ray_clearance(a, b);
  if (!(ray.chord_km > 0)) throw DomainError("rf_budget: zero-length link");

  LinkBudgetResult res;
  res.band = spec.band;
  res.path_length_km = ray.chord_km;
  res.tropospheric_segment_km = tropospheric_length(a, b, weather.model.weather_ceiling_km);

  if (ray.blocked()) {
    res.los_blocked = true;
    res.rx_power_dBm = -std::numeric_limits<double>::infinity();
    res.snr_dB = -std::numeric_limits<double>::infinity();
    res.capacity_bps = 0.0;
    res.attenuation_dB = 0.0;
    return res;
  }

  const PathAttenuation atm = path_attenuation(a, b, spec.band, weather);
  res.attenuation_dB = atm.total_dB;

  res.rx_power_dBm = spec.tx_power_dBm + spec.tx_gain_dBi + spec.rx_gain_dBi -
                     fspl_dB(spec.frequency_GHz, ray.chord_km) - atm.total_dB;
  const double noise_dBm = spec.noise_psd_dBm_per_Hz + 10.0 * std::log10(spec.bandwidth_Hz);
  res.snr_dB = res.rx_power_dBm - noise_dBm;
  res.capacity_bps = shannon_capacity(spec.bandwidth_Hz, db_to_linear(res.snr_dB));
  return res;
}

/// Evaluate the band's budget, optical or RF.
inline LinkBudgetResult link_budget(const Node& a, const Node& b, const LinkSpec& spec,
                                    const WeatherState& weather) {
  return spec.band == Band::Fso ? fso_budget(a, b, spec, weather)
                                : rf_budget(a, b, spec, weather);
}

/// Selection combining at the rate level: the hybrid link carries whichever
/// constituent currently offers the higher rate.
inline double hybrid_rate(const LinkBudgetResult& fso, const LinkBudgetResult& thz) {
  return std::max(fso.capacity_bps, thz.capacity_bps);
}

}  // namespace stratolink
