#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stratolink/geometry.hpp"

using namespace stratolink;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Node at(double arc_km, double alt_km, double cross_km = 0.0) {
  Node n;
  n.id = "n";
  n.kind = alt_km >= 10.0 ? NodeKind::HapsRelay : NodeKind::GroundStation;
  n.ground_arc_km = arc_km;
  n.altitude_km = alt_km;
  n.cross_range_km = cross_km;
  return n;
}

}  // namespace

TEST_CASE("slant_range basics") {
  CHECK_THAT(slant_range(at(7, 0), at(7, 20)), WithinAbs(20.0, 1e-9));
  CHECK(slant_range(at(123, 5), at(123, 5)) == 0.0);

  // frozen spherical-chord oracle value; flat-earth Pythagoras gives 53.8516
  const double s = slant_range(at(0, 0), at(50, 20));
  CHECK_THAT(s, WithinRel(53.924346909, 1e-6));
  CHECK(std::abs(s - 53.85) / 53.85 < 0.002);
}

TEST_CASE("slant_range symmetry and monotonicity") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> arc(0.0, 900.0);
  std::uniform_real_distribution<double> alt(0.0, 25.0);
  for (int i = 0; i < 500; ++i) {
    const Node a = at(arc(gen), alt(gen));
    const Node b = at(arc(gen), alt(gen));
    CHECK(slant_range(a, b) == slant_range(b, a));
    CHECK(slant_range(a, b) >= std::abs(a.altitude_km - b.altitude_km) - 1e-9);
  }

  double prev = 0.0;
  for (double sep = 10.0; sep <= 900.0; sep += 10.0) {
    const double s = slant_range(at(100, 20), at(100 + sep, 20));
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("slant_range matches flat earth within 0.5% under 50 km") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> arc(0.1, 50.0);
  std::uniform_real_distribution<double> alt(0.0, 20.0);
  for (int i = 0; i < 300; ++i) {
    const double a0 = arc(gen), sep = arc(gen);
    const double h0 = alt(gen), h1 = alt(gen);
    const double sph = slant_range(at(a0, h0), at(a0 + sep, h1));
    const double flat = std::hypot(sep, h1 - h0);
    if (flat > 1e-6) CHECK(std::abs(sph - flat) / flat < 0.005);
  }
}

TEST_CASE("ray_clearance sagitta dips for inter-HAPS hops") {
  const GeoRay hop267 = ray_clearance(at(0, 20), at(267, 20));
  CHECK_THAT(hop267.min_ray_altitude_km, WithinRel(18.596959356, 1e-6));
  CHECK(std::abs((20.0 - hop267.min_ray_altitude_km) - 1.40) / 1.40 < 0.01);
  CHECK_FALSE(hop267.tropospheric(10.0));

  const GeoRay hop800 = ray_clearance(at(0, 20), at(800, 20));
  CHECK_THAT(hop800.min_ray_altitude_km, WithinRel(7.407819863, 1e-6));
  CHECK(std::abs((20.0 - hop800.min_ray_altitude_km) - 12.56) / 12.56 < 0.01);
  CHECK(hop800.tropospheric(10.0));
}

TEST_CASE("ray_clearance endpoints and elevation") {
  const GeoRay vertical = ray_clearance(at(40, 0), at(40, 20));
  CHECK_THAT(vertical.min_ray_altitude_km, WithinAbs(0.0, 1e-9));
  CHECK(vertical.tropospheric(10.0));
  CHECK_THAT(vertical.elevation_deg, WithinAbs(90.0, 1e-6));

  const GeoRay slanted = ray_clearance(at(0, 0), at(50, 20));
  CHECK_THAT(slanted.elevation_deg, WithinRel(21.545508611, 1e-6));
  CHECK_THAT(slanted.chord_km, WithinRel(53.924346909, 1e-6));

  const GeoRay degenerate = ray_clearance(at(10, 5), at(10, 5));
  CHECK(degenerate.chord_km == 0.0);
  CHECK(degenerate.min_ray_altitude_km == 5.0);
}

TEST_CASE("ray_clearance invariants on random geometries") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> arc(0.0, 1000.0);
  std::uniform_real_distribution<double> alt(0.0, 25.0);
  for (int i = 0; i < 300; ++i) {
    const Node a = at(arc(gen), alt(gen));
    const Node b = at(arc(gen), alt(gen));
    const GeoRay r1 = ray_clearance(a, b);
    const GeoRay r2 = ray_clearance(b, a);
    CHECK(r1.chord_km == r2.chord_km);
    CHECK(r1.min_ray_altitude_km == r2.min_ray_altitude_km);
    CHECK(r1.min_ray_altitude_km <= std::min(a.altitude_km, b.altitude_km) + 1e-9);
    CHECK(r1.chord_km >= std::abs(a.altitude_km - b.altitude_km) - 1e-9);
    CHECK(r1.elevation_deg >= -90.0);
    CHECK(r1.elevation_deg <= 90.0);

    const oracles::P3 A = oracles::position(a.ground_arc_km, a.altitude_km);
    const oracles::P3 B = oracles::position(b.ground_arc_km, b.altitude_km);
    CHECK_THAT(r1.min_ray_altitude_km, WithinAbs(oracles::min_ray_altitude(A, B), 1e-6));
  }
}

TEST_CASE("tropospheric_length examples") {
  // stratospheric hop clears the ceiling entirely
  CHECK(tropospheric_length(at(0, 20), at(267, 20), 10.0) == 0.0);

  // vertical ground-to-HAPS slice
  CHECK_THAT(tropospheric_length(at(5, 0), at(5, 20), 10.0), WithinAbs(10.0, 1e-9));

  // slanted ground-to-HAPS; flat-slab estimate 10/sin(21.8 deg) = 26.93
  const double len = tropospheric_length(at(0, 0), at(50, 20), 10.0);
  CHECK_THAT(len, WithinRel(27.094626823, 1e-6));
  CHECK(std::abs(len - 26.93) / 26.93 < 0.01);
}

TEST_CASE("tropospheric_length bounds and oracle agreement") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> arc(0.0, 600.0);
  std::uniform_real_distribution<double> alt(0.0, 25.0);
  std::uniform_real_distribution<double> ceil(0.5, 15.0);
  for (int i = 0; i < 120; ++i) {
    const Node a = at(arc(gen), alt(gen));
    const Node b = at(arc(gen), alt(gen));
    const double ceiling = ceil(gen);
    const double len = tropospheric_length(a, b, ceiling);
    const double chord = slant_range(a, b);
    CHECK(len >= 0.0);
    CHECK(len <= chord + 1e-9);
    if (a.altitude_km < ceiling && b.altitude_km < ceiling)
      CHECK_THAT(len, WithinAbs(chord, 1e-9));

    const oracles::P3 A = oracles::position(a.ground_arc_km, a.altitude_km);
    const oracles::P3 B = oracles::position(b.ground_arc_km, b.altitude_km);
    CHECK_THAT(len, WithinAbs(oracles::below_ceiling_length(A, B, ceiling), 1e-6));
  }
}

TEST_CASE("tropospheric_length rejects non-positive ceiling") {
  CHECK_THROWS_AS(tropospheric_length(at(0, 0), at(10, 20), 0.0), DomainError);
  CHECK_THROWS_AS(tropospheric_length(at(0, 0), at(10, 20), -3.0), DomainError);
}

TEST_CASE("node position round trip through the inverse map") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> arc(-200.0, 600.0);
  std::uniform_real_distribution<double> cross(-200.0, 200.0);
  std::uniform_real_distribution<double> alt(0.0, 25.0);
  for (int i = 0; i < 200; ++i) {
    Node n = at(0, alt(gen));
    n.ground_arc_km = arc(gen);
    n.cross_range_km = cross(gen);
    const Node back = node_from_position(node_position(n));
    CHECK_THAT(back.ground_arc_km, WithinAbs(n.ground_arc_km, 1e-7));
    CHECK_THAT(back.cross_range_km, WithinAbs(n.cross_range_km, 1e-7));
    CHECK_THAT(back.altitude_km, WithinAbs(n.altitude_km, 1e-7));
  }
}
