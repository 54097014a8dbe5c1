// Field grids: synthesis, pointwise element application, the focal-field
// model, the propagation-vector map and grid I/O.

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gpoptics/am_analysis.hpp"
#include "gpoptics/errors.hpp"
#include "gpoptics/field.hpp"
#include "gpoptics/field_io.hpp"

using namespace gpoptics;

namespace {

GridGeometry small_grid() {
  GridGeometry g;
  g.n_r = 8;
  g.n_phi = 64;
  g.r_max = 1.0;
  return g.resolved();
}

}  // namespace

TEST_CASE("geometry defaults and validation") {
  GridGeometry g;
  g.n_r = 64;
  g.r_max = 1.0;
  const GridGeometry r = g.resolved();
  CHECK(r.r_min == doctest::Approx(1.0 / 128.0));

  GridGeometry bad = g;
  bad.n_phi = 15;
  CHECK_THROWS_AS(bad.resolved(), BadGeometry);
  bad = g;
  bad.n_phi = 14;
  CHECK_THROWS_AS(bad.resolved(), BadGeometry);
  bad = g;
  bad.r_min = 2.0;
  CHECK_THROWS_AS(bad.resolved(), BadGeometry);
}

TEST_CASE("uniform charge-0 beam is constant") {
  const FieldGrid f =
      synthesize_beam({Envelope::uniform(), 0, linear_x()}, small_grid());
  for (const JonesVector& s : f.samples) {
    CHECK(std::abs(s.ex - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(s.ey) < 1e-15);
  }
}

TEST_CASE("charge-1 beam phase winds once around the axis") {
  const FieldGrid f = synthesize_beam(
      {Envelope::gaussian(1.0), 1, linear_x()}, small_grid());
  const GridGeometry& g = f.geom;
  for (int j = 0; j < g.n_phi; ++j) {
    const double expected = principal_phase(g.azimuth(j));
    CHECK(std::abs(principal_phase(std::arg(f.at(4, j).ex) - expected)) < 1e-12);
  }
  CHECK(winding_number(f, Component::L, 4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("charge-3 beam round-trips through the winding detector") {
  const FieldGrid f = synthesize_beam(
      {Envelope::uniform(), 3, left_circular()}, small_grid());
  CHECK(winding_number(f, Component::L, 2) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("pointwise identity leaves the field alone") {
  const FieldGrid f = synthesize_beam(
      {Envelope::ring(0.6, 0.2), 2, left_circular()}, small_grid());
  const FieldGrid same = apply_element_pointwise(f, identity_family());
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    CHECK(std::abs(f.samples[i].ex - same.samples[i].ex) == 0.0);
    CHECK(std::abs(f.samples[i].ey - same.samples[i].ey) == 0.0);
  }
}

TEST_CASE("q = 1 plate imprints e^{2 i phi} on the flipped channel") {
  const FieldGrid in =
      synthesize_beam({Envelope::uniform(), 0, left_circular()}, small_grid());
  const FieldGrid out = apply_element_pointwise(in, qplate_family({1.0, 0.0}));
  const GridGeometry& g = out.geom;
  const Complex base = to_circular(out.at(3, 0)).a_r;
  for (int j = 0; j < g.n_phi; ++j) {
    const CircularAmplitudes c = to_circular(out.at(3, j));
    CHECK(std::abs(c.a_l) < 1e-12);  // fully flipped
    CHECK(std::abs(principal_phase(std::arg(c.a_r) - std::arg(base) -
                                   2.0 * g.azimuth(j))) < 1e-10);
  }
}

TEST_CASE("q = 1 plate on |R> flips the azimuthal sign") {
  const FieldGrid in =
      synthesize_beam({Envelope::uniform(), 0, right_circular()}, small_grid());
  const FieldGrid out = apply_element_pointwise(in, qplate_family({1.0, 0.0}));
  CHECK(winding_number(out, Component::L, 3) ==
        doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("unitary element application preserves total power") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uq(-2.0, 2.0);
  const FieldGrid f = synthesize_beam(
      {Envelope::gaussian(0.8), 1, linear_at(0.4)}, small_grid());
  const FieldGrid g = apply_element_pointwise(f, qplate_family({uq(rng), 0.3}));
  CHECK(g.total_power() ==
        doctest::Approx(f.total_power()).epsilon(1e-10));
}

TEST_CASE("vector vortex: linear polarization rotating twice per turn") {
  const double alpha = 0.3;
  const FieldGrid f = vector_vortex_beam(alpha, small_grid());
  const GridGeometry& g = f.geom;

  // phi = 0 sample matches the alpha-parameterized decomposition
  const JonesVector expected =
      from_circular({std::polar(1.0, alpha), std::polar(1.0, -alpha)});
  CHECK(std::abs(f.at(0, 0).ex - expected.ex) < 1e-12);
  CHECK(std::abs(f.at(0, 0).ey - expected.ey) < 1e-12);

  // at phi = pi/2 the line azimuth has rotated by pi: same orientation
  const int j_quarter = g.n_phi / 4;
  const JonesVector q = f.at(0, j_quarter);
  const JonesVector z = f.at(0, 0);
  // both are linear; their azimuths differ by pi (same line)
  const double az_q = 0.5 * std::atan2(stokes_of(q).s2, stokes_of(q).s1);
  const double az_z = 0.5 * std::atan2(stokes_of(z).s2, stokes_of(z).s1);
  CHECK(std::abs(principal_phase(2.0 * (az_q - az_z) - kTwoPi)) < 1e-9);

  CHECK(winding_number(f, Component::L, 1) == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(winding_number(f, Component::R, 1) == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("focal model: power split and windings") {
  const GridGeometry g = small_grid();
  const double eps = 0.2;

  const FieldGrid f = focal_field_model(+1, eps, Envelope::gaussian(1.0), g);
  CHECK(component_power(f, Component::R) / f.total_power() ==
        doctest::Approx(eps * eps).epsilon(1e-12));
  CHECK(winding_number(f, Component::R, 3) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(winding_number(f, Component::L, 3) == doctest::Approx(0.0).epsilon(1e-12));

  // conjugate symmetry: |R> input winds the other way
  const FieldGrid h = focal_field_model(-1, eps, Envelope::gaussian(1.0), g);
  CHECK(winding_number(h, Component::L, 3) == doctest::Approx(-2.0).epsilon(1e-9));

  // eps = 0 is the unperturbed input polarization
  const FieldGrid id = focal_field_model(+1, 0.0, Envelope::uniform(), g);
  CHECK(component_power(id, Component::R) < 1e-28);

  CHECK_THROWS_AS(focal_field_model(+1, 1.0, Envelope::uniform(), g), BadEps);
  CHECK_THROWS_AS(focal_field_model(+1, -0.1, Envelope::uniform(), g), BadEps);
}

TEST_CASE("kdelta of a uniform field vanishes") {
  const FieldGrid f =
      synthesize_beam({Envelope::uniform(), 0, linear_at(0.7)}, small_grid());
  const KDeltaMap m = kdelta_map(f);
  for (double k : m.k_r) CHECK(std::abs(k) < 1e-14);
  for (double k : m.k_phi) CHECK(std::abs(k) < 1e-14);
}

TEST_CASE("kdelta recovers l/r on vortex beams to second order") {
  GridGeometry g;
  g.n_r = 8;
  g.n_phi = 512;
  g.r_max = 1.0;

  auto max_rel_err = [](const FieldGrid& f, int l) {
    const KDeltaMap m = kdelta_map(f);
    double worst = 0.0;
    for (int i = 0; i < f.geom.n_r; ++i) {
      const double want = l / f.geom.radius(i);
      for (int j = 0; j < f.geom.n_phi; ++j) {
        worst = std::max(worst, std::abs(m.kphi_at(i, j) - want) / std::abs(want));
      }
    }
    return worst;
  };

  for (int l : {1, 2, 3}) {
    const FieldGrid f = synthesize_beam(
        {Envelope::gaussian(1.0), l, left_circular()}, g.resolved());
    CHECK(max_rel_err(f, l) < 1e-3);
  }

  // doubling n_phi cuts the error by ~4x
  GridGeometry g2 = g;
  g2.n_phi = 1024;
  const int l = 3;
  const double e1 = max_rel_err(
      synthesize_beam({Envelope::uniform(), l, linear_x()}, g.resolved()), l);
  const double e2 = max_rel_err(
      synthesize_beam({Envelope::uniform(), l, linear_x()}, g2.resolved()), l);
  CHECK(e1 / e2 > 3.8);
}

TEST_CASE("kdelta of the vector vortex cancels azimuthally") {
  // each circular channel alone carries k_phi = +-2/r, but the equal-weight
  // superposition cancels exactly
  const FieldGrid f = vector_vortex_beam(0.0, small_grid());
  const KDeltaMap m = kdelta_map(f);
  for (int i = 0; i < f.geom.n_r; ++i) {
    for (int j = 0; j < f.geom.n_phi; ++j) {
      CHECK(std::abs(m.kphi_at(i, j)) < 1e-12);
    }
  }
}

TEST_CASE("kdelta rejects dead samples") {
  FieldGrid f =
      synthesize_beam({Envelope::uniform(), 0, linear_x()}, small_grid());
  f.at(2, 5) = {{0.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(kdelta_map(f), ZeroIntensityRegion);
}

TEST_CASE("CSV round trip reproduces samples and geometry") {
  std::mt19937_64 rng(2718);
  std::normal_distribution<double> n01(0.0, 1.0);
  FieldGrid f = synthesize_beam(
      {Envelope::gaussian(0.9), 2, left_circular()}, small_grid());
  for (JonesVector& s : f.samples) {
    s.ex += Complex{0.1 * n01(rng), 0.1 * n01(rng)};
    s.ey += Complex{0.1 * n01(rng), 0.1 * n01(rng)};
  }

  std::ostringstream out;
  write_field_csv(f, out);
  std::istringstream in(out.str());
  const FieldGrid r = read_field_csv(in);

  REQUIRE(r.geom.n_r == f.geom.n_r);
  REQUIRE(r.geom.n_phi == f.geom.n_phi);
  CHECK(std::abs(r.geom.r_min - f.geom.r_min) <= 1e-15 * f.geom.r_max);
  CHECK(std::abs(r.geom.r_max - f.geom.r_max) <= 1e-15 * f.geom.r_max);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    CHECK(std::abs(r.samples[i].ex - f.samples[i].ex) <=
          1e-15 * std::abs(f.samples[i].ex));
    CHECK(std::abs(r.samples[i].ey - f.samples[i].ey) <=
          1e-15 * std::abs(f.samples[i].ey));
  }
}

TEST_CASE("JSON envelope round trip carries the full geometry") {
  GridGeometry g = small_grid();
  g.wavelength = 0.633;
  const FieldGrid f = synthesize_beam({Envelope::uniform(), -1, right_circular()}, g);
  const FieldGrid r = field_from_json(field_to_json(f));
  REQUIRE(r.geom.n_r == f.geom.n_r);
  REQUIRE(r.geom.n_phi == f.geom.n_phi);
  CHECK(r.geom.wavelength == f.geom.wavelength);
  CHECK(r.geom.r_min == f.geom.r_min);
  CHECK(r.geom.r_max == f.geom.r_max);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    CHECK(std::abs(r.samples[i].ex - f.samples[i].ex) == 0.0);
    CHECK(std::abs(r.samples[i].ey - f.samples[i].ey) == 0.0);
  }
}
