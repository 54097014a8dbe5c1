// Interference readout: fringe synthesis and topological-charge recovery.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "gpoptics/dft.hpp"
#include "gpoptics/errors.hpp"
#include "gpoptics/field.hpp"
#include "gpoptics/interference.hpp"

using namespace gpoptics;

namespace {

GridGeometry grid(int n_r = 16, int n_phi = 256) {
  GridGeometry g;
  g.n_r = n_r;
  g.n_phi = n_phi;
  g.r_max = 1.0;
  return g.resolved();
}

FieldGrid vortex(int l, const GridGeometry& g) {
  return synthesize_beam({Envelope::gaussian(1.0), l, linear_x()}, g);
}

ReferenceBeam plain_reference() {
  ReferenceBeam ref;
  ref.envelope = Envelope::gaussian(1.0);
  ref.polarization = linear_x();
  ref.curvature_cycles = 1.0;
  return ref;
}

/// Looks up the nearest polar sample of a pattern at cartesian (x, y).
double sample_xy(const IntensityPattern& p, double x, double y) {
  const GridGeometry& g = p.geom;
  const double r = std::hypot(x, y);
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += kTwoPi;
  const int i = std::min(
      g.n_r - 1,
      std::max(0, static_cast<int>(std::lround((r - g.r_min) / g.dr() - 0.5))));
  const int j =
      static_cast<int>(std::lround(phi / g.dphi())) % g.n_phi;
  return p.at(i, j);
}

/// Zero crossings of the pure interference cross term along the horizontal
/// chord at height y. The cross term is isolated with a pi phase step of
/// the reference, so the count is free of envelope bias.
int fringe_crossings(const IntensityPattern& bright, const IntensityPattern& dark,
                     double y) {
  const GridGeometry& g = bright.geom;
  int crossings = 0;
  double prev = 0.0;
  bool have_prev = false;
  const int steps = 600;
  for (int s = -steps; s <= steps; ++s) {
    const double x = 0.97 * g.r_max * s / steps;
    if (std::hypot(x, y) >= g.r_max) continue;
    const double d = sample_xy(bright, x, y) - sample_xy(dark, x, y);
    if (have_prev && d * prev < 0.0) ++crossings;
    if (d != 0.0) {
      prev = d;
      have_prev = true;
    }
  }
  return crossings;
}

}  // namespace

TEST_CASE("empty field gives the bare reference intensity") {
  const GridGeometry g = grid();
  const FieldGrid dark{g, std::vector<JonesVector>(
                              static_cast<std::size_t>(g.n_r) * g.n_phi)};
  ReferenceBeam ref = plain_reference();
  const IntensityPattern pat = superpose(dark, ref);
  for (int i = 0; i < g.n_r; ++i) {
    const double want = std::pow(ref.envelope(g.radius(i)), 2);
    for (int j = 0; j < g.n_phi; ++j) {
      CHECK(pat.at(i, j) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("tilted reference forks: extra fringes above vs below the axis") {
  const GridGeometry g = grid(64, 1024);
  ReferenceBeam ref;
  ref.envelope = Envelope::uniform();
  ref.polarization = linear_x();
  ref.tilt_cycles = 8.0;
  // Chords far enough from the core that the tilt keeps the fringe phase
  // monotone along them (the vortex swirl dominates inside |y| < l / k).
  const double y0 = 0.15 * g.r_max;

  auto counts = [&](int l) {
    const FieldGrid f =
        synthesize_beam({Envelope::uniform(), l, linear_x()}, g);
    const IntensityPattern bright = superpose(f, ref);
    ReferenceBeam shifted = ref;
    shifted.relative_phase += kPi;
    const IntensityPattern dark = superpose(f, shifted);
    return std::pair<int, int>{fringe_crossings(bright, dark, +y0),
                               fringe_crossings(bright, dark, -y0)};
  };

  for (int l : {1, 2, 3}) {
    // a strength-l dislocation ends l fringes: 2 extra crossings per fringe
    const auto [above, below] = counts(l);
    CHECK(above - below == 2 * l);
    const auto [m_above, m_below] = counts(-l);
    CHECK(m_above - m_below == -2 * l);
    CHECK(m_above == below);
    CHECK(m_below == above);
  }
}

TEST_CASE("charge-2 beam against an untilted reference: two fringe periods") {
  // cos(2 phi + const): exactly 2 periods around the mid-radius circle
  const GridGeometry g = grid();
  ReferenceBeam ref;
  ref.envelope = Envelope::gaussian(1.0);
  ref.polarization = linear_x();
  const IntensityPattern pat = superpose(vortex(2, g), ref);

  const int mid = g.n_r / 2;
  std::vector<Complex> trace(static_cast<std::size_t>(g.n_phi));
  for (int j = 0; j < g.n_phi; ++j) trace[j] = Complex{pat.at(mid, j), 0.0};
  const std::vector<Complex> spec = dft_forward(trace);
  double best = 0.0;
  int arg = 0;
  for (int m = 1; m < g.n_phi / 2; ++m) {
    if (std::abs(spec[m]) > best) {
      best = std::abs(spec[m]);
      arg = m;
    }
  }
  CHECK(arg == 2);
}

TEST_CASE("round trip: charge_from_pattern recovers l in [-6, 6]") {
  const GridGeometry g = grid();
  const ReferenceBeam ref = plain_reference();
  for (int l = -6; l <= 6; ++l) {
    const IntensityPattern pat = superpose(vortex(l, g), ref);
    CHECK(charge_from_pattern(pat, ref) == l);
  }
}

TEST_CASE("sign extraction also works via the reference phase convention") {
  const GridGeometry g = grid();
  ReferenceBeam ref;
  ref.envelope = Envelope::gaussian(1.0);
  ref.polarization = linear_x();
  ref.relative_phase = kPi / 4.0;  // no curvature: phase convention decides
  for (int l : {-3, -1, 2, 5}) {
    const IntensityPattern pat = superpose(vortex(l, g), ref);
    CHECK(charge_from_pattern(pat, ref) == l);
  }
}

TEST_CASE("pattern phase shift rotates the fringes by delta/l") {
  const GridGeometry g = grid();
  const int l = 3;
  ReferenceBeam ref = plain_reference();
  const IntensityPattern base = superpose(vortex(l, g), ref);
  const double delta = kTwoPi * 4.0 / g.n_phi;  // 4 azimuthal bins worth
  ReferenceBeam shifted = ref;
  shifted.relative_phase = ref.relative_phase - l * delta;
  const IntensityPattern moved = superpose(vortex(l, g), shifted);
  // fringe pattern rotated by delta: compare shifted traces at mid radius
  const int mid = g.n_r / 2;
  const int shift_bins = 4;
  for (int j = 0; j < g.n_phi; ++j) {
    CHECK(moved.at(mid, j) ==
          doctest::Approx(base.at(mid, (j + shift_bins) % g.n_phi))
              .epsilon(1e-9));
  }
}

TEST_CASE("global phase of the field leaves the pattern shape intact") {
  const GridGeometry g = grid();
  ReferenceBeam ref = plain_reference();
  FieldGrid f = vortex(2, g);
  const IntensityPattern base = superpose(f, ref);
  for (JonesVector& s : f.samples) s = s * std::polar(1.0, 0.77);
  ReferenceBeam compensated = ref;
  compensated.relative_phase += 0.77;  // same relative phase
  const IntensityPattern moved = superpose(f, compensated);
  for (std::size_t k = 0; k < base.values.size(); ++k) {
    CHECK(moved.values[k] == doctest::Approx(base.values[k]).epsilon(1e-12));
  }
}

TEST_CASE("ambiguous patterns are rejected") {
  const GridGeometry g = grid();
  // an l = 0 beam has no azimuthal modulation: charge 0
  const ReferenceBeam ref = plain_reference();
  const IntensityPattern flat = superpose(vortex(0, g), ref);
  CHECK(charge_from_pattern(flat, ref) == 0);

  // two equal charges superposed produce two equal fringe frequencies
  FieldGrid mix = vortex(1, g);
  const FieldGrid three = vortex(3, g);
  for (std::size_t k = 0; k < mix.samples.size(); ++k) {
    mix.samples[k] = mix.samples[k] + three.samples[k];
  }
  const IntensityPattern pat = superpose(mix, ref);
  CHECK_THROWS_AS(charge_from_pattern(pat, ref), AmbiguousPattern);

  // untilted, curvature-free, zero-phase reference cannot give the sign
  ReferenceBeam blind;
  blind.envelope = Envelope::gaussian(1.0);
  blind.polarization = linear_x();
  const IntensityPattern nosign = superpose(vortex(2, g), blind);
  CHECK_THROWS_AS(charge_from_pattern(nosign, blind), AmbiguousPattern);
}

TEST_CASE("PGM export writes both encodings plus a sidecar") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gpoptics_pgm_test";
  fs::create_directories(dir);

  const GridGeometry g = grid(8, 64);
  const ReferenceBeam ref = plain_reference();
  const IntensityPattern pat = superpose(vortex(1, g), ref);

  const std::string p16 = (dir / "pat16.pgm").string();
  write_pattern_pgm(pat, p16, 16, true);
  std::ifstream bin(p16, std::ios::binary);
  std::string magic;
  bin >> magic;
  CHECK(magic == "P5");
  int w = 0, h = 0, maxval = 0;
  bin >> w >> h >> maxval;
  CHECK(w == g.n_phi);
  CHECK(h == g.n_r);
  CHECK(maxval == 65535);
  CHECK(fs::exists(p16 + ".json"));

  const std::string p8 = (dir / "pat8.pgm").string();
  write_pattern_pgm(pat, p8, 8, false);
  std::ifstream plain(p8);
  plain >> magic;
  CHECK(magic == "P2");

  write_pattern_csv(pat, (dir / "pat.csv").string());
  std::ifstream csv(dir / "pat.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "r,phi,intensity");

  fs::remove_all(dir);
}
