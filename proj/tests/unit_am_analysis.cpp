// OAM spectra, winding numbers and per-photon angular-momentum bookkeeping.

#include <doctest.h>

#include <cmath>
#include <random>

#include "gpoptics/am_analysis.hpp"
#include "gpoptics/dft.hpp"
#include "gpoptics/errors.hpp"
#include "gpoptics/field.hpp"

using namespace gpoptics;

namespace {

GridGeometry grid(int n_r = 8, int n_phi = 128) {
  GridGeometry g;
  g.n_r = n_r;
  g.n_phi = n_phi;
  g.r_max = 1.0;
  return g.resolved();
}

FieldGrid uniform_circular(int helicity, const GridGeometry& g) {
  return synthesize_beam(
      {Envelope::uniform(), 0, helicity > 0 ? left_circular() : right_circular()},
      g);
}

FieldGrid qplate_output(double q, int input_helicity, const GridGeometry& g) {
  return apply_element_pointwise(uniform_circular(input_helicity, g),
                                 qplate_family({q, 0.0}));
}

}  // namespace

TEST_CASE("uniform |L> beam has all its L power at l = 0") {
  const OAMSpectrum s = azimuthal_spectrum(uniform_circular(+1, grid()), Component::L);
  REQUIRE(s.powers.count(0) == 1);
  CHECK(s.powers.at(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(s.mean_l) < 1e-12);
  CHECK(s.residual < 1e-12);
}

TEST_CASE("empty component is rejected") {
  CHECK_THROWS_AS(azimuthal_spectrum(uniform_circular(+1, grid()), Component::R),
                  EmptyComponent);
}

TEST_CASE("q = 1 plate output concentrates at l = +2 (n_phi = 512)") {
  const OAMSpectrum s =
      azimuthal_spectrum(qplate_output(1.0, +1, grid(4, 512)), Component::R);
  REQUIRE(s.powers.count(2) == 1);
  CHECK(s.powers.at(2) >= 0.999);
  CHECK(s.mean_l == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("non-integer 2q leaks across modes; oracle is the closed-form DFT") {
  // q = 3/4: the flipped channel is e^{i 1.5 phi}, discontinuous at the seam.
  const GridGeometry g = grid(4, 256);
  const double charge = 1.5;
  const OAMSpectrum s = azimuthal_spectrum(qplate_output(0.75, +1, g), Component::R);

  // Closed form for the sampled exponential: the DFT of x_j = e^{i c phi_j}
  // is a finite geometric sum, |X_l|^2 = |1 - e^{2 pi i c}|^2 /
  // (n^2 |1 - e^{2 pi i (c - l)/n}|^2).
  const int n = g.n_phi;
  auto exact_power = [&](int l) {
    const Complex num = 1.0 - std::polar(1.0, kTwoPi * charge);
    const Complex den = 1.0 - std::polar(1.0, kTwoPi * (charge - l) / n);
    return std::norm(num / (static_cast<double>(n) * den));
  };

  double checked = 0.0;
  for (int l = -4; l <= 8; ++l) {
    const double want = exact_power(l);
    const auto it = s.powers.find(l);
    const double got = it == s.powers.end() ? 0.0 : it->second;
    if (want > 2e-4) {  // comfortably above the storage floor
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
      checked += got;
    }
  }
  CHECK(checked > 0.9);        // the bulk sits near l = 1 and l = 2
  CHECK(s.residual > 1e-6);    // genuine branch-cut leakage
  CHECK(s.powers.at(2) > s.powers.at(0));
}

TEST_CASE("spectrum normalization: powers plus residual is one") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uq(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const OAMSpectrum s =
        azimuthal_spectrum(qplate_output(uq(rng), +1, grid(4, 128)), Component::R);
    double total = s.residual;
    for (const auto& [l, p] : s.powers) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("winding examples: synthesized charges and the q-plate family") {
  const GridGeometry g = grid();
  CHECK(winding_number(synthesize_beam({Envelope::uniform(), 3, left_circular()}, g),
                       Component::L, 4) == doctest::Approx(3.0).epsilon(1e-9));

  const FieldGrid vv = vector_vortex_beam(0.1, g);
  CHECK(winding_number(vv, Component::L, 4) == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(winding_number(vv, Component::R, 4) == doctest::Approx(-2.0).epsilon(1e-9));

  // q = 3/4: non-integer winding 1.5 reported as a real number
  const double w = winding_number(qplate_output(0.75, +1, grid(4, 512)),
                                  Component::R, 2);
  CHECK(std::abs(w - 1.5) < 1e-2);
}

TEST_CASE("winding agrees with the spectrum argmax for single modes") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> ul(-8, 8);
  const GridGeometry g = grid(4, 128);
  for (int k = 0; k < 100; ++k) {
    const int l = ul(rng);
    const bool left = (rng() & 1) != 0;
    const FieldGrid f = synthesize_beam(
        {Envelope::gaussian(1.0), l, left ? left_circular() : right_circular()}, g);
    const Component c = left ? Component::L : Component::R;
    const OAMSpectrum s = azimuthal_spectrum(f, c);
    int argmax = 0;
    double best = -1.0;
    for (const auto& [mode, p] : s.powers) {
      if (p > best) {
        best = p;
        argmax = mode;
      }
    }
    CHECK(argmax == l);
    CHECK(winding_number(f, c, 2) == doctest::Approx(l).epsilon(1e-9));
  }
}

TEST_CASE("winding guards: undersampling and near-zero amplitude") {
  const GridGeometry g = grid(4, 16);
  // charge 5 on 16 samples: interior jumps approach 2*pi*5/16 > pi/2
  const FieldGrid f =
      synthesize_beam({Envelope::uniform(), 5, left_circular()}, g);
  CHECK_THROWS_AS(winding_number(f, Component::L, 1), Undersampled);

  FieldGrid dead = synthesize_beam({Envelope::uniform(), 1, left_circular()}, grid());
  dead.at(2, 7) = {{1e-14, 0.0}, {0.0, 1e-14}};
  CHECK_THROWS_AS(winding_number(dead, Component::L, 2), NearZeroAmplitude);
}

TEST_CASE("am_report on the conversion family") {
  const GridGeometry g = grid(4, 256);

  const AMReport plain = am_report(uniform_circular(+1, g));
  CHECK(plain.spin_per_photon == doctest::Approx(+1.0).epsilon(1e-12));
  CHECK(std::abs(plain.oam_per_photon) < 1e-12);
  CHECK(plain.total_per_photon == doctest::Approx(+1.0).epsilon(1e-12));

  // q = 1 conserves the per-photon total within the beam
  const AMReport q1 = am_report(qplate_output(1.0, +1, g));
  CHECK(q1.spin_per_photon == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(q1.oam_per_photon == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(q1.total_per_photon == doctest::Approx(+1.0).epsilon(1e-9));

  // q = 2 exchanges angular momentum with the plate
  const AMReport q2 = am_report(qplate_output(2.0, +1, g));
  CHECK(q2.oam_per_photon == doctest::Approx(+4.0).epsilon(1e-9));
  CHECK(q2.total_per_photon == doctest::Approx(+3.0).epsilon(1e-9));

  CHECK_THROWS_AS(
      am_report(FieldGrid{g, std::vector<JonesVector>(
                                 static_cast<std::size_t>(g.n_r) * g.n_phi)}),
      ZeroPower);
}

TEST_CASE("am totals are invariant under global phase and basis rotation") {
  const GridGeometry g = grid(4, 128);
  const FieldGrid f = qplate_output(1.0, +1, g);
  const AMReport base = am_report(f);

  FieldGrid phased = f;
  for (JonesVector& s : phased.samples) s = s * std::polar(1.0, 1.1);
  const AMReport ph = am_report(phased);
  CHECK(ph.total_per_photon == doctest::Approx(base.total_per_photon).epsilon(1e-12));

  const double th = 0.61;
  FieldGrid rotated = f;
  for (JonesVector& s : rotated.samples) {
    const JonesVector r{std::cos(th) * s.ex - std::sin(th) * s.ey,
                        std::sin(th) * s.ex + std::cos(th) * s.ey};
    s = r;
  }
  const AMReport rot = am_report(rotated);
  CHECK(rot.spin_per_photon == doctest::Approx(base.spin_per_photon).epsilon(1e-12));
  CHECK(rot.oam_per_photon == doctest::Approx(base.oam_per_photon).epsilon(1e-9));
  CHECK(rot.total_per_photon ==
        doctest::Approx(base.total_per_photon).epsilon(1e-9));
}

TEST_CASE("time reversal (conjugation) negates spin, oam and winding") {
  const GridGeometry g = grid(4, 128);
  const FieldGrid f = qplate_output(1.0, +1, g);
  const AMReport base = am_report(f);

  FieldGrid conj = f;
  for (JonesVector& s : conj.samples) {
    s = {std::conj(s.ex), std::conj(s.ey)};
  }
  const AMReport c = am_report(conj);
  CHECK(c.spin_per_photon == doctest::Approx(-base.spin_per_photon).epsilon(1e-12));
  CHECK(c.oam_per_photon == doctest::Approx(-base.oam_per_photon).epsilon(1e-9));
  CHECK(winding_number(conj, Component::L, 2) ==
        doctest::Approx(-winding_number(f, Component::R, 2)).epsilon(1e-9));
}

TEST_CASE("every pure half-wave family flips spin and shifts the flipped mode") {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> uq(-2.5, 2.5);
  const GridGeometry g = grid(4, 256);
  for (int k = 0; k < 10; ++k) {
    double q = uq(rng);
    q = std::round(2.0 * q) / 2.0;  // keep 2q integral so modes stay sharp
    const int sigma = (rng() & 1) ? +1 : -1;
    const FieldGrid in = uniform_circular(sigma, g);
    const FieldGrid out =
        apply_element_pointwise(in, qplate_family({q, 0.4}));
    const AMReport a = am_report(in);
    const AMReport b = am_report(out);
    CHECK(b.spin_per_photon ==
          doctest::Approx(-a.spin_per_photon).epsilon(1e-12));
    const double flipped_mean =
        sigma > 0 ? b.right.mean_l : b.left.mean_l;
    CHECK(flipped_mean == doctest::Approx(2.0 * q * sigma).epsilon(1e-9));
  }
}

TEST_CASE("holonomy check: identical fields") {
  const FieldGrid f = uniform_circular(+1, grid());
  const HolonomyReport h = holonomy_check(f, f);
  CHECK(h.delta_oam == 0.0);
  CHECK(h.delta_spin == 0.0);
  CHECK(h.delta_total == 0.0);
  CHECK(h.gp_charge == 0.0);
  CHECK(h.equivalence_holds);
}

TEST_CASE("holonomy check: q = 1 plate") {
  const GridGeometry g = grid(4, 256);
  const HolonomyReport h =
      holonomy_check(uniform_circular(+1, g), qplate_output(1.0, +1, g));
  CHECK(h.delta_oam == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(h.delta_spin == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(h.delta_total) < 1e-9);
  CHECK(h.gp_charge == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(h.equivalence_holds);
}

TEST_CASE("holonomy check: focal model bookkeeping in closed form") {
  const GridGeometry g = grid(4, 256);
  const double eps = 0.2;
  const FieldGrid before = synthesize_beam(
      {Envelope::gaussian(1.0), 0, left_circular()}, g);
  const FieldGrid after = focal_field_model(+1, eps, Envelope::gaussian(1.0), g);
  const HolonomyReport h = holonomy_check(before, after);
  CHECK(h.flipped_delta_oam == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(h.gp_charge == doctest::Approx(+2.0).epsilon(1e-9));
  CHECK(h.delta_oam == doctest::Approx(2.0 * eps * eps).epsilon(1e-9));
  CHECK(h.delta_spin == doctest::Approx(-2.0 * eps * eps).epsilon(1e-9));
  CHECK(std::abs(h.delta_total) < 1e-9);
  CHECK(h.equivalence_holds);
}

TEST_CASE("holonomy check rejects mismatched grids and dead fields") {
  const FieldGrid a = uniform_circular(+1, grid(8, 128));
  const FieldGrid b = uniform_circular(+1, grid(8, 64));
  CHECK_THROWS_AS(holonomy_check(a, b), GeometryMismatch);

  const GridGeometry g = grid();
  const FieldGrid dead{g, std::vector<JonesVector>(
                              static_cast<std::size_t>(g.n_r) * g.n_phi)};
  CHECK_THROWS_AS(holonomy_check(dead, dead), ZeroPower);
}

TEST_CASE("report serialization is stable json") {
  const AMReport r = am_report(uniform_circular(+1, grid()));
  const std::string j = r.to_json();
  CHECK(j.find("\"kind\":\"am_report\"") != std::string::npos);
  CHECK(j.find("\"schema_version\":1") != std::string::npos);
  const OAMSpectrum s = azimuthal_spectrum(uniform_circular(+1, grid()), Component::L);
  CHECK(s.to_json().find("\"component\":\"L\"") != std::string::npos);
}
