/**********
 *   Copyright 2026 The gpoptics Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/
#pragma once

#include <functional>
#include <vector>

#include "gpoptics/elements.hpp"
#include "gpoptics/jones.hpp"

namespace gpoptics {

/// Annular polar grid in the transverse plane. Lengths are in beam-waist
/// units; wavelength is carried as metadata only (nothing propagates).
///
/// The on-axis point of a vortex is a phase singularity, so the grid is
/// annular: radial samples sit at the midpoints of n_r equal cells spanning
/// [r_min, r_max] with r_min > 0. Azimuthal samples are uniform on
/// [0, 2*pi), n_phi even and >= 16.
struct GridGeometry {
  int n_r = 64;
  int n_phi = 512;
  double r_min = -1.0;  ///< <= 0 requests the default r_max / (2 * n_r)
  double r_max = 1.0;
  double wavelength = 1.0;

  /// Fills the r_min default and throws BadGeometry on violations.
  GridGeometry resolved() const;

  double dr() const { return (r_max - r_min) / n_r; }
  double dphi() const { return kTwoPi / n_phi; }
  double radius(int i) const { return r_min + (i + 0.5) * dr(); }
  double azimuth(int j) const { return j * dphi(); }
  /// Midpoint-rule area weight r * dr * dphi of one cell at radius index i.
  double cell_weight(int i) const { return radius(i) * dr() * dphi(); }

  bool operator==(const GridGeometry& o) const {
    return n_r == o.n_r && n_phi == o.n_phi && r_min == o.r_min &&
           r_max == o.r_max;
  }
};

/// Radial amplitude profile of a synthesized beam.
struct Envelope {
  enum class Kind { Uniform, Gaussian, Ring };
  Kind kind = Kind::Uniform;
  double waist = 1.0;  // gaussian
  double r0 = 0.5;     // ring center
  double width = 0.2;  // ring width

  double operator()(double r) const;

  static Envelope uniform() { return {}; }
  static Envelope gaussian(double waist) {
    return {Kind::Gaussian, waist, 0.0, 0.0};
  }
  static Envelope ring(double r0, double width) {
    return {Kind::Ring, 0.0, r0, width};
  }
};

/// Beam recipe: envelope(r) * exp(i l phi) * polarization.
struct BeamSpec {
  Envelope envelope;
  int vortex_charge = 0;
  JonesVector polarization = linear_x();
};

/// Polar-grid sampling of a transverse vector field, row-major in
/// (radius, azimuth). Treat grids as immutable; operations return new ones.
struct FieldGrid {
  GridGeometry geom;
  std::vector<JonesVector> samples;

  const JonesVector& at(int i_r, int i_phi) const {
    return samples[static_cast<std::size_t>(i_r) * geom.n_phi + i_phi];
  }
  JonesVector& at(int i_r, int i_phi) {
    return samples[static_cast<std::size_t>(i_r) * geom.n_phi + i_phi];
  }

  double total_power() const;
};

/// Point family of Jones matrices, evaluated per (r, phi) grid sample.
using ElementFamily = std::function<JonesMatrix(double r, double phi)>;

inline ElementFamily identity_family() {
  return [](double, double) { return identity_matrix(); };
}
inline ElementFamily qplate_family(const QPlateSpec& spec) {
  return [spec](double, double phi) { return qplate_matrix_at(spec, phi); };
}
inline ElementFamily uniform_family(const JonesMatrix& m) {
  return [m](double, double) { return m; };
}

/// Samples envelope(r) * exp(i l phi) * polarization on the grid.
FieldGrid synthesize_beam(const BeamSpec& spec, const GridGeometry& geometry);

/// out(r, phi) = M(r, phi) * in(r, phi); geometry unchanged.
FieldGrid apply_element_pointwise(const FieldGrid& field,
                                  const ElementFamily& element);

/// Uniform-envelope vector vortex whose circular components carry opposite
/// azimuthal windings: a_l = e^{+i(alpha + 2 phi)}, a_r = e^{-i(alpha + 2
/// phi)}. At each azimuth the polarization is linear, with the line rotated
/// by 2*phi relative to phi = 0 (intensity 2 per sample by construction).
FieldGrid vector_vortex_beam(double alpha, const GridGeometry& geometry);

/// Parameterized stand-in for the field at a tight focus: the same-spin
/// circular component keeps amplitude sqrt(1 - eps^2) * envelope(r) with no
/// extra phase, while the opposite-spin component gets amplitude
/// eps * envelope(r) * e^{i 2 sigma phi}. eps in [0, 1) is a free model
/// parameter (the actual split depends on the focusing optics).
FieldGrid focal_field_model(int input_helicity, double eps,
                            const Envelope& envelope,
                            const GridGeometry& geometry);

/// Local propagation-vector map of a space-varying polarization pattern,
/// d(delta) = Im(conj(E) . dE) / |E|^2 evaluated along r and phi:
///   k_r   = Im(E^dag dE/dr) / |E|^2
///   k_phi = Im(E^dag dE/dphi) / (r |E|^2)
/// Azimuthal derivatives are periodic central differences; radial ones are
/// central inside and one-sided at the edges.
struct KDeltaMap {
  GridGeometry geom;
  std::vector<double> k_r;    // row-major like FieldGrid
  std::vector<double> k_phi;

  double kr_at(int i, int j) const {
    return k_r[static_cast<std::size_t>(i) * geom.n_phi + j];
  }
  double kphi_at(int i, int j) const {
    return k_phi[static_cast<std::size_t>(i) * geom.n_phi + j];
  }
};

/// Throws ZeroIntensityRegion (listing the first offending samples) if any
/// sample has |E|^2 <= 1e-300.
KDeltaMap kdelta_map(const FieldGrid& field);

}  // namespace gpoptics
