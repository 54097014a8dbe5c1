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

#include "gpoptics/constants.hpp"
#include "gpoptics/vec3.hpp"

namespace gpoptics {

/// Fully polarized transverse field at a point: two complex amplitudes in
/// the (x, y) linear basis. Units are arbitrary field units.
struct JonesVector {
  Complex ex{0.0, 0.0};
  Complex ey{0.0, 0.0};

  double intensity() const { return std::norm(ex) + std::norm(ey); }

  JonesVector operator*(const Complex& c) const { return {ex * c, ey * c}; }
  JonesVector operator+(const JonesVector& o) const {
    return {ex + o.ex, ey + o.ey};
  }
};

/// Hermitian inner product conj(a) . b of two Jones vectors.
inline Complex inner(const JonesVector& a, const JonesVector& b) {
  return std::conj(a.ex) * b.ex + std::conj(a.ey) * b.ey;
}

/// Coefficients of a Jones vector on the circular basis,
/// v = a_l |L> + a_r |R>.
struct CircularAmplitudes {
  Complex a_l{0.0, 0.0};
  Complex a_r{0.0, 0.0};
};

/// Stokes parameters (field units squared). For the pure states handled
/// here s0 = sqrt(s1^2 + s2^2 + s3^2) up to rounding.
struct StokesVector {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

/// Unit vector of normalized Stokes parameters (s1, s2, s3)/s0.
struct PoincarePoint {
  Vec3 n;
};

// Basis states under the shared convention.
inline JonesVector left_circular() {
  return {Complex{1.0 / std::sqrt(2.0), 0.0}, Complex{0.0, 1.0 / std::sqrt(2.0)}};
}
inline JonesVector right_circular() {
  return {Complex{1.0 / std::sqrt(2.0), 0.0}, Complex{0.0, -1.0 / std::sqrt(2.0)}};
}
inline JonesVector linear_x() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
inline JonesVector linear_y() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }
inline JonesVector linear_at(double azimuth) {
  return {Complex{std::cos(azimuth), 0.0}, Complex{std::sin(azimuth), 0.0}};
}

/// Decomposes v on the circular basis. Total function; exact inverse of
/// from_circular.
CircularAmplitudes to_circular(const JonesVector& v);

/// Rebuilds the Jones vector a_l |L> + a_r |R>.
JonesVector from_circular(const CircularAmplitudes& c);

/// Stokes parameters of a Jones vector (see constants.hpp for the signs).
StokesVector stokes_of(const JonesVector& v);

/// Normalized Poincare-sphere point of a state with positive intensity.
/// Throws ZeroIntensity when intensity <= 1e-300.
PoincarePoint poincare_of(const JonesVector& v);

/// Pancharatnam connection arg(conj(e1) . e2) in (-pi, pi], the phase by
/// which e2 leads e1. Undefined (throws OrthogonalStates) when the states
/// are orthogonal within eps_orth * sqrt(I1 I2).
double pancharatnam_connection(const JonesVector& e1, const JonesVector& e2,
                               double eps_orth = 1e-9);

}  // namespace gpoptics
