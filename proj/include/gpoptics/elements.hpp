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
#include "gpoptics/jones.hpp"

namespace gpoptics {

/// 2x2 complex element action on a Jones vector. Every element built in
/// this module is lossless, i.e. unitary to machine precision.
struct JonesMatrix {
  Complex m00{1.0, 0.0}, m01{0.0, 0.0};
  Complex m10{0.0, 0.0}, m11{1.0, 0.0};

  JonesVector apply(const JonesVector& v) const {
    return {m00 * v.ex + m01 * v.ey, m10 * v.ex + m11 * v.ey};
  }

  JonesMatrix operator*(const JonesMatrix& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }

  JonesMatrix adjoint() const {
    return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  /// Frobenius norm of (adjoint * this - identity).
  double unitarity_defect() const;
};

inline JonesMatrix identity_matrix() { return {}; }

/// Homogeneous linear retarder: retardance pi for a half-wave plate, pi/2
/// for a quarter-wave plate; axis_angle is the fast-axis angle from x.
struct RetarderSpec {
  double retardance = kPi;
  double axis_angle = 0.0;
};

/// Inhomogeneous half-wave plate whose fast axis turns with azimuth,
/// axis(r, phi) = q * phi + alpha0. q may be any real; nothing is
/// special-cased for integral or half-integral values.
struct QPlateSpec {
  double q = 1.0;
  double alpha0 = 0.0;
};

/// Half-wave plate spinning at a constant angular speed (rad/s).
struct RotatingHWPSpec {
  double angular_speed = 1.0;
  double phase0 = 0.0;
};

/// R(theta) diag(e^{-i d/2}, e^{+i d/2}) R(-theta). The symmetric global
/// phase keeps det of unit magnitude; all observable claims are about
/// relative phases and do not depend on it. Retardance is reduced mod 2*pi.
JonesMatrix retarder_matrix(const RetarderSpec& spec);

/// Half-wave retarder with axis q*phi + alpha0: flips circular handedness
/// and imprints the relative azimuthal phase 2*q*phi between the circular
/// output channels.
JonesMatrix qplate_matrix_at(const QPlateSpec& spec, double phi);

/// Half-wave retarder with axis angular_speed*t + phase0. Time and azimuth
/// enter through the same retarder code path.
JonesMatrix rotating_hwp_matrix(const RotatingHWPSpec& spec, double t);

/// Matrix-vector product; preserves intensity for unitary matrices.
inline JonesVector apply(const JonesMatrix& m, const JonesVector& v) {
  return m.apply(v);
}

}  // namespace gpoptics
