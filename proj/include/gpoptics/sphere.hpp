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

#include <vector>

#include "gpoptics/jones.hpp"
#include "gpoptics/vec3.hpp"

namespace gpoptics {

/// Ordered path of unit vectors on a sphere, either in wave-vector space or
/// on the Poincare sphere. Consecutive vertices must subtend strictly less
/// than pi - 1e-6 (the geodesic between antipodal points is ambiguous).
struct SpherePath {
  std::vector<Vec3> vertices;
  bool closed = false;

  /// Validates and builds a closed loop (>= 3 vertices; input vectors are
  /// normalized). The closing edge back to vertices[0] is implicit.
  static SpherePath closed_loop(std::vector<Vec3> vertices);

  /// Validates and builds an open chain (>= 1 vertex).
  static SpherePath open_chain(std::vector<Vec3> vertices);
};

/// Polarization frame riding on a propagation direction.
/// epsilon is a unit complex 3-vector transverse to kappa.
struct TransportedFrame {
  Vec3 kappa;
  CVec3 epsilon;
  int helicity = +1;
};

/// Circular frame (e1 + i*helicity*e2)/sqrt(2) with (e1, e2, kappa)
/// right-handed; e1 is picked deterministically from kappa.
TransportedFrame circular_frame(const Vec3& kappa, int helicity);

/// Linear frame along the (normalized) transverse projection of direction.
TransportedFrame linear_frame(const Vec3& kappa, const Vec3& direction);

/// Signed solid angle (steradians) enclosed by a closed path, accumulated
/// as a real number (a loop winding twice sums twice; nothing is reduced
/// mod 4*pi). Positive for counterclockwise circulation seen from outside
/// the sphere. Computed as a triangle fan from vertices[0] with the
/// arctangent spherical-excess formula per triangle.
///
/// A path lying exactly on a great circle encloses either hemisphere
/// (+-2*pi); the tie is broken deterministically by the orientation of the
/// path's area vector so that reversal still negates the result.
double path_solid_angle(const SpherePath& path);

/// Signed spherical excess of one triangle (unit vectors), in (-2*pi, 2*pi].
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c);

/// Transports the frame along the path, rotating epsilon segment by segment
/// about kappa_i x kappa_{i+1} (the minimal rotation), which preserves
/// transversality and helicity. frame.kappa must equal the first vertex
/// within 1e-9 (FrameMismatch otherwise).
TransportedFrame parallel_transport(const TransportedFrame& frame,
                                    const SpherePath& path);

/// Phase by which `after.epsilon` leads `before.epsilon`,
/// arg(conj(before) . after) in (-pi, pi]. For a circular frame returned
/// by a closed-loop transport this is the holonomy phase.
double transport_phase(const TransportedFrame& before,
                       const TransportedFrame& after);

/// Geometric phase of the helicity-sigma circular component after its wave
/// vector traces a closed cycle of signed solid angle omega:
/// phase = -helicity * omega. Equal and opposite for the two helicities.
double srp_phase(double omega, int helicity);

/// Spin-redirection transformation of a polarization state written on the
/// circular basis: a_l gains e^{+i omega}, a_r gains e^{-i omega}. For a
/// linear state this rotates the polarization azimuth by -omega.
CircularAmplitudes apply_srp(const CircularAmplitudes& state, double omega);

/// Pancharatnam phase of the geodesic triangle (a, b, c) on the Poincare
/// sphere: half of its signed solid angle, with the sign fixed so that the
/// loop sum of pancharatnam_connection over states at a -> b -> c -> a
/// equals this value mod 2*pi. Returned in (-pi, pi].
/// Throws AntipodalPoints when two of the points are (anti)parallel enough
/// that the geodesic between them is ambiguous.
double pancharatnam_triangle_phase(const PoincarePoint& a,
                                   const PoincarePoint& b,
                                   const PoincarePoint& c);

/// Solid angle swept in wave-vector space by the azimuthal construction of
/// a uniform vector vortex: omega = 2 * phi, unwrapped (phi = 2*pi maps to
/// 4*pi).
double azimuthal_cycle_solid_angle(double phi);

}  // namespace gpoptics
