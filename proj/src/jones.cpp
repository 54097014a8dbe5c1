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
#include "gpoptics/jones.hpp"

#include <cmath>

#include "gpoptics/errors.hpp"

namespace gpoptics {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

CircularAmplitudes to_circular(const JonesVector& v) {
  // Inverting ex = (a_l + a_r)/sqrt(2), ey = i (a_l - a_r)/sqrt(2).
  return {(v.ex - kImag * v.ey) * kInvSqrt2, (v.ex + kImag * v.ey) * kInvSqrt2};
}

JonesVector from_circular(const CircularAmplitudes& c) {
  return {(c.a_l + c.a_r) * kInvSqrt2, kImag * (c.a_l - c.a_r) * kInvSqrt2};
}

StokesVector stokes_of(const JonesVector& v) {
  const Complex cross = std::conj(v.ex) * v.ey;
  return {std::norm(v.ex) + std::norm(v.ey), std::norm(v.ex) - std::norm(v.ey),
          2.0 * cross.real(), 2.0 * cross.imag()};
}

PoincarePoint poincare_of(const JonesVector& v) {
  const StokesVector s = stokes_of(v);
  if (s.s0 <= 1e-300) {
    throw ZeroIntensity("poincare_of: intensity is zero");
  }
  return {{s.s1 / s.s0, s.s2 / s.s0, s.s3 / s.s0}};
}

double pancharatnam_connection(const JonesVector& e1, const JonesVector& e2,
                               double eps_orth) {
  const Complex overlap = inner(e1, e2);
  const double scale = std::sqrt(e1.intensity() * e2.intensity());
  if (std::abs(overlap) <= eps_orth * scale) {
    throw OrthogonalStates(
        "pancharatnam_connection: states are orthogonal, connection undefined");
  }
  return principal_phase(std::arg(overlap));
}

}  // namespace gpoptics
