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
#include "gpoptics/elements.hpp"

#include <cmath>

namespace gpoptics {

double JonesMatrix::unitarity_defect() const {
  const JonesMatrix p = adjoint() * (*this);
  const Complex one{1.0, 0.0};
  return std::sqrt(std::norm(p.m00 - one) + std::norm(p.m01) +
                   std::norm(p.m10) + std::norm(p.m11 - one));
}

JonesMatrix retarder_matrix(const RetarderSpec& spec) {
  double delta = std::fmod(spec.retardance, kTwoPi);
  if (delta < 0.0) delta += kTwoPi;
  const Complex fast = std::polar(1.0, -0.5 * delta);
  const Complex slow = std::polar(1.0, +0.5 * delta);
  const double c = std::cos(spec.axis_angle);
  const double s = std::sin(spec.axis_angle);
  return {fast * (c * c) + slow * (s * s), (fast - slow) * (c * s),
          (fast - slow) * (c * s), fast * (s * s) + slow * (c * c)};
}

JonesMatrix qplate_matrix_at(const QPlateSpec& spec, double phi) {
  return retarder_matrix({kPi, spec.q * phi + spec.alpha0});
}

JonesMatrix rotating_hwp_matrix(const RotatingHWPSpec& spec, double t) {
  return retarder_matrix({kPi, spec.angular_speed * t + spec.phase0});
}

}  // namespace gpoptics
