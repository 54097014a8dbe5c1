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

#include <cmath>
#include <complex>

namespace gpoptics {

// Convention table shared by every module. Geometric-phase signs flip
// silently if any module disagrees with these, so they live in one place:
//
//   |L> = (1,  i)/sqrt(2)    left circular, spin +1 hbar per photon
//   |R> = (1, -i)/sqrt(2)    right circular, spin -1 hbar per photon
//
//   Stokes parameters of a Jones vector (ex, ey):
//     s0 = |ex|^2 + |ey|^2
//     s1 = |ex|^2 - |ey|^2
//     s2 = 2 Re(conj(ex) ey)
//     s3 = 2 Im(conj(ex) ey)     => |L> maps to the +s3 pole.
//
//   Solid angles are signed, positive for counterclockwise circulation as
//   seen from outside the sphere. Single phases are reported on the
//   principal branch (-pi, pi]; accumulated phases stay unwrapped.

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Spin per photon (hbar units) of the left/right circular basis states.
inline constexpr double kSpinOfLeft = +1.0;
inline constexpr double kSpinOfRight = -1.0;

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

/// Wraps a phase onto the principal branch (-pi, pi].
inline double principal_phase(double phase) {
  double p = std::remainder(phase, kTwoPi);
  if (p <= -kPi) p += kTwoPi;
  return p;
}

}  // namespace gpoptics
