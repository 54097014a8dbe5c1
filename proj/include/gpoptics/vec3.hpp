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

#include "gpoptics/constants.hpp"

namespace gpoptics {

/// Real 3-vector. Used both for wave-vector directions and Poincare points.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Angle between two unit vectors, numerically stable near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(cross(a, b).norm(), dot(a, b));
}

/// Rodrigues rotation of v about a unit axis by angle (right-handed).
inline Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
}

/// Complex 3-vector (polarization vectors attached to a propagation
/// direction).
struct CVec3 {
  Complex x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator*(const Complex& s) const { return {x * s, y * s, z * s}; }

  double norm() const {
    return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z));
  }
};

inline CVec3 complex_vec(const Vec3& re, const Vec3& im) {
  return {{re.x, im.x}, {re.y, im.y}, {re.z, im.z}};
}

/// Hermitian inner product conj(a) . b.
inline Complex dot_h(const CVec3& a, const CVec3& b) {
  return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}

/// Plain (unconjugated) dot with a real vector.
inline Complex dot(const CVec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline CVec3 rotate_about(const CVec3& v, const Vec3& axis, double angle) {
  const Vec3 re{v.x.real(), v.y.real(), v.z.real()};
  const Vec3 im{v.x.imag(), v.y.imag(), v.z.imag()};
  return complex_vec(rotate_about(re, axis, angle),
                     rotate_about(im, axis, angle));
}

}  // namespace gpoptics
