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
#include "gpoptics/sphere.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "gpoptics/errors.hpp"

namespace gpoptics {

namespace {

constexpr double kAntipodalMargin = 1e-6;

void validate_edges(const std::vector<Vec3>& v, bool closed) {
  const std::size_t n = v.size();
  const std::size_t edges = closed ? n : (n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec3& a = v[i];
    const Vec3& b = v[(i + 1) % n];
    if (angle_between(a, b) >= kPi - kAntipodalMargin) {
      throw DegeneratePath("SpherePath: consecutive vertices " +
                           std::to_string(i) + " and " +
                           std::to_string((i + 1) % n) +
                           " are antipodal within tolerance");
    }
  }
}

std::vector<Vec3> normalize_all(std::vector<Vec3> v) {
  for (Vec3& p : v) {
    const double n = p.norm();
    if (n < 1e-12) {
      throw DegeneratePath("SpherePath: zero vertex cannot be normalized");
    }
    p = p * (1.0 / n);
  }
  return v;
}

/// +-1 from the first non-negligible component of the loop's area vector
/// (z, then y, then x); 0 when the area vector itself vanishes.
double orientation_sign(const Vec3& area) {
  for (double c : {area.z, area.y, area.x}) {
    if (std::abs(c) > 1e-15) return c > 0.0 ? 1.0 : -1.0;
  }
  return 0.0;
}

}  // namespace

SpherePath SpherePath::closed_loop(std::vector<Vec3> vertices) {
  if (vertices.size() < 3) {
    throw DegeneratePath("SpherePath: a closed loop needs at least 3 vertices");
  }
  SpherePath p;
  p.vertices = normalize_all(std::move(vertices));
  p.closed = true;
  validate_edges(p.vertices, true);
  return p;
}

SpherePath SpherePath::open_chain(std::vector<Vec3> vertices) {
  if (vertices.empty()) {
    throw DegeneratePath("SpherePath: empty path");
  }
  SpherePath p;
  p.vertices = normalize_all(std::move(vertices));
  p.closed = false;
  validate_edges(p.vertices, false);
  return p;
}

double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = dot(a, cross(b, c));
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

double path_solid_angle(const SpherePath& path) {
  if (!path.closed) {
    throw OpenPath("path_solid_angle: path is not closed");
  }
  const std::vector<Vec3>& v = path.vertices;
  const std::size_t n = v.size();

  Vec3 area{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    area += cross(v[i], v[(i + 1) % n]);
  }

  // Fan triangles whose vertices lie (numerically) on one great circle that
  // they span more than half of have a +-2*pi ambiguity the excess formula
  // cannot see. That happens exactly where the path runs past the apex's
  // antipode, so a consecutive run of such triangles is one wrap of the far
  // hemisphere: count 2*pi once per run, signed by the loop's area vector.
  double omega = 0.0;
  bool in_degenerate_run = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double num = dot(v[0], cross(v[i], v[i + 1]));
    const double den =
        1.0 + dot(v[0], v[i]) + dot(v[i], v[i + 1]) + dot(v[i + 1], v[0]);
    if (den <= 0.0 && std::abs(num) <= 1e-12) {
      if (!in_degenerate_run) {
        const double sign = orientation_sign(area);
        if (sign == 0.0) {
          throw DegeneratePath(
              "path_solid_angle: fan triangle degenerate beyond tolerance "
              "(hemisphere-spanning with no orientation)");
        }
        omega += sign * kTwoPi;
        in_degenerate_run = true;
      }
      continue;
    }
    in_degenerate_run = false;
    omega += 2.0 * std::atan2(num, den);
  }
  return omega;
}

TransportedFrame circular_frame(const Vec3& kappa, int helicity) {
  const Vec3 k = kappa.normalized();
  const Vec3 ref = std::abs(k.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const Vec3 e1 = cross(ref, k).normalized();
  const Vec3 e2 = cross(k, e1);  // (e1, e2, k) right-handed
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double h = helicity >= 0 ? 1.0 : -1.0;
  CVec3 eps = complex_vec(e1 * inv_sqrt2, e2 * (h * inv_sqrt2));
  return {k, eps, helicity >= 0 ? +1 : -1};
}

TransportedFrame linear_frame(const Vec3& kappa, const Vec3& direction) {
  const Vec3 k = kappa.normalized();
  Vec3 t = direction - k * dot(direction, k);
  const double n = t.norm();
  if (n < 1e-12) {
    throw FrameMismatch("linear_frame: direction is parallel to kappa");
  }
  t = t * (1.0 / n);
  return {k, complex_vec(t, {0.0, 0.0, 0.0}), +1};
}

TransportedFrame parallel_transport(const TransportedFrame& frame,
                                    const SpherePath& path) {
  const std::vector<Vec3>& v = path.vertices;
  if ((frame.kappa - v.front()).norm() > 1e-9) {
    throw FrameMismatch(
        "parallel_transport: frame.kappa does not match the first vertex");
  }

  CVec3 eps = frame.epsilon;
  const std::size_t n = v.size();
  const std::size_t segments = path.closed ? n : n - 1;
  for (std::size_t i = 0; i < segments; ++i) {
    const Vec3& a = v[i];
    const Vec3& b = v[(i + 1) % n];
    const Vec3 ax = cross(a, b);
    const double s = ax.norm();
    if (s < 1e-15) continue;  // coincident samples, nothing to rotate
    const double angle = std::atan2(s, dot(a, b));
    eps = rotate_about(eps, ax * (1.0 / s), angle);
  }

  TransportedFrame out = frame;
  out.kappa = path.closed ? v.front() : v.back();
  out.epsilon = eps;
  return out;
}

double transport_phase(const TransportedFrame& before,
                       const TransportedFrame& after) {
  return principal_phase(std::arg(dot_h(before.epsilon, after.epsilon)));
}

double srp_phase(double omega, int helicity) {
  return -(helicity >= 0 ? 1.0 : -1.0) * omega;
}

CircularAmplitudes apply_srp(const CircularAmplitudes& state, double omega) {
  const Complex rot = std::polar(1.0, omega);
  return {state.a_l * rot, state.a_r * std::conj(rot)};
}

double pancharatnam_triangle_phase(const PoincarePoint& a,
                                   const PoincarePoint& b,
                                   const PoincarePoint& c) {
  const Vec3 pts[3] = {a.n.normalized(), b.n.normalized(), c.n.normalized()};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (dot(pts[i], pts[j]) <= -1.0 + 1e-12) {
        throw AntipodalPoints(
            "pancharatnam_triangle_phase: two points are antipodal");
      }
    }
  }
  // Half the signed excess. The branch of a hemisphere-spanning triangle is
  // irrelevant here: the two candidates differ by 4*pi, i.e. by 2*pi in the
  // phase, which the principal value absorbs.
  return principal_phase(0.5 * triangle_solid_angle(pts[0], pts[1], pts[2]));
}

double azimuthal_cycle_solid_angle(double phi) { return 2.0 * phi; }

}  // namespace gpoptics
