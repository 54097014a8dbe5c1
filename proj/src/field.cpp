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
#include "gpoptics/field.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gpoptics/errors.hpp"
#include "parallel.hpp"

namespace gpoptics {

GridGeometry GridGeometry::resolved() const {
  GridGeometry g = *this;
  if (g.r_min <= 0.0) g.r_min = g.r_max / (2.0 * g.n_r);
  if (g.n_r < 1) throw BadGeometry("grid: n_r must be >= 1");
  if (g.n_phi < 16 || g.n_phi % 2 != 0) {
    throw BadGeometry("grid: n_phi must be even and >= 16");
  }
  if (!(g.r_min > 0.0)) throw BadGeometry("grid: r_min must be > 0");
  if (!(g.r_max > g.r_min)) throw BadGeometry("grid: r_max must exceed r_min");
  if (!(g.wavelength > 0.0)) throw BadGeometry("grid: wavelength must be > 0");
  return g;
}

double Envelope::operator()(double r) const {
  switch (kind) {
    case Kind::Gaussian:
      return std::exp(-(r * r) / (waist * waist));
    case Kind::Ring: {
      const double u = (r - r0) / width;
      return std::exp(-u * u);
    }
    case Kind::Uniform:
    default:
      return 1.0;
  }
}

double FieldGrid::total_power() const {
  double p = 0.0;
  for (int i = 0; i < geom.n_r; ++i) {
    const double w = geom.cell_weight(i);
    for (int j = 0; j < geom.n_phi; ++j) {
      p += w * at(i, j).intensity();
    }
  }
  return p;
}

FieldGrid synthesize_beam(const BeamSpec& spec, const GridGeometry& geometry) {
  const GridGeometry g = geometry.resolved();
  if (spec.envelope.kind == Envelope::Kind::Gaussian && !(spec.envelope.waist > 0.0)) {
    throw BadGeometry("synthesize_beam: gaussian waist must be > 0");
  }
  if (spec.envelope.kind == Envelope::Kind::Ring && !(spec.envelope.width > 0.0)) {
    throw BadGeometry("synthesize_beam: ring width must be > 0");
  }
  FieldGrid f{g, std::vector<JonesVector>(
                     static_cast<std::size_t>(g.n_r) * g.n_phi)};
  detail::parallel_for(g.n_r, [&](int i) {
    const double env = spec.envelope(g.radius(i));
    for (int j = 0; j < g.n_phi; ++j) {
      const Complex u =
          env * std::polar(1.0, spec.vortex_charge * g.azimuth(j));
      f.at(i, j) = spec.polarization * u;
    }
  });
  return f;
}

FieldGrid apply_element_pointwise(const FieldGrid& field,
                                  const ElementFamily& element) {
  FieldGrid out{field.geom,
                std::vector<JonesVector>(field.samples.size())};
  const GridGeometry& g = field.geom;
  detail::parallel_for(g.n_r, [&](int i) {
    const double r = g.radius(i);
    for (int j = 0; j < g.n_phi; ++j) {
      out.at(i, j) = element(r, g.azimuth(j)).apply(field.at(i, j));
    }
  });
  return out;
}

FieldGrid vector_vortex_beam(double alpha, const GridGeometry& geometry) {
  const GridGeometry g = geometry.resolved();
  FieldGrid f{g, std::vector<JonesVector>(
                     static_cast<std::size_t>(g.n_r) * g.n_phi)};
  detail::parallel_for(g.n_r, [&](int i) {
    for (int j = 0; j < g.n_phi; ++j) {
      const double a = alpha + 2.0 * g.azimuth(j);
      f.at(i, j) = from_circular({std::polar(1.0, +a), std::polar(1.0, -a)});
    }
  });
  return f;
}

FieldGrid focal_field_model(int input_helicity, double eps,
                            const Envelope& envelope,
                            const GridGeometry& geometry) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw BadEps("focal_field_model: eps must lie in [0, 1)");
  }
  const GridGeometry g = geometry.resolved();
  const double sigma = input_helicity >= 0 ? 1.0 : -1.0;
  const double same = std::sqrt(1.0 - eps * eps);
  FieldGrid f{g, std::vector<JonesVector>(
                     static_cast<std::size_t>(g.n_r) * g.n_phi)};
  detail::parallel_for(g.n_r, [&](int i) {
    const double env = envelope(g.radius(i));
    for (int j = 0; j < g.n_phi; ++j) {
      const Complex flip = eps * env * std::polar(1.0, 2.0 * sigma * g.azimuth(j));
      CircularAmplitudes c;
      if (sigma > 0.0) {
        c.a_l = same * env;
        c.a_r = flip;
      } else {
        c.a_r = same * env;
        c.a_l = flip;
      }
      f.at(i, j) = from_circular(c);
    }
  });
  return f;
}

KDeltaMap kdelta_map(const FieldGrid& field) {
  const GridGeometry& g = field.geom;
  std::ostringstream dead;
  int dead_count = 0;
  for (int i = 0; i < g.n_r && dead_count < 8; ++i) {
    for (int j = 0; j < g.n_phi && dead_count < 8; ++j) {
      if (field.at(i, j).intensity() <= 1e-300) {
        dead << (dead_count ? ", " : "") << "(" << i << "," << j << ")";
        ++dead_count;
      }
    }
  }
  if (dead_count > 0) {
    throw ZeroIntensityRegion("kdelta_map: zero intensity at samples " +
                              dead.str());
  }

  KDeltaMap map{g, std::vector<double>(field.samples.size()),
                std::vector<double>(field.samples.size())};
  const double dphi = g.dphi();
  const double dr = g.dr();

  auto im_inner = [](const JonesVector& a, const JonesVector& b) {
    return inner(a, b).imag();
  };

  detail::parallel_for(g.n_r, [&](int i) {
    const double r = g.radius(i);
    for (int j = 0; j < g.n_phi; ++j) {
      const JonesVector& e = field.at(i, j);
      const double intensity = e.intensity();

      // periodic central difference in phi
      const JonesVector& ep = field.at(i, (j + 1) % g.n_phi);
      const JonesVector& em = field.at(i, (j + g.n_phi - 1) % g.n_phi);
      const JonesVector dphi_e{(ep.ex - em.ex) / (2.0 * dphi),
                               (ep.ey - em.ey) / (2.0 * dphi)};

      JonesVector dr_e;
      if (g.n_r == 1) {
        dr_e = {};
      } else if (i == 0) {
        const JonesVector& up = field.at(i + 1, j);
        dr_e = {(up.ex - e.ex) / dr, (up.ey - e.ey) / dr};
      } else if (i == g.n_r - 1) {
        const JonesVector& dn = field.at(i - 1, j);
        dr_e = {(e.ex - dn.ex) / dr, (e.ey - dn.ey) / dr};
      } else {
        const JonesVector& up = field.at(i + 1, j);
        const JonesVector& dn = field.at(i - 1, j);
        dr_e = {(up.ex - dn.ex) / (2.0 * dr), (up.ey - dn.ey) / (2.0 * dr)};
      }

      const std::size_t idx = static_cast<std::size_t>(i) * g.n_phi + j;
      map.k_r[idx] = im_inner(e, dr_e) / intensity;
      map.k_phi[idx] = im_inner(e, dphi_e) / (r * intensity);
    }
  });
  return map;
}

}  // namespace gpoptics
