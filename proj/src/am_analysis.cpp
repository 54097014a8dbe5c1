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
#include "gpoptics/am_analysis.hpp"

#include <cmath>
#include <cstddef>

#include <json.hpp>

#include "gpoptics/dft.hpp"
#include "gpoptics/errors.hpp"

namespace gpoptics {

namespace {

using nlohmann::json;

Complex channel_amp(const JonesVector& v, Component c) {
  const CircularAmplitudes amps = to_circular(v);
  return c == Component::L ? amps.a_l : amps.a_r;
}

struct ChannelModes {
  double power = 0.0;                 // radius-integrated component power
  std::vector<double> mode_power;     // per DFT bin, same weights
};

ChannelModes mode_powers(const FieldGrid& f, Component c) {
  const GridGeometry& g = f.geom;
  ChannelModes out;
  out.mode_power.assign(static_cast<std::size_t>(g.n_phi), 0.0);
  std::vector<Complex> row(static_cast<std::size_t>(g.n_phi));
  for (int i = 0; i < g.n_r; ++i) {
    const double w = g.radius(i) * g.dr();
    for (int j = 0; j < g.n_phi; ++j) row[j] = channel_amp(f.at(i, j), c);
    const std::vector<Complex> spec = dft_forward(row);
    for (int k = 0; k < g.n_phi; ++k) {
      const double p = w * std::norm(spec[k]);
      out.mode_power[k] += p;
      out.power += p;
    }
  }
  return out;
}

double mean_mode(const ChannelModes& m, int n_phi) {
  if (m.power <= 0.0) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < n_phi; ++k) {
    acc += dft_bin_to_mode(k, n_phi) * m.mode_power[k];
  }
  return acc / m.power;
}

}  // namespace

std::vector<Complex> channel_loop(const FieldGrid& field, Component component,
                                  int radius_index) {
  const GridGeometry& g = field.geom;
  std::vector<Complex> loop(static_cast<std::size_t>(g.n_phi));
  for (int j = 0; j < g.n_phi; ++j) {
    loop[j] = channel_amp(field.at(radius_index, j), component);
  }
  return loop;
}

double component_power(const FieldGrid& field, Component component) {
  const GridGeometry& g = field.geom;
  double p = 0.0;
  for (int i = 0; i < g.n_r; ++i) {
    const double w = g.cell_weight(i);
    for (int j = 0; j < g.n_phi; ++j) {
      p += w * std::norm(channel_amp(field.at(i, j), component));
    }
  }
  return p;
}

OAMSpectrum azimuthal_spectrum(const FieldGrid& field, Component component,
                               double power_floor) {
  const ChannelModes modes = mode_powers(field, component);
  if (modes.power <= 0.0) {
    throw EmptyComponent(std::string("azimuthal_spectrum: component ") +
                         component_name(component) + " carries no power");
  }
  OAMSpectrum s;
  s.component = component;
  s.mean_l = mean_mode(modes, field.geom.n_phi);
  double kept = 0.0;
  for (int k = 0; k < field.geom.n_phi; ++k) {
    const double frac = modes.mode_power[k] / modes.power;
    if (frac >= power_floor) {
      s.powers[dft_bin_to_mode(k, field.geom.n_phi)] = frac;
      kept += frac;
    }
  }
  s.residual = 1.0 - kept;
  if (s.residual < 0.0) s.residual = 0.0;
  return s;
}

double winding_of_loop(const std::vector<Complex>& amplitudes) {
  const int n = static_cast<int>(amplitudes.size());
  double max_a = 0.0, min_a = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(amplitudes[j]);
    if (j == 0) {
      max_a = min_a = a;
    } else {
      if (a > max_a) max_a = a;
      if (a < min_a) min_a = a;
    }
  }
  if (!(min_a > 1e-9 * max_a) || max_a == 0.0) {
    throw NearZeroAmplitude(
        "winding_number: component amplitude touches zero on the loop");
  }

  double sum = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    const double jump =
        principal_phase(std::arg(amplitudes[j + 1]) - std::arg(amplitudes[j]));
    if (std::abs(jump) > 0.5 * kPi) {
      throw Undersampled(
          "winding_number: adjacent-sample phase jump exceeds pi/2 at sample " +
          std::to_string(j));
    }
    sum += jump;
  }
  const double closing =
      principal_phase(std::arg(amplitudes[0]) - std::arg(amplitudes[n - 1]));
  if (std::abs(closing) <= 0.5 * kPi) {
    return (sum + closing) / kTwoPi;  // exact integer for continuous loops
  }
  // The loop is discontinuous across the phi = 0 seam (the branch cut of a
  // non-integer charge). Report the phase slope over the open arc instead of
  // snapping to the nearest integer.
  const double dphi = kTwoPi / n;
  return sum / (kTwoPi - dphi);
}

double winding_number(const FieldGrid& field, Component component,
                      int radius_index) {
  return winding_of_loop(channel_loop(field, component, radius_index));
}

AMReport am_report(const FieldGrid& field) {
  const ChannelModes left = mode_powers(field, Component::L);
  const ChannelModes right = mode_powers(field, Component::R);
  const double total = left.power + right.power;
  if (total <= 1e-300) throw ZeroPower("am_report: field carries no power");

  AMReport r;
  r.left.power_fraction = left.power / total;
  r.right.power_fraction = right.power / total;
  r.left.mean_l = mean_mode(left, field.geom.n_phi);
  r.right.mean_l = mean_mode(right, field.geom.n_phi);
  r.spin_per_photon = kSpinOfLeft * r.left.power_fraction +
                      kSpinOfRight * r.right.power_fraction;
  r.oam_per_photon = r.left.power_fraction * r.left.mean_l +
                     r.right.power_fraction * r.right.mean_l;
  r.total_per_photon = r.spin_per_photon + r.oam_per_photon;
  return r;
}

HolonomyReport holonomy_check(const FieldGrid& before, const FieldGrid& after) {
  if (!(before.geom == after.geom)) {
    throw GeometryMismatch("holonomy_check: grids have different geometry");
  }
  const AMReport a = am_report(before);
  const AMReport b = am_report(after);

  HolonomyReport h;
  h.delta_oam = b.oam_per_photon - a.oam_per_photon;
  h.delta_spin = b.spin_per_photon - a.spin_per_photon;
  h.delta_total = b.total_per_photon - a.total_per_photon;

  const Component input_channel =
      a.spin_per_photon >= 0.0 ? Component::L : Component::R;
  const Component flipped =
      input_channel == Component::L ? Component::R : Component::L;
  const double flipped_fraction = flipped == Component::L
                                      ? b.left.power_fraction
                                      : b.right.power_fraction;
  if (flipped_fraction < 1e-12) {
    // Nothing was flipped (e.g. identical fields): no geometric-phase
    // charge to speak of.
    h.gp_charge = 0.0;
    h.flipped_delta_oam = 0.0;
    h.equivalence_holds = true;
    return h;
  }

  const int mid = before.geom.n_r / 2;
  const std::vector<Complex> out_loop = channel_loop(after, flipped, mid);
  const std::vector<Complex> in_loop = channel_loop(before, input_channel, mid);
  std::vector<Complex> relative(out_loop.size());
  for (std::size_t j = 0; j < out_loop.size(); ++j) {
    relative[j] = out_loop[j] * std::conj(in_loop[j]);
  }
  h.gp_charge = winding_of_loop(relative);

  const double before_mean =
      input_channel == Component::L ? a.left.mean_l : a.right.mean_l;
  const double after_mean =
      flipped == Component::L ? b.left.mean_l : b.right.mean_l;
  h.flipped_delta_oam = after_mean - before_mean;

  const bool integral = std::abs(h.gp_charge - std::round(h.gp_charge)) < 1e-3;
  h.tolerance = integral ? 1e-6 : 1e-2;
  h.equivalence_holds =
      std::abs(h.flipped_delta_oam - h.gp_charge) < h.tolerance;
  return h;
}

std::string OAMSpectrum::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "oam_spectrum";
  j["component"] = component_name(component);
  json p = json::object();
  for (const auto& [l, frac] : powers) p[std::to_string(l)] = frac;
  j["powers"] = std::move(p);
  j["residual"] = residual;
  j["mean_l"] = mean_l;
  return j.dump();
}

std::string AMReport::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "am_report";
  j["spin_per_photon"] = spin_per_photon;
  j["oam_per_photon"] = oam_per_photon;
  j["total_per_photon"] = total_per_photon;
  j["left"] = {{"power_fraction", left.power_fraction}, {"mean_l", left.mean_l}};
  j["right"] = {{"power_fraction", right.power_fraction},
                {"mean_l", right.mean_l}};
  return j.dump();
}

std::string HolonomyReport::to_json() const {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "holonomy_report";
  j["delta_oam"] = delta_oam;
  j["delta_spin"] = delta_spin;
  j["delta_total"] = delta_total;
  j["gp_charge"] = gp_charge;
  j["flipped_delta_oam"] = flipped_delta_oam;
  j["tolerance"] = tolerance;
  j["equivalence_holds"] = equivalence_holds;
  return j.dump();
}

}  // namespace gpoptics
