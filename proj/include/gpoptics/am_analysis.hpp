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

#include <map>
#include <string>
#include <vector>

#include "gpoptics/field.hpp"

namespace gpoptics {

/// Circular field component selector.
enum class Component { L, R };

inline const char* component_name(Component c) {
  return c == Component::L ? "L" : "R";
}

/// Azimuthal mode content of one circular component. `powers` keeps the
/// modes whose fraction of the component power is at least the floor used
/// when computing the spectrum; everything below it is summed into
/// `residual` (nonzero in practice only for fields that are discontinuous
/// across the phi = 0 seam). mean_l is taken over all modes, not just the
/// stored ones.
struct OAMSpectrum {
  Component component = Component::L;
  std::map<int, double> powers;
  double residual = 0.0;
  double mean_l = 0.0;

  std::string to_json() const;
};

/// Radius-integrated (weight r dr) azimuthal DFT spectrum of one circular
/// component, normalized by the component power. Modes below power_floor
/// land in `residual`. Throws EmptyComponent if the component power
/// vanishes.
OAMSpectrum azimuthal_spectrum(const FieldGrid& field, Component component,
                               double power_floor = 1e-4);

/// Topological charge of one circular component on the azimuthal loop at
/// the given radius index: accumulated nearest-branch phase change divided
/// by 2*pi. Continuous fields give integers to machine precision; a field
/// discontinuous across the phi = 0 seam (its closing jump exceeds pi/2)
/// is reported as the real slope estimated over the open arc, so
/// non-integer charges come out as non-integers.
/// Throws Undersampled when an interior jump exceeds pi/2 and
/// NearZeroAmplitude when min |a| <= 1e-9 max |a| on the loop.
double winding_number(const FieldGrid& field, Component component,
                      int radius_index);

/// Same winding estimate for a raw azimuthal sample loop.
double winding_of_loop(const std::vector<Complex>& amplitudes);

/// Paraxial per-photon angular-momentum bookkeeping in hbar units:
/// spin = (P_L - P_R)/P, oam = power-weighted mean azimuthal mode index,
/// total = spin + oam by construction.
struct AMReport {
  double spin_per_photon = 0.0;
  double oam_per_photon = 0.0;
  double total_per_photon = 0.0;
  struct Channel {
    double power_fraction = 0.0;
    double mean_l = 0.0;
  };
  Channel left, right;

  std::string to_json() const;
};

/// Throws ZeroPower when the grid carries no power.
AMReport am_report(const FieldGrid& field);

/// Before/after angular-momentum balance between two fields on the same
/// grid, plus the geometric-phase charge: the winding of the relative phase
/// between the spin-flipped output channel and the dominant input channel.
/// equivalence_holds reports |flipped-channel OAM shift - gp_charge| <
/// tolerance, with tolerance 1e-6 for continuous fields and 1e-2 when the
/// flipped channel is discontinuous (non-integer winding).
struct HolonomyReport {
  double delta_oam = 0.0;
  double delta_spin = 0.0;
  double delta_total = 0.0;
  double gp_charge = 0.0;
  double flipped_delta_oam = 0.0;
  double tolerance = 1e-6;
  bool equivalence_holds = true;

  std::string to_json() const;
};

/// Throws GeometryMismatch or ZeroPower.
HolonomyReport holonomy_check(const FieldGrid& before, const FieldGrid& after);

/// Azimuthal loop of one circular component at a radius index.
std::vector<Complex> channel_loop(const FieldGrid& field, Component component,
                                  int radius_index);

/// Power carried by one circular component (same cell weights as
/// FieldGrid::total_power).
double component_power(const FieldGrid& field, Component component);

}  // namespace gpoptics
