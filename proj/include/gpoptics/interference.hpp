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

#include <string>
#include <vector>

#include "gpoptics/field.hpp"

namespace gpoptics {

/// Nonnegative intensity samples on the same polar grid as FieldGrid.
struct IntensityPattern {
  GridGeometry geom;
  std::vector<double> values;

  double at(int i_r, int i_phi) const {
    return values[static_cast<std::size_t>(i_r) * geom.n_phi + i_phi];
  }
};

/// Reference beam against which an output field is interfered. The
/// copolarized projection of the field onto `polarization` is superposed
/// with envelope(r) e^{i l_ref phi} times the reference phase
///   relative_phase
///   + 2 pi tilt_cycles * x / (2 r_max)            (x = r cos phi)
///   + 2 pi curvature_cycles * (r / r_max)^2.
/// A nonzero curvature models a copropagating Gaussian reference slightly
/// out of focus; it turns the fringes of a vortex into spirals, which is
/// what makes the charge sign readable from the pattern.
struct ReferenceBeam {
  Envelope envelope = Envelope::gaussian(1.0);
  int vortex_charge = 0;
  JonesVector polarization = linear_x();
  double relative_phase = 0.0;
  double tilt_cycles = 0.0;
  double curvature_cycles = 0.0;
};

/// |<p|E_field> + u_ref|^2 per sample. Throws GeometryMismatch if the
/// pattern geometry cannot host the field.
IntensityPattern superpose(const FieldGrid& field, const ReferenceBeam& ref);

/// Reads the signed topological charge back from an interference pattern
/// made by `superpose` with an untilted copolarized reference. The count is
/// the dominant azimuthal frequency of the fringe trace on the mid-radius
/// circle (r_min + r_max)/2; the sign comes from the spiral handedness
/// (fringe angle compared at two radii) when the reference has curvature,
/// falling back to the known reference phase convention otherwise.
/// Throws AmbiguousPattern when no single azimuthal frequency dominates
/// (dominant bin < 2x next) or the sign is not determinable.
int charge_from_pattern(const IntensityPattern& pattern,
                        const ReferenceBeam& ref);

/// PGM export with max-value normalization; bits must be 8 or 16, binary
/// selects P5 vs plain P2. Rows run over radius, columns over azimuth. The
/// scaling is recorded in a sidecar JSON next to the image
/// ("<path>.json").
void write_pattern_pgm(const IntensityPattern& pattern, const std::string& path,
                       int bits = 8, bool binary = true);

/// CSV export with header r,phi,intensity.
void write_pattern_csv(const IntensityPattern& pattern,
                       const std::string& path);

}  // namespace gpoptics
