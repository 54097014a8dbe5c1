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

#include <iosfwd>
#include <string>

#include "gpoptics/field.hpp"

namespace gpoptics {

// Two interchange formats for field grids:
//  * CSV with header "r,phi,re_ex,im_ex,re_ey,im_ey", one row per sample in
//    (radius, azimuth) order. Geometry is inferred on read (needs n_r >= 2;
//    wavelength is not carried by CSV and defaults to 1).
//  * A versioned JSON envelope that carries the full geometry.
// Round trips reproduce sample values to better than 1e-15 relative.

void write_field_csv(const FieldGrid& field, std::ostream& out);
void write_field_csv(const FieldGrid& field, const std::string& path);
FieldGrid read_field_csv(std::istream& in);
FieldGrid read_field_csv(const std::string& path);

std::string field_to_json(const FieldGrid& field);
void write_field_json(const FieldGrid& field, const std::string& path);
FieldGrid field_from_json(const std::string& text);
FieldGrid read_field_json(const std::string& path);

}  // namespace gpoptics
