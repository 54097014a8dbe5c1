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
#include "gpoptics/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gpoptics/errors.hpp"

namespace gpoptics {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_field_csv(const FieldGrid& field, std::ostream& out) {
  out << "r,phi,re_ex,im_ex,re_ey,im_ey\n";
  const GridGeometry& g = field.geom;
  for (int i = 0; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_phi; ++j) {
      const JonesVector& e = field.at(i, j);
      out << fmt_double(g.radius(i)) << ',' << fmt_double(g.azimuth(j)) << ','
          << fmt_double(e.ex.real()) << ',' << fmt_double(e.ex.imag()) << ','
          << fmt_double(e.ey.real()) << ',' << fmt_double(e.ey.imag()) << '\n';
    }
  }
}

void write_field_csv(const FieldGrid& field, const std::string& path) {
  auto out = open_out(path);
  write_field_csv(field, out);
}

FieldGrid read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("field CSV: empty input");
  if (line.rfind("r,phi,", 0) != 0) {
    throw Error("field CSV: unexpected header '" + line + "'");
  }

  std::vector<double> radii;
  std::vector<double> phis;
  std::vector<JonesVector> samples;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double vals[6];
    std::size_t pos = 0;
    for (int k = 0; k < 6; ++k) {
      std::size_t next = line.find(',', pos);
      const std::string tok =
          line.substr(pos, next == std::string::npos ? next : next - pos);
      vals[k] = std::strtod(tok.c_str(), nullptr);
      if (next == std::string::npos && k < 5) {
        throw Error("field CSV: short row '" + line + "'");
      }
      pos = next + 1;
    }
    if (radii.empty() || vals[0] != radii.back()) radii.push_back(vals[0]);
    if (radii.size() == 1) phis.push_back(vals[1]);
    samples.push_back({{vals[2], vals[3]}, {vals[4], vals[5]}});
  }

  const int n_r = static_cast<int>(radii.size());
  const int n_phi = static_cast<int>(phis.size());
  if (n_r < 2 || n_phi < 16 ||
      samples.size() != static_cast<std::size_t>(n_r) * n_phi) {
    throw Error("field CSV: inconsistent grid shape");
  }
  const double dr = radii[1] - radii[0];
  GridGeometry g;
  g.n_r = n_r;
  g.n_phi = n_phi;
  g.r_min = radii.front() - 0.5 * dr;
  g.r_max = radii.back() + 0.5 * dr;
  g.wavelength = 1.0;
  return {g.resolved(), std::move(samples)};
}

FieldGrid read_field_csv(const std::string& path) {
  auto in = open_in(path);
  return read_field_csv(in);
}

std::string field_to_json(const FieldGrid& field) {
  const GridGeometry& g = field.geom;
  json j;
  j["schema_version"] = 1;
  j["kind"] = "field_grid";
  j["geometry"] = {{"n_r", g.n_r},
                   {"n_phi", g.n_phi},
                   {"r_min", g.r_min},
                   {"r_max", g.r_max},
                   {"wavelength", g.wavelength}};
  json rows = json::array();
  for (const JonesVector& e : field.samples) {
    rows.push_back({e.ex.real(), e.ex.imag(), e.ey.real(), e.ey.imag()});
  }
  j["samples"] = std::move(rows);
  return j.dump();
}

void write_field_json(const FieldGrid& field, const std::string& path) {
  auto out = open_out(path);
  out << field_to_json(field) << '\n';
}

FieldGrid field_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("field JSON: ") + e.what());
  }
  if (j.value("kind", "") != "field_grid" || j.value("schema_version", 0) != 1) {
    throw Error("field JSON: not a version-1 field_grid envelope");
  }
  const json& jg = j.at("geometry");
  GridGeometry g;
  g.n_r = jg.at("n_r").get<int>();
  g.n_phi = jg.at("n_phi").get<int>();
  g.r_min = jg.at("r_min").get<double>();
  g.r_max = jg.at("r_max").get<double>();
  g.wavelength = jg.at("wavelength").get<double>();
  g = g.resolved();

  const json& rows = j.at("samples");
  if (rows.size() != static_cast<std::size_t>(g.n_r) * g.n_phi) {
    throw Error("field JSON: sample count does not match geometry");
  }
  std::vector<JonesVector> samples;
  samples.reserve(rows.size());
  for (const json& row : rows) {
    samples.push_back({{row.at(0).get<double>(), row.at(1).get<double>()},
                       {row.at(2).get<double>(), row.at(3).get<double>()}});
  }
  return {g, std::move(samples)};
}

FieldGrid read_field_json(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return field_from_json(ss.str());
}

}  // namespace gpoptics
