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

#include <cstdint>
#include <string>
#include <vector>

#include "gpoptics/field.hpp"
#include "gpoptics/vec3.hpp"

namespace gpoptics {

/// Parsed, validated scenario configuration with all defaults filled in.
/// Configs are a single JSON document, schema_version 1; unknown keys are
/// rejected and numeric fields accept rational string literals ("1/2").
struct ScenarioConfig {
  std::string scenario;  // qplate | vector-vortex | focal-model |
                         // rotating-hwp | custom-path-gp
  std::uint64_t seed = 0;
  std::string out_dir = "gpoptics_out";
  GridGeometry grid;  // resolved

  // beam (qplate / focal-model / rotating-hwp inputs)
  JonesVector input_polarization;
  std::string input_polarization_name = "L";
  Envelope envelope = Envelope::uniform();

  // qplate
  double q = 1.0;
  double alpha0 = 0.0;

  // vector-vortex
  double alpha = 0.0;

  // focal-model
  double eps = 0.2;

  // rotating-hwp
  double omega = 1.0;
  double phase0 = 0.0;
  int time_samples = 256;

  // custom-path-gp
  std::vector<Vec3> path;  // defaults to the +z -> +x -> +y octant
  int helicity = +1;
  int random_paths = 25;
  bool expected_solid_angle_set = false;
  double expected_solid_angle = 0.0;
  bool expected_triangle_phase_set = false;
  double expected_triangle_phase = 0.0;
};

/// One built-in scenario check.
struct Assertion {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct ScenarioReport {
  ScenarioConfig config;
  std::string config_hash;  // 16 hex chars over the effective config
  bool pass = false;
  std::vector<Assertion> assertions;
  std::vector<std::string> artifacts;  // file names written to out_dir
  std::string results_json;            // scenario-specific numbers
};

/// Parses and validates a config file. Throws ConfigError with the
/// offending field named.
ScenarioConfig validate_config(const std::string& path);

/// Same, from in-memory JSON text.
ScenarioConfig config_from_text(const std::string& text);

/// Canonical JSON echo of the effective (defaults-filled) config.
std::string effective_config_json(const ScenarioConfig& cfg);

/// Executes the scenario pipeline, writes artifacts and the report JSON
/// into out_dir (created if needed; overrides cfg.out_dir when non-empty),
/// and returns the report. All of a scenario's built-in assertions must
/// pass for report.pass to be true.
ScenarioReport run_scenario(const ScenarioConfig& cfg,
                            const std::string& out_dir_override = "",
                            bool quiet = true);

/// Report serialization; the timestamp is the only field excluded when
/// include_timestamp is false, so byte-level comparisons are possible.
std::string report_to_json(const ScenarioReport& report,
                           bool include_timestamp);

}  // namespace gpoptics
