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
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "gpoptics/errors.hpp"
#include "gpoptics/scenario.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// Exit codes: 0 success, 1 assertion failure, 2 config error, 3 internal.
enum ExitCode { kOk = 0, kAssertionsFailed = 1, kConfigError = 2, kInternal = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gpoptics — geometric phases in polarization optics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool quiet = false;

  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "scenario config JSON")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_flag("--quiet", quiet, "suppress per-assertion output");

  CLI::App* validate =
      app.add_subcommand("validate", "parse and echo a scenario config");
  validate->add_option("config", config_path, "scenario config JSON")
      ->required();

  app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (app.got_subcommand("version")) {
      std::printf("gpoptics %s\n", kVersion);
      return kOk;
    }
    if (app.got_subcommand("validate")) {
      const gpoptics::ScenarioConfig cfg = gpoptics::validate_config(config_path);
      std::printf("%s\n", gpoptics::effective_config_json(cfg).c_str());
      return kOk;
    }
    // run
    const gpoptics::ScenarioConfig cfg = gpoptics::validate_config(config_path);
    const gpoptics::ScenarioReport report =
        gpoptics::run_scenario(cfg, out_dir, quiet);
    return report.pass ? kOk : kAssertionsFailed;
  } catch (const gpoptics::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
}
