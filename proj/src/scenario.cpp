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
#include "gpoptics/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gpoptics/am_analysis.hpp"
#include "gpoptics/dft.hpp"
#include "gpoptics/errors.hpp"
#include "gpoptics/field_io.hpp"
#include "gpoptics/interference.hpp"
#include "gpoptics/sphere.hpp"

namespace gpoptics {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// config parsing

const char* const kScenarios[] = {"qplate", "vector-vortex", "focal-model",
                                  "rotating-hwp", "custom-path-gp"};

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

/// Numeric field that also accepts rational string literals like "1/2".
double parse_real(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t slash = s.find('/');
    char* end = nullptr;
    if (slash != std::string::npos) {
      const std::string num = s.substr(0, slash);
      const std::string den = s.substr(slash + 1);
      const double a = std::strtod(num.c_str(), &end);
      if (end == num.c_str() || *end != '\0') {
        throw ConfigError(where + ": bad rational literal '" + s + "'");
      }
      const double b = std::strtod(den.c_str(), &end);
      if (end == den.c_str() || *end != '\0' || b == 0.0) {
        throw ConfigError(where + ": bad rational literal '" + s + "'");
      }
      return a / b;
    }
    const double a = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
      throw ConfigError(where + ": bad numeric literal '" + s + "'");
    }
    return a;
  }
  throw ConfigError(where + ": expected a number or numeric string");
}

int parse_int(const json& v, const std::string& where) {
  const double r = parse_real(v, where);
  const double rounded = std::round(r);
  if (std::abs(r - rounded) > 1e-12) {
    throw ConfigError(where + ": expected an integer");
  }
  return static_cast<int>(rounded);
}

JonesVector parse_polarization(const json& v, std::string* name,
                               const std::string& where) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    *name = s;
    if (s == "L") return left_circular();
    if (s == "R") return right_circular();
    if (s == "x" || s == "H") return linear_x();
    if (s == "y" || s == "V") return linear_y();
    if (s == "45" || s == "D") return linear_at(kPi / 4.0);
    if (s == "-45" || s == "A") return linear_at(-kPi / 4.0);
    throw ConfigError(where + ": unknown polarization '" + s +
                      "' (use L, R, x, y, 45, -45 or a 4-number array)");
  }
  if (v.is_array() && v.size() == 4) {
    JonesVector jv{{parse_real(v[0], where), parse_real(v[1], where)},
                   {parse_real(v[2], where), parse_real(v[3], where)}};
    const double inten = jv.intensity();
    if (inten <= 0.0) throw ConfigError(where + ": polarization has zero intensity");
    const double inv = 1.0 / std::sqrt(inten);
    *name = "custom";
    return jv * Complex{inv, 0.0};
  }
  throw ConfigError(where + ": expected a polarization name or 4-number array");
}

Envelope parse_envelope(const json& v, const std::string& where) {
  check_keys(v, {"kind", "waist", "r0", "width"}, where);
  const std::string kind = v.value("kind", "uniform");
  if (kind == "uniform") return Envelope::uniform();
  if (kind == "gaussian") {
    Envelope e = Envelope::gaussian(1.0);
    if (v.contains("waist")) e.waist = parse_real(v["waist"], where + ".waist");
    if (!(e.waist > 0.0)) throw ConfigError(where + ".waist must be > 0");
    return e;
  }
  if (kind == "ring") {
    Envelope e = Envelope::ring(0.5, 0.2);
    if (v.contains("r0")) e.r0 = parse_real(v["r0"], where + ".r0");
    if (v.contains("width")) e.width = parse_real(v["width"], where + ".width");
    if (!(e.width > 0.0)) throw ConfigError(where + ".width must be > 0");
    return e;
  }
  throw ConfigError(where + ".kind: unknown envelope '" + kind + "'");
}

std::vector<Vec3> default_octant() {
  return {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string iso_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

json envelope_json(const Envelope& e) {
  switch (e.kind) {
    case Envelope::Kind::Gaussian:
      return {{"kind", "gaussian"}, {"waist", e.waist}};
    case Envelope::Kind::Ring:
      return {{"kind", "ring"}, {"r0", e.r0}, {"width", e.width}};
    case Envelope::Kind::Uniform:
    default:
      return {{"kind", "uniform"}};
  }
}

// ---------------------------------------------------------------------------
// assertion helpers

void push_close(std::vector<Assertion>& list, const std::string& name,
                double value, double expected, double tol) {
  list.push_back({name, std::abs(value - expected) <= tol, value, expected, tol});
}

void push_at_least(std::vector<Assertion>& list, const std::string& name,
                   double value, double threshold) {
  list.push_back({name, value >= threshold, value, threshold, 0.0});
}

int input_helicity_of(const ScenarioConfig& cfg) {
  const StokesVector s = stokes_of(cfg.input_polarization);
  const double spin = s.s3 / s.s0;
  if (std::abs(spin) < 0.999) {
    throw ConfigError("scenario '" + cfg.scenario +
                      "' requires a circular input polarization (L or R)");
  }
  return spin > 0.0 ? +1 : -1;
}

Component flipped_of(int helicity) {
  return helicity > 0 ? Component::R : Component::L;
}

double power_at_mode(const OAMSpectrum& s, int l) {
  const auto it = s.powers.find(l);
  return it == s.powers.end() ? 0.0 : it->second;
}

bool is_integral(double x) { return std::abs(x - std::round(x)) < 1e-9; }

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Vec3 v{n01(rng), n01(rng), n01(rng)};
  while (v.norm() < 1e-6) v = {n01(rng), n01(rng), n01(rng)};
  return v.normalized();
}

/// Random closed geodesic path with 3..6 vertices, consecutive angles well
/// inside (0, pi/2) and fan triangles away from the degenerate branch.
SpherePath random_geodesic_loop(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_verts(3, 6);
  while (true) {
    const int n = n_verts(rng);
    std::vector<Vec3> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v.push_back(random_unit(rng));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const double ang = angle_between(v[i], v[(i + 1) % n]);
      if (ang < 0.05 || ang > kPi / 2.0 - 0.05) ok = false;
    }
    for (int i = 1; i + 1 < n && ok; ++i) {
      const double den =
          1.0 + dot(v[0], v[i]) + dot(v[i], v[i + 1]) + dot(v[i + 1], v[0]);
      if (den < 0.2) ok = false;
    }
    if (ok) return SpherePath::closed_loop(std::move(v));
  }
}

// ---------------------------------------------------------------------------
// scenario bodies (fill assertions + results, return artifacts to write)

struct ArtifactSet {
  const FieldGrid* output_field = nullptr;
  const FieldGrid* input_field = nullptr;
  std::vector<std::pair<std::string, std::string>> json_docs;  // name -> text
  const IntensityPattern* pattern = nullptr;
};

void run_qplate(const ScenarioConfig& cfg, std::vector<Assertion>& asserts,
                json& results, FieldGrid& in_store, FieldGrid& out_store,
                IntensityPattern& pattern_store, ArtifactSet& artifacts) {
  const int sigma = input_helicity_of(cfg);
  const QPlateSpec plate{cfg.q, cfg.alpha0};
  const double charge = 2.0 * cfg.q * sigma;
  const bool integral = is_integral(2.0 * cfg.q);

  in_store = synthesize_beam({cfg.envelope, 0, cfg.input_polarization}, cfg.grid);
  out_store = apply_element_pointwise(in_store, qplate_family(plate));

  const Component flipped = flipped_of(sigma);
  const int mid = cfg.grid.n_r / 2;

  const double w = winding_number(out_store, flipped, mid);
  push_close(asserts, "flipped_channel_winding", w, charge,
             integral ? 1e-6 : 1e-2);

  const OAMSpectrum spec = azimuthal_spectrum(out_store, flipped);
  if (integral) {
    push_at_least(asserts, "flipped_channel_mode_power",
                  power_at_mode(spec, static_cast<int>(std::llround(charge))),
                  0.999);
  }

  const AMReport before = am_report(in_store);
  const AMReport after = am_report(out_store);
  // The exchange with the plate is sigma * (2q - 2) per photon, exact for
  // integral 2q; a branch-cut field's mean mode carries O(1/n_phi) leakage
  // bias, hence the looser tolerance there.
  const double expected_imbalance = sigma * (2.0 * cfg.q - 2.0);
  push_close(asserts, "delta_total_per_photon",
             after.total_per_photon - before.total_per_photon,
             expected_imbalance, integral ? 1e-9 : 1e-2);

  const HolonomyReport hol = holonomy_check(in_store, out_store);
  push_close(asserts, "holonomy_equivalence",
             hol.flipped_delta_oam - hol.gp_charge, 0.0, hol.tolerance);

  // Helicity sign control: the mirrored input must give the mirrored charge.
  {
    const JonesVector mirrored =
        sigma > 0 ? right_circular() : left_circular();
    FieldGrid in2 = synthesize_beam({cfg.envelope, 0, mirrored}, cfg.grid);
    FieldGrid out2 = apply_element_pointwise(in2, qplate_family(plate));
    const double w2 = winding_number(out2, flipped_of(-sigma), mid);
    push_close(asserts, "helicity_sign_control", w + w2, 0.0, 1e-9);
    results["winding_mirrored_input"] = w2;
  }

  // Interference readout of the flipped channel.
  ReferenceBeam ref;
  ref.polarization = sigma > 0 ? right_circular() : left_circular();
  ref.curvature_cycles = 1.0;
  pattern_store = superpose(out_store, ref);
  if (integral) {
    const int read = charge_from_pattern(pattern_store, ref);
    push_close(asserts, "pattern_charge", read, charge, 0.0);
    results["pattern_charge"] = read;
  }

  results["q"] = cfg.q;
  results["input_helicity"] = sigma;
  results["flipped_channel"] = component_name(flipped);
  results["winding"] = w;
  results["delta_total_per_photon"] =
      after.total_per_photon - before.total_per_photon;

  artifacts.input_field = &in_store;
  artifacts.output_field = &out_store;
  artifacts.pattern = &pattern_store;
  artifacts.json_docs.emplace_back("spectrum_flipped", spec.to_json());
  artifacts.json_docs.emplace_back("am_before", before.to_json());
  artifacts.json_docs.emplace_back("am_after", after.to_json());
  artifacts.json_docs.emplace_back("holonomy", hol.to_json());
}

void run_vector_vortex(const ScenarioConfig& cfg,
                       std::vector<Assertion>& asserts, json& results,
                       FieldGrid& out_store, IntensityPattern& pattern_store,
                       ArtifactSet& artifacts) {
  out_store = vector_vortex_beam(cfg.alpha, cfg.grid);
  const int mid = cfg.grid.n_r / 2;

  const double w_l = winding_number(out_store, Component::L, mid);
  const double w_r = winding_number(out_store, Component::R, mid);
  push_close(asserts, "left_channel_winding", w_l, +2.0, 1e-6);
  push_close(asserts, "right_channel_winding", w_r, -2.0, 1e-6);

  // Local state at phi = 0 must be the alpha-parameterized linear state.
  const JonesVector expected =
      from_circular({std::polar(1.0, +cfg.alpha), std::polar(1.0, -cfg.alpha)});
  const JonesVector got = out_store.at(mid, 0);
  const double mismatch =
      std::sqrt(std::norm(got.ex - expected.ex) + std::norm(got.ey - expected.ey)) /
      std::sqrt(expected.intensity());
  push_close(asserts, "phi0_polarization_mismatch", mismatch, 0.0, 1e-9);

  // The two equal-weight counter-rotating channels cancel in the full-field
  // propagation-vector map.
  const KDeltaMap kmap = kdelta_map(out_store);
  double max_kphi = 0.0;
  for (double k : kmap.k_phi) max_kphi = std::max(max_kphi, std::abs(k));
  push_close(asserts, "full_field_kphi_cancellation", max_kphi, 0.0, 1e-9);

  ReferenceBeam ref;
  ref.polarization = left_circular();
  ref.curvature_cycles = 1.0;
  pattern_store = superpose(out_store, ref);
  const int read = charge_from_pattern(pattern_store, ref);
  push_close(asserts, "pattern_charge_left_channel", read, +2.0, 0.0);

  const OAMSpectrum spec_l = azimuthal_spectrum(out_store, Component::L);
  const OAMSpectrum spec_r = azimuthal_spectrum(out_store, Component::R);

  results["alpha"] = cfg.alpha;
  results["winding_left"] = w_l;
  results["winding_right"] = w_r;
  results["max_abs_kphi"] = max_kphi;
  results["pattern_charge"] = read;

  artifacts.output_field = &out_store;
  artifacts.pattern = &pattern_store;
  artifacts.json_docs.emplace_back("spectrum_L", spec_l.to_json());
  artifacts.json_docs.emplace_back("spectrum_R", spec_r.to_json());
}

void run_focal_model(const ScenarioConfig& cfg, std::vector<Assertion>& asserts,
                     json& results, FieldGrid& in_store, FieldGrid& out_store,
                     ArtifactSet& artifacts) {
  const int sigma = input_helicity_of(cfg);
  in_store = synthesize_beam({cfg.envelope, 0, cfg.input_polarization}, cfg.grid);
  out_store = focal_field_model(sigma, cfg.eps, cfg.envelope, cfg.grid);

  const Component same = sigma > 0 ? Component::L : Component::R;
  const Component flipped = flipped_of(sigma);
  const int mid = cfg.grid.n_r / 2;

  const double w_same = winding_number(out_store, same, mid);
  push_close(asserts, "same_spin_winding", w_same, 0.0, 1e-6);
  results["winding_same"] = w_same;

  const double p_flip = component_power(out_store, flipped);
  const double p_total = out_store.total_power();
  push_close(asserts, "opposite_spin_power_fraction", p_flip / p_total,
             cfg.eps * cfg.eps, 1e-12);

  const HolonomyReport hol = holonomy_check(in_store, out_store);
  push_close(asserts, "holonomy_equivalence",
             hol.flipped_delta_oam - hol.gp_charge, 0.0, 1e-6);
  push_close(asserts, "delta_total_per_photon", hol.delta_total, 0.0, 1e-9);

  results["eps"] = cfg.eps;
  results["input_helicity"] = sigma;
  results["power_fraction_flipped"] = p_flip / p_total;
  results["gp_charge"] = hol.gp_charge;

  if (cfg.eps > 0.0) {
    const double w_flip = winding_number(out_store, flipped, mid);
    push_close(asserts, "opposite_spin_winding", w_flip, 2.0 * sigma, 1e-6);
    results["winding_flipped"] = w_flip;
    artifacts.json_docs.emplace_back(
        "spectrum_flipped", azimuthal_spectrum(out_store, flipped).to_json());
  }

  artifacts.input_field = &in_store;
  artifacts.output_field = &out_store;
  artifacts.json_docs.emplace_back("holonomy", hol.to_json());
}

void run_rotating_hwp(const ScenarioConfig& cfg, std::vector<Assertion>& asserts,
                      json& results, std::string& series_csv) {
  if (cfg.omega == 0.0) {
    throw ConfigError("rotating-hwp: omega must be nonzero");
  }
  const int sigma = input_helicity_of(cfg);
  const RotatingHWPSpec spec{cfg.omega, cfg.phase0};
  const int n = cfg.time_samples;
  const double period = kTwoPi / std::abs(cfg.omega);

  std::vector<Complex> flipped_series(static_cast<std::size_t>(n));
  std::ostringstream csv;
  csv << "t,re_a_l,im_a_l,re_a_r,im_a_r\n";
  char buf[160];
  for (int k = 0; k < n; ++k) {
    const double t = period * k / n;
    const JonesVector out =
        rotating_hwp_matrix(spec, t).apply(cfg.input_polarization);
    const CircularAmplitudes c = to_circular(out);
    flipped_series[k] = sigma > 0 ? c.a_r : c.a_l;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", t,
                  c.a_l.real(), c.a_l.imag(), c.a_r.real(), c.a_r.imag());
    csv << buf;
  }
  series_csv = csv.str();

  const std::vector<Complex> spec_t = dft_forward(flipped_series);
  double total = 0.0;
  for (const Complex& c : spec_t) total += std::norm(c);
  const int expected_mode =
      2 * sigma * (cfg.omega > 0.0 ? 1 : -1);  // frequency offset 2*omega
  const int bin = expected_mode >= 0 ? expected_mode : expected_mode + n;
  const double frac = std::norm(spec_t[static_cast<std::size_t>(bin)]) / total;
  push_at_least(asserts, "flipped_sideband_power_at_2omega", frac, 0.999);

  results["omega"] = cfg.omega;
  results["time_samples"] = n;
  results["expected_mode"] = expected_mode;
  results["sideband_power_fraction"] = frac;
}

void run_custom_path(const ScenarioConfig& cfg, std::vector<Assertion>& asserts,
                     json& results) {
  const SpherePath path = SpherePath::closed_loop(cfg.path);
  const double omega = path_solid_angle(path);

  // transport holonomy against the closed-form spin-redirection phase
  for (int helicity : {+1, -1}) {
    const TransportedFrame start = circular_frame(path.vertices.front(), helicity);
    const TransportedFrame end = parallel_transport(start, path);
    const double measured = transport_phase(start, end);
    const double predicted = srp_phase(omega, helicity);
    push_close(asserts,
               std::string("transport_vs_srp_helicity_") +
                   (helicity > 0 ? "plus" : "minus"),
               principal_phase(measured - predicted), 0.0, 1e-6);
    if (helicity == cfg.helicity) results["transport_phase"] = measured;
  }

  if (cfg.expected_solid_angle_set) {
    push_close(asserts, "solid_angle", omega, cfg.expected_solid_angle, 1e-9);
  }

  // Pancharatnam consistency on a fixed state triple: the loop sum of
  // pairwise connections must equal the geodesic-triangle phase.
  const JonesVector s1 = linear_x();
  const JonesVector s2 = linear_at(kPi / 4.0);
  const JonesVector s3 = left_circular();
  const double loop_sum = pancharatnam_connection(s1, s2) +
                          pancharatnam_connection(s2, s3) +
                          pancharatnam_connection(s3, s1);
  const double triangle = pancharatnam_triangle_phase(
      poincare_of(s1), poincare_of(s2), poincare_of(s3));
  push_close(asserts, "pancharatnam_loop_vs_triangle",
             principal_phase(loop_sum - triangle), 0.0, 1e-9);
  if (cfg.expected_triangle_phase_set) {
    push_close(asserts, "triangle_phase", triangle,
               cfg.expected_triangle_phase, 1e-9);
  }

  // The azimuthal cycle law is linear and unwrapped: 2*pi maps to 4*pi.
  push_close(asserts, "azimuthal_cycle_at_2pi",
             azimuthal_cycle_solid_angle(kTwoPi), 2.0 * kTwoPi, 0.0);

  // Seeded sweep over random geodesic loops.
  std::mt19937_64 rng(cfg.seed);
  double worst = 0.0;
  for (int k = 0; k < cfg.random_paths; ++k) {
    const SpherePath p = random_geodesic_loop(rng);
    const double om = path_solid_angle(p);
    for (int helicity : {+1, -1}) {
      const TransportedFrame f0 = circular_frame(p.vertices.front(), helicity);
      const TransportedFrame f1 = parallel_transport(f0, p);
      const double diff =
          principal_phase(transport_phase(f0, f1) - srp_phase(om, helicity));
      worst = std::max(worst, std::abs(diff));
    }
  }
  push_close(asserts, "random_paths_worst_holonomy_error", worst, 0.0, 1e-6);

  results["solid_angle"] = omega;
  results["triangle_phase"] = triangle;
  results["pancharatnam_loop_sum"] = loop_sum;
  results["random_paths"] = cfg.random_paths;
  results["random_paths_worst_error"] = worst;
}

}  // namespace

// ---------------------------------------------------------------------------

ScenarioConfig config_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  check_keys(j,
             {"schema_version", "scenario", "seed", "out_dir", "grid", "beam",
              "element", "vortex", "focal", "rotation", "path"},
             "config");

  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1) {
    throw ConfigError("config requires \"schema_version\": 1");
  }
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    throw ConfigError("config requires a \"scenario\" string");
  }

  ScenarioConfig cfg;
  cfg.scenario = j["scenario"].get<std::string>();
  if (std::find_if(std::begin(kScenarios), std::end(kScenarios),
                   [&](const char* s) { return cfg.scenario == s; }) ==
      std::end(kScenarios)) {
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw ConfigError("seed: expected a nonnegative integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ConfigError("out_dir: expected a string");
    cfg.out_dir = j["out_dir"].get<std::string>();
  }

  GridGeometry g;
  if (j.contains("grid")) {
    const json& jg = j["grid"];
    check_keys(jg, {"n_r", "n_phi", "r_min", "r_max", "wavelength"}, "grid");
    if (jg.contains("n_r")) g.n_r = parse_int(jg["n_r"], "grid.n_r");
    if (jg.contains("n_phi")) g.n_phi = parse_int(jg["n_phi"], "grid.n_phi");
    if (jg.contains("r_max")) g.r_max = parse_real(jg["r_max"], "grid.r_max");
    if (jg.contains("r_min")) g.r_min = parse_real(jg["r_min"], "grid.r_min");
    if (jg.contains("wavelength")) {
      g.wavelength = parse_real(jg["wavelength"], "grid.wavelength");
    }
  }
  try {
    cfg.grid = g.resolved();
  } catch (const BadGeometry& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  cfg.input_polarization = left_circular();
  if (j.contains("beam")) {
    const json& jb = j["beam"];
    check_keys(jb, {"polarization", "envelope"}, "beam");
    if (jb.contains("polarization")) {
      cfg.input_polarization = parse_polarization(
          jb["polarization"], &cfg.input_polarization_name, "beam.polarization");
    }
    if (jb.contains("envelope")) {
      cfg.envelope = parse_envelope(jb["envelope"], "beam.envelope");
    }
  }

  if (j.contains("element")) {
    const json& je = j["element"];
    check_keys(je, {"q", "alpha0"}, "element");
    if (je.contains("q")) cfg.q = parse_real(je["q"], "element.q");
    if (je.contains("alpha0")) {
      cfg.alpha0 = parse_real(je["alpha0"], "element.alpha0");
    }
  }
  if (j.contains("vortex")) {
    const json& jv = j["vortex"];
    check_keys(jv, {"alpha"}, "vortex");
    if (jv.contains("alpha")) cfg.alpha = parse_real(jv["alpha"], "vortex.alpha");
  }
  if (j.contains("focal")) {
    const json& jf = j["focal"];
    check_keys(jf, {"eps"}, "focal");
    if (jf.contains("eps")) cfg.eps = parse_real(jf["eps"], "focal.eps");
    if (!(cfg.eps >= 0.0 && cfg.eps < 1.0)) {
      throw ConfigError("focal.eps must lie in [0, 1)");
    }
  }
  if (j.contains("rotation")) {
    const json& jr = j["rotation"];
    check_keys(jr, {"omega", "phase0", "time_samples"}, "rotation");
    if (jr.contains("omega")) cfg.omega = parse_real(jr["omega"], "rotation.omega");
    if (jr.contains("phase0")) {
      cfg.phase0 = parse_real(jr["phase0"], "rotation.phase0");
    }
    if (jr.contains("time_samples")) {
      cfg.time_samples = parse_int(jr["time_samples"], "rotation.time_samples");
      if (cfg.time_samples < 16) {
        throw ConfigError("rotation.time_samples must be >= 16");
      }
    }
  }

  cfg.path = default_octant();
  if (cfg.scenario == "custom-path-gp" && !j.contains("path")) {
    // default octant comes with its known solid angle and triangle phase
    cfg.expected_solid_angle_set = true;
    cfg.expected_solid_angle = kPi / 2.0;
    cfg.expected_triangle_phase_set = true;
    cfg.expected_triangle_phase = kPi / 4.0;
  }
  if (j.contains("path")) {
    const json& jp = j["path"];
    check_keys(jp,
               {"vertices", "helicity", "random_paths", "expected_solid_angle",
                "expected_triangle_phase"},
               "path");
    if (jp.contains("vertices")) {
      if (!jp["vertices"].is_array() || jp["vertices"].size() < 3) {
        throw ConfigError("path.vertices: expected >= 3 [x, y, z] triples");
      }
      cfg.path.clear();
      for (const json& row : jp["vertices"]) {
        if (!row.is_array() || row.size() != 3) {
          throw ConfigError("path.vertices: expected [x, y, z] triples");
        }
        cfg.path.push_back({parse_real(row[0], "path.vertices"),
                            parse_real(row[1], "path.vertices"),
                            parse_real(row[2], "path.vertices")});
      }
    }
    if (jp.contains("helicity")) {
      cfg.helicity = parse_int(jp["helicity"], "path.helicity");
      if (cfg.helicity != 1 && cfg.helicity != -1) {
        throw ConfigError("path.helicity must be +1 or -1");
      }
    }
    if (jp.contains("random_paths")) {
      cfg.random_paths = parse_int(jp["random_paths"], "path.random_paths");
      if (cfg.random_paths < 0 || cfg.random_paths > 100000) {
        throw ConfigError("path.random_paths out of range");
      }
    }
    if (jp.contains("expected_solid_angle")) {
      cfg.expected_solid_angle_set = true;
      cfg.expected_solid_angle =
          parse_real(jp["expected_solid_angle"], "path.expected_solid_angle");
    }
    if (jp.contains("expected_triangle_phase")) {
      cfg.expected_triangle_phase_set = true;
      cfg.expected_triangle_phase = parse_real(jp["expected_triangle_phase"],
                                               "path.expected_triangle_phase");
    }
  }

  return cfg;
}

ScenarioConfig validate_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_text(ss.str());
}

std::string effective_config_json(const ScenarioConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["scenario"] = cfg.scenario;
  j["seed"] = cfg.seed;
  j["out_dir"] = cfg.out_dir;
  j["grid"] = {{"n_r", cfg.grid.n_r},
               {"n_phi", cfg.grid.n_phi},
               {"r_min", cfg.grid.r_min},
               {"r_max", cfg.grid.r_max},
               {"wavelength", cfg.grid.wavelength}};
  j["beam"] = {
      {"polarization",
       {cfg.input_polarization.ex.real(), cfg.input_polarization.ex.imag(),
        cfg.input_polarization.ey.real(), cfg.input_polarization.ey.imag()}},
      {"polarization_name", cfg.input_polarization_name},
      {"envelope", envelope_json(cfg.envelope)}};
  if (cfg.scenario == "qplate") {
    j["element"] = {{"q", cfg.q}, {"alpha0", cfg.alpha0}};
  } else if (cfg.scenario == "vector-vortex") {
    j["vortex"] = {{"alpha", cfg.alpha}};
  } else if (cfg.scenario == "focal-model") {
    j["focal"] = {{"eps", cfg.eps}};
  } else if (cfg.scenario == "rotating-hwp") {
    j["rotation"] = {{"omega", cfg.omega},
                     {"phase0", cfg.phase0},
                     {"time_samples", cfg.time_samples}};
  } else if (cfg.scenario == "custom-path-gp") {
    json verts = json::array();
    for (const Vec3& v : cfg.path) verts.push_back({v.x, v.y, v.z});
    json p = {{"vertices", verts},
              {"helicity", cfg.helicity},
              {"random_paths", cfg.random_paths}};
    if (cfg.expected_solid_angle_set) {
      p["expected_solid_angle"] = cfg.expected_solid_angle;
    }
    if (cfg.expected_triangle_phase_set) {
      p["expected_triangle_phase"] = cfg.expected_triangle_phase;
    }
    j["path"] = std::move(p);
  }
  return j.dump(2);
}

std::string report_to_json(const ScenarioReport& report,
                           bool include_timestamp) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "scenario_report";
  j["scenario"] = report.config.scenario;
  j["config"] = json::parse(effective_config_json(report.config));
  j["config_hash"] = report.config_hash;
  j["pass"] = report.pass;
  json asserts = json::array();
  for (const Assertion& a : report.assertions) {
    asserts.push_back({{"name", a.name},
                       {"pass", a.pass},
                       {"value", a.value},
                       {"expected", a.expected},
                       {"tolerance", a.tolerance}});
  }
  j["assertions"] = std::move(asserts);
  j["results"] = json::parse(report.results_json);
  j["artifacts"] = report.artifacts;
  if (include_timestamp) j["timestamp"] = iso_timestamp_utc();
  return j.dump(2);
}

ScenarioReport run_scenario(const ScenarioConfig& cfg,
                            const std::string& out_dir_override, bool quiet) {
  ScenarioReport report;
  report.config = cfg;
  report.config_hash = hex16(fnv1a64(effective_config_json(cfg)));

  json results = json::object();
  FieldGrid in_store, out_store;
  IntensityPattern pattern_store;
  ArtifactSet artifacts;
  std::string series_csv;

  try {
    if (cfg.scenario == "qplate") {
      run_qplate(cfg, report.assertions, results, in_store, out_store,
                 pattern_store, artifacts);
    } else if (cfg.scenario == "vector-vortex") {
      run_vector_vortex(cfg, report.assertions, results, out_store,
                        pattern_store, artifacts);
    } else if (cfg.scenario == "focal-model") {
      run_focal_model(cfg, report.assertions, results, in_store, out_store,
                      artifacts);
    } else if (cfg.scenario == "rotating-hwp") {
      run_rotating_hwp(cfg, report.assertions, results, series_csv);
    } else if (cfg.scenario == "custom-path-gp") {
      run_custom_path(cfg, report.assertions, results);
    } else {
      throw ConfigError("unknown scenario '" + cfg.scenario + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw Error("scenario '" + cfg.scenario + "': " + e.what());
  }

  report.results_json = results.dump();
  report.pass = std::all_of(report.assertions.begin(), report.assertions.end(),
                            [](const Assertion& a) { return a.pass; });

  // artifacts
  const std::string out_dir =
      out_dir_override.empty() ? cfg.out_dir : out_dir_override;
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string tag = report.config_hash;
  auto emit = [&](const std::string& name) {
    report.artifacts.push_back(name);
    return (fs::path(out_dir) / name).string();
  };

  if (artifacts.output_field != nullptr) {
    write_field_csv(*artifacts.output_field, emit("field_out_" + tag + ".csv"));
    write_field_json(*artifacts.output_field, emit("field_out_" + tag + ".json"));
  }
  if (artifacts.input_field != nullptr) {
    write_field_json(*artifacts.input_field, emit("field_in_" + tag + ".json"));
  }
  if (artifacts.pattern != nullptr) {
    write_pattern_pgm(*artifacts.pattern, emit("pattern_" + tag + ".pgm"), 16,
                      true);
    report.artifacts.push_back("pattern_" + tag + ".pgm.json");
    write_pattern_csv(*artifacts.pattern, emit("pattern_" + tag + ".csv"));
  }
  for (const auto& [name, text] : artifacts.json_docs) {
    std::ofstream doc((fs::path(out_dir) / (name + "_" + tag + ".json")),
                      std::ios::binary);
    doc << text << '\n';
    report.artifacts.push_back(name + "_" + tag + ".json");
  }
  if (!series_csv.empty()) {
    std::ofstream doc((fs::path(out_dir) / ("timeseries_" + tag + ".csv")),
                      std::ios::binary);
    doc << series_csv;
    report.artifacts.push_back("timeseries_" + tag + ".csv");
  }

  {
    std::ofstream doc((fs::path(out_dir) / ("report_" + tag + ".json")),
                      std::ios::binary);
    doc << report_to_json(report, true) << '\n';
    report.artifacts.push_back("report_" + tag + ".json");
  }

  if (!quiet) {
    for (const Assertion& a : report.assertions) {
      std::printf("[%s] %s  value=%.12g expected=%.12g tol=%.3g\n",
                  a.pass ? "PASS" : "FAIL", a.name.c_str(), a.value, a.expected,
                  a.tolerance);
    }
    std::printf("scenario %s: %s\n", cfg.scenario.c_str(),
                report.pass ? "all assertions passed" : "ASSERTIONS FAILED");
  }
  return report;
}

}  // namespace gpoptics
