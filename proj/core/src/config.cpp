// Copyright 2026 The kanesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kanesim/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace kanesim {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument("config: " + message);
}

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &it.value();
}

// Optional keys serialize as JSON null when unset (so emitted configs list
// every key); on input, null means the same as leaving the key out.
const json* find_present(const json& obj, const char* key) {
  const json* value = find(obj, key);
  return (value && value->is_null()) ? nullptr : value;
}

void require_object(const json& value, const std::string& path) {
  if (!value.is_object()) fail("'" + path + "' must be a JSON object");
}

// Every object in the schema enumerates its legal keys; anything else is
// rejected by name so typos surface as errors instead of silent defaults.
void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + join_path(path, item.key()) + "'");
  }
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) fail("'" + path + "' must be a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail("'" + path + "' must be an integer");
  return value.get<int>();
}

bool as_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) fail("'" + path + "' must be a boolean");
  return value.get<bool>();
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) fail("'" + path + "' must be a string");
  return value.get<std::string>();
}

void read_number(const json& obj, const std::string& path, const char* key,
                 double& out) {
  if (const json* value = find(obj, key)) out = as_number(*value, join_path(path, key));
}

Frame frame_from_string(const std::string& name, const std::string& path) {
  if (name == "lab") return Frame::lab;
  if (name == "rotating") return Frame::rotating;
  fail("'" + path + "': unknown frame '" + name + "' (expected lab|rotating)");
}

Scheme scheme_from_string(const std::string& name, const std::string& path) {
  if (name == "rk45") return Scheme::rk45;
  if (name == "split") return Scheme::split;
  fail("'" + path + "': unknown scheme '" + name + "' (expected rk45|split)");
}

std::vector<double> log_axis(double min_s, double max_s, int count,
                             const char* what) {
  if (count < 1) fail(std::string(what) + "_count must be >= 1");
  if (!(min_s > 0.0) || !std::isfinite(min_s)) {
    fail(std::string(what) + "_min_s must be positive");
  }
  if (!std::isfinite(max_s) || max_s < min_s) {
    fail(std::string(what) + "_max_s must be >= " + what + "_min_s");
  }
  if (count > 1 && !(max_s > min_s)) {
    fail(std::string(what) + "_max_s must exceed " + what +
         "_min_s when the count is > 1");
  }
  std::vector<double> axis(static_cast<size_t>(count));
  if (count == 1) {
    axis[0] = min_s;
    return axis;
  }
  const double ratio = max_s / min_s;
  for (int i = 0; i < count; ++i) {
    axis[static_cast<size_t>(i)] = min_s * std::pow(ratio, i / (count - 1.0));
  }
  axis.back() = max_s;  // pin the endpoint against pow() roundoff
  return axis;
}

void parse_dephasing_tau(const json& obj, const std::string& path,
                         const char* key, double& gamma_out,
                         double& canonical_out) {
  const json* value = find_present(obj, key);
  if (!value) return;
  const std::string full = join_path(path, key);
  const double tau_s = as_number(*value, full);
  if (!(tau_s > 0.0) || !std::isfinite(tau_s)) {
    fail("'" + full + "' must be positive (omit the key to disable dephasing)");
  }
  gamma_out = 1.0 / (4.0 * tau_s * 1e6);  // seconds -> 1/us
  canonical_out = tau_s;
}

void parse_constants(const json& obj, const std::string& path,
                     PhysicalConstants& out) {
  require_object(obj, path);
  check_keys(obj, path,
             {"g_n", "mu_n_eV_per_T", "mu_B_eV_per_T", "hbar_eV_s",
              "unit_energy_eV"});
  read_number(obj, path, "g_n", out.g_n);
  read_number(obj, path, "mu_n_eV_per_T", out.mu_n_eV_per_T);
  read_number(obj, path, "mu_B_eV_per_T", out.mu_B_eV_per_T);
  read_number(obj, path, "hbar_eV_s", out.hbar_eV_s);
  read_number(obj, path, "unit_energy_eV", out.unit_energy_eV);
}

void parse_integrator(const json& obj, const std::string& path,
                      IntegratorConfig& out) {
  require_object(obj, path);
  check_keys(obj, path,
             {"rel_tol", "abs_tol", "initial_step_us", "max_step_us",
              "min_step_us", "frame", "scheme"});
  read_number(obj, path, "rel_tol", out.rel_tol);
  read_number(obj, path, "abs_tol", out.abs_tol);
  read_number(obj, path, "initial_step_us", out.initial_step_us);
  read_number(obj, path, "max_step_us", out.max_step_us);
  read_number(obj, path, "min_step_us", out.min_step_us);
  if (const json* value = find(obj, "frame")) {
    const std::string full = join_path(path, "frame");
    out.frame = frame_from_string(as_string(*value, full), full);
  }
  if (const json* value = find(obj, "scheme")) {
    const std::string full = join_path(path, "scheme");
    out.scheme = scheme_from_string(as_string(*value, full), full);
  }
}

void parse_cnot(const json& obj, const std::string& path, CnotConfig& out) {
  require_object(obj, path);
  check_keys(obj, path,
             {"constants", "B_z_tesla", "A2_u", "delta_A1_u", "J_max_u",
              "profile", "stage_durations_us", "B_ac_tesla", "dephasing",
              "integrator", "full_state_error", "trajectory_samples"});
  if (const json* value = find(obj, "constants")) {
    parse_constants(*value, join_path(path, "constants"), out.consts);
  }
  read_number(obj, path, "B_z_tesla", out.B_z);
  read_number(obj, path, "A2_u", out.A2);
  if (const json* value = find_present(obj, "delta_A1_u")) {
    out.delta_A1 = as_number(*value, join_path(path, "delta_A1_u"));
  }
  read_number(obj, path, "J_max_u", out.J_max);
  if (const json* value = find(obj, "profile")) {
    const std::string full = join_path(path, "profile");
    const std::string name = as_string(*value, full);
    try {
      out.profile = profile_kind_from_string(name);
    } catch (const std::invalid_argument&) {
      fail("'" + full + "': unknown profile '" + name +
           "' (expected linear|sech|linsin)");
    }
  }
  if (const json* value = find(obj, "stage_durations_us")) {
    const std::string sub = join_path(path, "stage_durations_us");
    require_object(*value, sub);
    check_keys(*value, sub, {"t2", "t3", "t4", "t5", "t6"});
    read_number(*value, sub, "t2", out.t2);
    read_number(*value, sub, "t3", out.t3);
    read_number(*value, sub, "t4", out.t4);
    read_number(*value, sub, "t5", out.t5);
    read_number(*value, sub, "t6", out.t6);
  }
  if (const json* value = find_present(obj, "B_ac_tesla")) {
    out.B_ac_tesla = as_number(*value, join_path(path, "B_ac_tesla"));
  }
  if (const json* value = find(obj, "dephasing")) {
    const std::string sub = join_path(path, "dephasing");
    require_object(*value, sub);
    check_keys(*value, sub, {"tau_e_s", "tau_n_s"});
    parse_dephasing_tau(*value, sub, "tau_e_s", out.dephasing.gamma_e,
                        out.dephasing.tau_e_canonical_s);
    parse_dephasing_tau(*value, sub, "tau_n_s", out.dephasing.gamma_n,
                        out.dephasing.tau_n_canonical_s);
  }
  if (const json* value = find(obj, "integrator")) {
    parse_integrator(*value, join_path(path, "integrator"), out.integrator);
  }
  if (const json* value = find(obj, "full_state_error")) {
    out.full_state_error = as_bool(*value, join_path(path, "full_state_error"));
  }
  if (const json* value = find(obj, "trajectory_samples")) {
    out.trajectory_samples =
        as_int(*value, join_path(path, "trajectory_samples"));
  }
}

// One sweep axis accepts either an explicit array ("tau_e_s") or a
// log-spaced triple ("tau_e_min_s"/"tau_e_max_s"/"tau_e_count"), not both.
void parse_sweep_axis(const json& obj, const std::string& path,
                      const std::string& axis, std::vector<double>& out) {
  const json* arr = find(obj, (axis + "_s").c_str());
  const json* lo = find(obj, (axis + "_min_s").c_str());
  const json* hi = find(obj, (axis + "_max_s").c_str());
  const json* count = find(obj, (axis + "_count").c_str());
  const bool has_log = lo || hi || count;
  if (arr && has_log) {
    fail("'" + path + "': give either '" + axis + "_s' or the '" + axis +
         "_min_s'/'" + axis + "_max_s'/'" + axis + "_count' triple, not both");
  }
  if (arr) {
    const std::string full = join_path(path, axis + "_s");
    if (!arr->is_array()) fail("'" + full + "' must be an array of numbers");
    out.clear();
    out.reserve(arr->size());
    for (const auto& element : *arr) {
      if (!element.is_number()) fail("'" + full + "' must contain only numbers");
      out.push_back(element.get<double>());
    }
    return;
  }
  if (has_log) {
    if (!(lo && hi && count)) {
      fail("'" + path + "': '" + axis + "_min_s', '" + axis + "_max_s' and '" +
           axis + "_count' must be given together");
    }
    out = log_axis(as_number(*lo, join_path(path, axis + "_min_s")),
                   as_number(*hi, join_path(path, axis + "_max_s")),
                   as_int(*count, join_path(path, axis + "_count")),
                   axis.c_str());
  }
  // Neither form present: keep the default axis.
}

void parse_sweep(const json& obj, const std::string& path, SweepGrid& out) {
  require_object(obj, path);
  check_keys(obj, path,
             {"tau_e_s", "tau_n_s", "tau_e_min_s", "tau_e_max_s",
              "tau_e_count", "tau_n_min_s", "tau_n_max_s", "tau_n_count"});
  parse_sweep_axis(obj, path, "tau_e", out.tau_e_s);
  parse_sweep_axis(obj, path, "tau_n", out.tau_n_s);
}

void parse_theta(const json& obj, const std::string& path, ThetaOptions& out) {
  require_object(obj, path);
  check_keys(obj, path, {"n_samples", "gap_floor_u", "a1_offset_u"});
  if (const json* value = find(obj, "n_samples")) {
    out.n_samples = as_int(*value, join_path(path, "n_samples"));
  }
  read_number(obj, path, "gap_floor_u", out.gap_floor_u);
  if (const json* value = find_present(obj, "a1_offset_u")) {
    out.a1_offset_u = as_number(*value, join_path(path, "a1_offset_u"));
  }
}

void require_positive_finite(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(std::string(what) + " must be positive and finite");
  }
}

json dephasing_to_json(const DephasingParams& dephasing) {
  // Emit the canonical times verbatim; fall back to the gamma-derived time
  // for params whose rates were set directly.
  auto tau_json = [](double canonical_s, double gamma, double tau_us) {
    if (canonical_s > 0.0) return json(canonical_s);
    return gamma > 0.0 ? json(tau_us * 1e-6) : json(nullptr);
  };
  json obj = json::object();
  obj["tau_e_s"] = tau_json(dephasing.tau_e_canonical_s, dephasing.gamma_e,
                            dephasing.tau_e_us());
  obj["tau_n_s"] = tau_json(dephasing.tau_n_canonical_s, dephasing.gamma_n,
                            dephasing.tau_n_us());
  return obj;
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::linear: return "linear";
    case ProfileKind::sech: return "sech";
    case ProfileKind::linsin: return "linsin";
  }
  throw std::logic_error("to_string(ProfileKind): invalid value");
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "linear") return ProfileKind::linear;
  if (name == "sech") return ProfileKind::sech;
  if (name == "linsin") return ProfileKind::linsin;
  throw std::invalid_argument("unknown profile kind '" + name + "'");
}

std::string to_string(Frame frame) {
  switch (frame) {
    case Frame::lab: return "lab";
    case Frame::rotating: return "rotating";
  }
  throw std::logic_error("to_string(Frame): invalid value");
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::rk45: return "rk45";
    case Scheme::split: return "split";
  }
  throw std::logic_error("to_string(Scheme): invalid value");
}

DephasingParams DephasingParams::from_tau_us(double tau_e_us, double tau_n_us) {
  if (!(tau_e_us > 0.0) || !std::isfinite(tau_e_us) || !(tau_n_us > 0.0) ||
      !std::isfinite(tau_n_us)) {
    throw std::invalid_argument(
        "DephasingParams::from_tau_us: times must be positive and finite");
  }
  DephasingParams params;
  params.gamma_e = 1.0 / (4.0 * tau_e_us);
  params.gamma_n = 1.0 / (4.0 * tau_n_us);
  params.tau_e_canonical_s = tau_e_us * 1e-6;
  params.tau_n_canonical_s = tau_n_us * 1e-6;
  return params;
}

double DephasingParams::tau_e_us() const {
  return gamma_e > 0.0 ? 1.0 / (4.0 * gamma_e)
                       : std::numeric_limits<double>::infinity();
}

double DephasingParams::tau_n_us() const {
  return gamma_n > 0.0 ? 1.0 / (4.0 * gamma_n)
                       : std::numeric_limits<double>::infinity();
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0) || !std::isfinite(rel_tol)) {
    fail("integrator.rel_tol must be in (0, 1)");
  }
  require_positive_finite(abs_tol, "integrator.abs_tol");
  require_positive_finite(initial_step_us, "integrator.initial_step_us");
  require_positive_finite(max_step_us, "integrator.max_step_us");
  require_positive_finite(min_step_us, "integrator.min_step_us");
  if (min_step_us >= max_step_us) {
    fail("integrator.min_step_us must be smaller than integrator.max_step_us");
  }
  if (initial_step_us < min_step_us || initial_step_us > max_step_us) {
    fail("integrator.initial_step_us must lie in [min_step_us, max_step_us]");
  }
}

void CnotConfig::validate() const {
  consts.validate();
  require_positive_finite(B_z, "cnot.B_z_tesla");
  require_positive_finite(A2, "cnot.A2_u");
  if (delta_A1 && (!std::isfinite(*delta_A1) || *delta_A1 < 0.0)) {
    fail("cnot.delta_A1_u must be non-negative and finite");
  }
  require_positive_finite(J_max, "cnot.J_max_u");
  require_positive_finite(t2, "cnot.stage_durations_us.t2");
  require_positive_finite(t3, "cnot.stage_durations_us.t3");
  require_positive_finite(t4, "cnot.stage_durations_us.t4");
  require_positive_finite(t5, "cnot.stage_durations_us.t5");
  require_positive_finite(t6, "cnot.stage_durations_us.t6");
  if (B_ac_tesla) require_positive_finite(*B_ac_tesla, "cnot.B_ac_tesla");
  if (dephasing.gamma_e < 0.0 || dephasing.gamma_n < 0.0 ||
      !std::isfinite(dephasing.gamma_e) || !std::isfinite(dephasing.gamma_n)) {
    fail("cnot.dephasing rates must be non-negative and finite");
  }
  if (trajectory_samples < 2) fail("cnot.trajectory_samples must be >= 2");
  integrator.validate();
}

SweepGrid SweepGrid::log_spaced(double tau_e_min_s, double tau_e_max_s,
                                int tau_e_count, double tau_n_min_s,
                                double tau_n_max_s, int tau_n_count) {
  SweepGrid grid;
  grid.tau_e_s = log_axis(tau_e_min_s, tau_e_max_s, tau_e_count, "tau_e");
  grid.tau_n_s = log_axis(tau_n_min_s, tau_n_max_s, tau_n_count, "tau_n");
  return grid;
}

void SweepGrid::validate() const {
  constexpr size_t kMaxAxisPoints = 64;
  const auto check_axis = [](const std::vector<double>& axis,
                             const char* name) {
    if (axis.empty()) fail(std::string("sweep.") + name + " must be non-empty");
    if (axis.size() > kMaxAxisPoints) {
      fail(std::string("sweep.") + name + " exceeds the 64-point axis cap");
    }
    double previous = 0.0;
    for (double value : axis) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        fail(std::string("sweep.") + name +
             " values must be positive and finite");
      }
      if (value <= previous) {
        fail(std::string("sweep.") + name + " must be strictly increasing");
      }
      previous = value;
    }
  };
  check_axis(tau_e_s, "tau_e_s");
  check_axis(tau_n_s, "tau_n_s");
}

void AppConfig::validate() const {
  if (schema_version != 1) {
    fail("unsupported schema_version " + std::to_string(schema_version) +
         " (this build reads version 1)");
  }
  cnot.validate();
  sweep.validate();
  if (theta.n_samples < 2) fail("theta.n_samples must be >= 2");
  if (theta.gap_floor_u < 0.0 || !std::isfinite(theta.gap_floor_u)) {
    fail("theta.gap_floor_u must be non-negative and finite");
  }
  if (theta.a1_offset_u) {
    if (!std::isfinite(*theta.a1_offset_u)) {
      fail("theta.a1_offset_u must be finite");
    }
    if (cnot.A2 + *theta.a1_offset_u <= 0.0) {
      fail("theta.a1_offset_u would make the scanned A1 non-positive");
    }
  }
}

AppConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw std::runtime_error("config: read error on '" + path + "'");
  }
  return parse_config_string(buffer.str(), path);
}

AppConfig parse_config_string(const std::string& text,
                              const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin + ": top level must be a JSON object");

  AppConfig config;  // starts from the documented defaults
  check_keys(doc, "", {"schema_version", "cnot", "sweep", "theta"});
  if (const json* value = find(doc, "schema_version")) {
    config.schema_version = as_int(*value, "schema_version");
  }
  if (const json* value = find(doc, "cnot")) {
    parse_cnot(*value, "cnot", config.cnot);
  }
  if (const json* value = find(doc, "sweep")) {
    parse_sweep(*value, "sweep", config.sweep);
  }
  if (const json* value = find(doc, "theta")) {
    parse_theta(*value, "theta", config.theta);
  }
  config.validate();
  return config;
}

std::string serialize_config(const AppConfig& config) {
  json doc = json::object();
  doc["schema_version"] = config.schema_version;

  json constants = json::object();
  constants["g_n"] = config.cnot.consts.g_n;
  constants["mu_n_eV_per_T"] = config.cnot.consts.mu_n_eV_per_T;
  constants["mu_B_eV_per_T"] = config.cnot.consts.mu_B_eV_per_T;
  constants["hbar_eV_s"] = config.cnot.consts.hbar_eV_s;
  constants["unit_energy_eV"] = config.cnot.consts.unit_energy_eV;

  json durations = json::object();
  durations["t2"] = config.cnot.t2;
  durations["t3"] = config.cnot.t3;
  durations["t4"] = config.cnot.t4;
  durations["t5"] = config.cnot.t5;
  durations["t6"] = config.cnot.t6;

  json integrator = json::object();
  integrator["rel_tol"] = config.cnot.integrator.rel_tol;
  integrator["abs_tol"] = config.cnot.integrator.abs_tol;
  integrator["initial_step_us"] = config.cnot.integrator.initial_step_us;
  integrator["max_step_us"] = config.cnot.integrator.max_step_us;
  integrator["min_step_us"] = config.cnot.integrator.min_step_us;
  integrator["frame"] = to_string(config.cnot.integrator.frame);
  integrator["scheme"] = to_string(config.cnot.integrator.scheme);

  json cnot = json::object();
  cnot["constants"] = std::move(constants);
  cnot["B_z_tesla"] = config.cnot.B_z;
  cnot["A2_u"] = config.cnot.A2;
  cnot["delta_A1_u"] = config.cnot.delta_A1_value();
  cnot["J_max_u"] = config.cnot.J_max;
  cnot["profile"] = to_string(config.cnot.profile);
  cnot["stage_durations_us"] = std::move(durations);
  cnot["B_ac_tesla"] = config.cnot.B_ac_tesla
                           ? json(*config.cnot.B_ac_tesla)
                           : json(nullptr);  // null -> calibrated at run time
  cnot["dephasing"] = dephasing_to_json(config.cnot.dephasing);
  cnot["integrator"] = std::move(integrator);
  cnot["full_state_error"] = config.cnot.full_state_error;
  cnot["trajectory_samples"] = config.cnot.trajectory_samples;
  doc["cnot"] = std::move(cnot);

  json sweep = json::object();
  sweep["tau_e_s"] = config.sweep.tau_e_s;
  sweep["tau_n_s"] = config.sweep.tau_n_s;
  doc["sweep"] = std::move(sweep);

  json theta = json::object();
  theta["n_samples"] = config.theta.n_samples;
  theta["gap_floor_u"] = config.theta.gap_floor_u;
  theta["a1_offset_u"] =
      config.theta.a1_offset_u ? json(*config.theta.a1_offset_u) : json(nullptr);
  doc["theta"] = std::move(theta);

  return doc.dump();
}

std::string config_hash(const AppConfig& config) {
  const std::string text = serialize_config(config);
  uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : text) {
    hash ^= static_cast<uint64_t>(byte);
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buffer);
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return std::string(buffer);
}

}  // namespace kanesim
