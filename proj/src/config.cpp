// Copyright 2026 The spinalg Authors
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

#include "spinalg/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "spinalg/errors.hpp"

namespace spinalg {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& context,
                              const std::string& what) {
  fail(ErrorCode::Config, context.empty() ? what : context + ": " + what);
}

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (key == k) {
        known = true;
        break;
      }
    if (!known) config_fail(context, "unknown key \"" + key + "\"");
  }
}

double require_number(const json& obj, const std::string& context,
                      const char* key) {
  if (!obj.contains(key))
    config_fail(context, std::string("missing key \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) config_fail(context, std::string(key) + " must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& context, const char* key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) config_fail(context, std::string(key) + " must be a number");
  return v.get<double>();
}

FieldSpec parse_field(const json& j, const std::string& context) {
  if (!j.is_object()) config_fail(context, "field must be an object");
  check_keys(j, context, {"mode", "b_tesla", "transverse_tesla"});
  FieldSpec field;
  std::string mode = "longitudinal";
  if (j.contains("mode")) {
    if (!j.at("mode").is_string())
      config_fail(context, "mode must be a string");
    mode = j.at("mode").get<std::string>();
  }
  if (mode == "longitudinal") {
    field.mode = FieldSpec::Mode::LongitudinalOmega;
    if (j.contains("b_tesla"))
      config_fail(context, "b_tesla only applies to the explicit mode");
    if (j.contains("transverse_tesla")) {
      const json& t = j.at("transverse_tesla");
      if (!t.is_array() || t.size() != 2 || !t[0].is_number() ||
          !t[1].is_number())
        config_fail(context, "transverse_tesla must be [Bx, By]");
      field.transverse_tesla =
          Eigen::Vector2d(t[0].get<double>(), t[1].get<double>());
    }
  } else if (mode == "explicit") {
    field.mode = FieldSpec::Mode::ExplicitField;
    if (j.contains("transverse_tesla"))
      config_fail(context, "transverse_tesla only applies to the longitudinal mode");
    if (!j.contains("b_tesla"))
      config_fail(context, "explicit mode needs b_tesla");
    const json& b = j.at("b_tesla");
    if (!b.is_array() || b.size() != 3)
      config_fail(context, "b_tesla must be [Bx, By, Bz]");
    for (const auto& c : b)
      if (!c.is_number()) config_fail(context, "b_tesla entries must be numbers");
    field.b_tesla = Eigen::Vector3d(b[0].get<double>(), b[1].get<double>(),
                                    b[2].get<double>());
  } else {
    config_fail(context, "mode must be \"longitudinal\" or \"explicit\"");
  }
  return field;
}

SequenceEvent parse_event(const json& j, const std::string& context) {
  if (!j.is_object() || j.size() != 1)
    config_fail(context,
                "event must be an object with exactly one of "
                "\"evolve\", \"pulse\", \"acquire\"");
  if (j.contains("evolve")) {
    const json& e = j.at("evolve");
    if (!e.is_object()) config_fail(context, "evolve must be an object");
    check_keys(e, context + ".evolve", {"duration_s", "field"});
    EvolveEvent ev;
    ev.duration_s = require_number(e, context + ".evolve", "duration_s");
    if (e.contains("field"))
      ev.field = parse_field(e.at("field"), context + ".evolve.field");
    return ev;
  }
  if (j.contains("pulse")) {
    const json& p = j.at("pulse");
    if (!p.is_object()) config_fail(context, "pulse must be an object");
    check_keys(p, context + ".pulse", {"targets", "axis", "angle_rad"});
    HardPulseEvent ev;
    if (!p.contains("targets") || !p.at("targets").is_array())
      config_fail(context + ".pulse", "targets must be an array");
    for (const auto& t : p.at("targets")) {
      if (!t.is_number_integer())
        config_fail(context + ".pulse", "targets must be integers");
      ev.targets.push_back(t.get<int>());
    }
    if (!p.contains("axis") || !p.at("axis").is_string() ||
        p.at("axis").get<std::string>().size() != 1)
      config_fail(context + ".pulse", "axis must be \"x\", \"y\" or \"z\"");
    try {
      ev.axis = axis_from_char(p.at("axis").get<std::string>()[0]);
    } catch (const Error&) {
      config_fail(context + ".pulse", "axis must be \"x\", \"y\" or \"z\"");
    }
    ev.angle_rad = require_number(p, context + ".pulse", "angle_rad");
    return ev;
  }
  if (j.contains("acquire")) {
    const json& a = j.at("acquire");
    if (!a.is_object()) config_fail(context, "acquire must be an object");
    check_keys(a, context + ".acquire", {"dwell_s", "points"});
    AcquireEvent ev;
    ev.dwell_s = require_number(a, context + ".acquire", "dwell_s");
    if (!a.contains("points") || !a.at("points").is_number_integer())
      config_fail(context + ".acquire", "points must be an integer");
    ev.points = a.at("points").get<int>();
    return ev;
  }
  config_fail(context, "unknown event type");
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_fail("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) config_fail("", "top level must be an object");
  check_keys(root, "config",
             {"nuclei", "j_hz", "molecules", "beta", "sequence", "integrator",
              "thermal", "initial_state", "processing", "write_trajectory"});

  RunConfig cfg;
  if (!root.contains("nuclei") || !root.at("nuclei").is_array() ||
      root.at("nuclei").empty())
    config_fail("config", "nuclei must be a non-empty array");
  const json& nuclei = root.at("nuclei");
  const int n = int(nuclei.size());
  cfg.system.nuclei = n;
  cfg.system.omega.resize(n);
  cfg.system.gamma.resize(n);
  for (int p = 0; p < n; ++p) {
    const json& nucleus = nuclei[p];
    const std::string ctx = "nuclei[" + std::to_string(p) + "]";
    if (!nucleus.is_object()) config_fail(ctx, "must be an object");
    check_keys(nucleus, ctx, {"offset_hz", "gamma"});
    cfg.system.omega[p] =
        2.0 * std::numbers::pi * require_number(nucleus, ctx, "offset_hz");
    cfg.system.gamma[p] = number_or(nucleus, ctx, "gamma", 1.0);
  }

  cfg.system.j_coupling = Eigen::MatrixXd::Zero(n, n);
  if (root.contains("j_hz")) {
    const json& jm = root.at("j_hz");
    if (!jm.is_array() || int(jm.size()) != n)
      config_fail("config", "j_hz must be an " + std::to_string(n) + "x" +
                                std::to_string(n) + " matrix");
    for (int p = 0; p < n; ++p) {
      if (!jm[p].is_array() || int(jm[p].size()) != n)
        config_fail("config", "j_hz row " + std::to_string(p) +
                                  " must have " + std::to_string(n) + " entries");
      for (int q = 0; q < n; ++q) {
        if (!jm[p][q].is_number())
          config_fail("config", "j_hz entries must be numbers");
        cfg.system.j_coupling(p, q) =
            2.0 * std::numbers::pi * jm[p][q].get<double>();
      }
    }
  }

  cfg.system.molecules = number_or(root, "config", "molecules", 1.0);
  cfg.system.beta = number_or(root, "config", "beta", 0.0);

  if (root.contains("sequence")) {
    const json& seq = root.at("sequence");
    if (!seq.is_array()) config_fail("config", "sequence must be an array");
    for (std::size_t i = 0; i < seq.size(); ++i)
      cfg.sequence.events.push_back(
          parse_event(seq[i], "sequence[" + std::to_string(i) + "]"));
  }

  if (root.contains("integrator")) {
    const json& integ = root.at("integrator");
    if (!integ.is_object()) config_fail("config", "integrator must be an object");
    check_keys(integ, "integrator", {"method", "rtol", "atol"});
    if (integ.contains("method")) {
      const std::string m = integ.at("method").is_string()
                                ? integ.at("method").get<std::string>()
                                : std::string();
      if (m == "exact")
        cfg.integrator.method = IntegrationMethod::ExactExponential;
      else if (m == "rk45")
        cfg.integrator.method = IntegrationMethod::AdaptiveRK;
      else
        config_fail("integrator", "method must be \"exact\" or \"rk45\"");
    }
    cfg.integrator.rtol = number_or(integ, "integrator", "rtol", 1e-10);
    cfg.integrator.atol = number_or(integ, "integrator", "atol", 1e-12);
    if (!(cfg.integrator.rtol > 0.0) || !(cfg.integrator.atol > 0.0))
      config_fail("integrator", "tolerances must be positive");
  }

  if (root.contains("thermal")) {
    const json& th = root.at("thermal");
    if (!th.is_object()) config_fail("config", "thermal must be an object");
    check_keys(th, "thermal", {"mode"});
    if (th.contains("mode")) {
      const std::string m = th.at("mode").is_string()
                                ? th.at("mode").get<std::string>()
                                : std::string();
      if (m == "exact")
        cfg.thermal_mode = ThermalMode::Exact;
      else if (m == "high_temperature")
        cfg.thermal_mode = ThermalMode::HighTemperatureFirstOrder;
      else
        config_fail("thermal", "mode must be \"exact\" or \"high_temperature\"");
    }
  }

  if (root.contains("initial_state")) {
    const json& init = root.at("initial_state");
    if (!init.is_array()) config_fail("config", "initial_state must be an array");
    const std::size_t dim = (std::size_t(1) << (2 * n)) - 1;
    if (init.size() != dim)
      config_fail("config", "initial_state must have 4^n - 1 = " +
                                std::to_string(dim) + " entries");
    const auto dim_index = Eigen::Index(dim);
    Eigen::VectorXd v(dim_index);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!init[i].is_number())
        config_fail("config", "initial_state entries must be numbers");
      v[Eigen::Index(i)] = init[i].get<double>();
      if (!std::isfinite(v[Eigen::Index(i)]))
        config_fail("config", "initial_state entries must be finite");
    }
    cfg.initial_state = std::move(v);
  }

  if (root.contains("processing")) {
    const json& proc = root.at("processing");
    if (!proc.is_object()) config_fail("config", "processing must be an object");
    check_keys(proc, "processing",
               {"line_broadening_hz", "zero_fill", "peak_threshold"});
    cfg.processing.line_broadening_hz =
        number_or(proc, "processing", "line_broadening_hz", 0.0);
    if (cfg.processing.line_broadening_hz < 0.0)
      config_fail("processing", "line_broadening_hz must be >= 0");
    if (proc.contains("zero_fill")) {
      if (!proc.at("zero_fill").is_number_unsigned())
        config_fail("processing", "zero_fill must be a non-negative integer");
      cfg.processing.zero_fill = proc.at("zero_fill").get<std::size_t>();
    }
    cfg.processing.peak_threshold =
        number_or(proc, "processing", "peak_threshold", 0.01);
    if (cfg.processing.peak_threshold <= 0.0 ||
        cfg.processing.peak_threshold > 1.0)
      config_fail("processing", "peak_threshold must be in (0, 1]");
  }

  if (root.contains("write_trajectory")) {
    if (!root.at("write_trajectory").is_boolean())
      config_fail("config", "write_trajectory must be a boolean");
    cfg.write_trajectory = root.at("write_trajectory").get<bool>();
  }

  const auto problems = validate_system(cfg.system);
  if (!problems.empty()) config_fail("config", problems.front());
  const auto violations = validate_sequence(cfg.sequence, cfg.system);
  if (!violations.empty())
    config_fail("sequence[" + std::to_string(violations.front().event_index) + "]",
                violations.front().message);

  cfg.canonical_json = root.dump();
  cfg.digest = fnv1a(cfg.canonical_json);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config)
      fail(ErrorCode::Config, path + ": " + e.what());
    throw;
  }
}

}  // namespace spinalg
