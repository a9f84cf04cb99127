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
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "doctest.h"

namespace kanesim {
namespace {

std::string error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TEST_SUITE("config") {

TEST_CASE("empty document resolves to the built-in defaults") {
  const AppConfig parsed = parse_config_string("{}", "test");
  const AppConfig defaults;
  CHECK(serialize_config(parsed) == serialize_config(defaults));
  CHECK(parsed.cnot.integrator.scheme == Scheme::split);
  CHECK(parsed.cnot.integrator.frame == Frame::rotating);
  CHECK(parsed.cnot.profile == ProfileKind::linsin);
  CHECK_FALSE(parsed.cnot.dephasing.any());
  CHECK(parsed.sweep.tau_e_s.size() == 12);
  CHECK(parsed.sweep.tau_n_s.size() == 12);
}

TEST_CASE("serialize -> parse -> serialize is a fixed point") {
  AppConfig config;
  config.cnot.A2 = 1.9;
  config.cnot.delta_A1 = 0.031;
  config.cnot.B_ac_tesla = 6.5e-4;
  config.cnot.dephasing = DephasingParams::from_tau_us(200.0, 20000.0);
  config.cnot.profile = ProfileKind::sech;
  config.cnot.integrator.rel_tol = 1e-7;
  config.theta.gap_floor_u = 2.0;
  const std::string first = serialize_config(config);
  const AppConfig reparsed = parse_config_string(first, "round-trip");
  CHECK(serialize_config(reparsed) == first);
  CHECK(config_hash(reparsed) == config_hash(config));
}

TEST_CASE("unknown keys are rejected by path") {
  const std::string message = error_message([] {
    (void)parse_config_string(R"({"cnot": {"nope": 1}})", "test");
  });
  CHECK(message.find("unknown key") != std::string::npos);
  CHECK(message.find("cnot.nope") != std::string::npos);

  const std::string top = error_message([] {
    (void)parse_config_string(R"({"extra_section": {}})", "test");
  });
  CHECK(top.find("extra_section") != std::string::npos);
}

TEST_CASE("malformed JSON and wrong schema versions are refused") {
  CHECK_THROWS_AS((void)parse_config_string("{not json", "test"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config_string("[1,2]", "test"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(R"({"schema_version": 2})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(R"({"cnot": {"profile": "cubic"}})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"cnot": {"integrator": {"scheme": "euler"}}})", "test"),
      std::invalid_argument);
}

TEST_CASE("dephasing times must be positive when present") {
  const std::string message = error_message([] {
    (void)parse_config_string(
        R"({"cnot": {"dephasing": {"tau_e_s": 0}}})", "test");
  });
  CHECK(message.find("positive") != std::string::npos);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"cnot": {"dephasing": {"tau_n_s": -3e-4}}})", "test"),
      std::invalid_argument);

  // One species alone is legal; the other stays off.
  const AppConfig one = parse_config_string(
      R"({"cnot": {"dephasing": {"tau_e_s": 2e-4}}})", "test");
  CHECK(one.cnot.dephasing.gamma_e > 0.0);
  CHECK(one.cnot.dephasing.gamma_n == 0.0);
}

TEST_CASE("dephasing rate/time conversion: gamma = 1/(4 tau)") {
  const DephasingParams params = DephasingParams::from_tau_us(200.0, 20000.0);
  CHECK(params.gamma_e == doctest::Approx(1.0 / 800.0).epsilon(1e-15));
  CHECK(params.gamma_n == doctest::Approx(1.0 / 80000.0).epsilon(1e-15));
  CHECK(params.tau_e_us() == doctest::Approx(200.0).epsilon(1e-15));
  CHECK(params.tau_n_us() == doctest::Approx(20000.0).epsilon(1e-15));
  CHECK(params.any());

  const DephasingParams off;
  CHECK_FALSE(off.any());
  CHECK(std::isinf(off.tau_e_us()));

  CHECK_THROWS_AS((void)DephasingParams::from_tau_us(0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)DephasingParams::from_tau_us(
                      1.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("default hyperfine bias is 1.5% of A2") {
  CnotConfig config;
  CHECK(config.delta_A1_value() ==
        doctest::Approx(0.015 * config.A2).epsilon(1e-15));
  config.A2 = 2.0;
  CHECK(config.delta_A1_value() == doctest::Approx(0.03).epsilon(1e-15));
  config.delta_A1 = 0.5;
  CHECK(config.delta_A1_value() == 0.5);
}

TEST_CASE("sweep axes: explicit array XOR log-spaced triple") {
  const AppConfig arr = parse_config_string(
      R"({"sweep": {"tau_e_s": [1e-6, 1e-5], "tau_n_s": [1e-3, 1e-2, 1e-1]}})",
      "test");
  CHECK(arr.sweep.tau_e_s.size() == 2);
  CHECK(arr.sweep.tau_n_s.size() == 3);

  const AppConfig triple = parse_config_string(
      R"({"sweep": {"tau_e_min_s": 1e-6, "tau_e_max_s": 1e-2, "tau_e_count": 5,
                    "tau_n_min_s": 1e-4, "tau_n_max_s": 1e2, "tau_n_count": 4}})",
      "test");
  REQUIRE(triple.sweep.tau_e_s.size() == 5);
  REQUIRE(triple.sweep.tau_n_s.size() == 4);
  // Endpoints are pinned exactly; interior points are geometric.
  CHECK(triple.sweep.tau_e_s.front() == 1e-6);
  CHECK(triple.sweep.tau_e_s.back() == 1e-2);
  CHECK(triple.sweep.tau_e_s[1] ==
        doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(triple.sweep.tau_n_s[1] / triple.sweep.tau_n_s[0] ==
        doctest::Approx(triple.sweep.tau_n_s[2] / triple.sweep.tau_n_s[1])
            .epsilon(1e-12));

  // Giving both forms at once, or an incomplete/decreasing triple, fails.
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_s": [1e-6, 1e-5], "tau_e_count": 5}})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_min_s": 1e-6, "tau_e_count": 5}})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_min_s": 1e-2, "tau_e_max_s": 1e-6,
                        "tau_e_count": 5}})",
          "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_s": [1e-5, 1e-6]}})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_s": [1e-6, 1e-6]}})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_s": [0.0, 1e-6]}})", "test"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)parse_config_string(
          R"({"sweep": {"tau_e_min_s": 1e-6, "tau_e_max_s": 1e-2,
                        "tau_e_count": 65}})",
          "test"),
      std::invalid_argument);
}

TEST_CASE("integrator tolerances are validated") {
  AppConfig config;
  config.cnot.integrator.rel_tol = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.cnot.integrator.rel_tol = 1e-9;
  config.cnot.integrator.min_step_us = 1.0;
  config.cnot.integrator.max_step_us = 0.5;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("config hash is stable and content-sensitive") {
  const AppConfig a;
  const std::string first = config_hash(a);
  CHECK(first == config_hash(a));
  CHECK(first.size() == 16);
  CHECK(first.find_first_not_of("0123456789abcdef") == std::string::npos);

  AppConfig b;
  b.cnot.A2 = 1.707;
  CHECK(config_hash(b) != first);
  AppConfig c;
  c.cnot.integrator.scheme = Scheme::rk45;
  CHECK(config_hash(c) != first);
}

TEST_CASE("17-digit formatting round-trips doubles exactly") {
  for (double value : {1.0 / 3.0, 0.1, 1e-300, 1632.5394, 7.0711e-5,
                       -2.5e17, 802.0062626162747}) {
    const std::string text = format_double(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("enum names round-trip") {
  CHECK(to_string(ProfileKind::linear) == "linear");
  CHECK(to_string(ProfileKind::sech) == "sech");
  CHECK(to_string(ProfileKind::linsin) == "linsin");
  CHECK(to_string(Frame::lab) == "lab");
  CHECK(to_string(Frame::rotating) == "rotating");
  CHECK(to_string(Scheme::rk45) == "rk45");
  CHECK(to_string(Scheme::split) == "split");
}

}  // TEST_SUITE
}  // namespace
}  // namespace kanesim
