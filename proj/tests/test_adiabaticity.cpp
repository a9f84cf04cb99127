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

#include "kanesim/adiabaticity.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kanesim/constants.hpp"

namespace kanesim {
namespace {

// A stage with one ramping coupling; A1 == A2 + bias held constant.
Stage ramp_stage(ProfileKind kind, double duration, double bias) {
  Stage stage;
  stage.label = 2;
  stage.duration = duration;
  stage.A1 = PulseProfile::constant(1.706 + bias, duration);
  stage.A2 = PulseProfile::constant(1.706, duration);
  stage.J = PulseProfile::rising(kind, 0.0, 810.0, duration);
  stage.B_ac = PulseProfile::constant(0.0, duration);
  return stage;
}

TEST_SUITE("adiabaticity") {

TEST_CASE("nondegenerate toy model reproduces hbar v / (4 a^2) exactly") {
  const PhysicalConstants consts;
  const double a = 3.0, v = 2.0;
  // Distinct z shifts make the spectrum nondegenerate, so the eigenbasis is
  // the product basis itself; sigma_x on e1 then couples pairs split by
  // exactly 2a with element v, and every other pair has a vanishing element.
  const Operator h = a * embed_pauli(PauliAxis::z, Site::e1) +
                     0.37 * embed_pauli(PauliAxis::z, Site::n1) +
                     0.11 * embed_pauli(PauliAxis::z, Site::n2) +
                     0.053 * embed_pauli(PauliAxis::z, Site::e2);
  const Operator dhdt = v * embed_pauli(PauliAxis::x, Site::e1);

  const ThetaResult res = theta_at(consts, h, dhdt, 0.5);
  const double expected = consts.hbar() * v / (4.0 * a * a);
  CHECK(res.theta == doctest::Approx(expected).epsilon(1e-10));
  // Small uncoupled splittings (e.g. the 2*0.053 e2 pair) fall below the
  // floor and are reported rather than silently dropped.
  CHECK_FALSE(res.excluded.empty());
}

TEST_CASE("theta is invariant under identity shifts of H") {
  const PhysicalConstants consts;
  const Operator h = build_interaction(consts, 1.731, 1.706, 300.0) +
                     build_zeeman(consts, 2.0);
  const Operator dhdt = 90.0 * dot_coupling(Site::e1, Site::e2);
  const ThetaResult base = theta_at(consts, h, dhdt, 0.1);
  const ThetaResult shifted = theta_at(
      consts, h + 13.7 * Operator::Identity(), dhdt, 0.1);
  CHECK(shifted.theta == doctest::Approx(base.theta).epsilon(1e-10));
  CHECK(shifted.level_a == base.level_a);
  CHECK(shifted.level_b == base.level_b);
}

TEST_CASE("max theta over a ramp scales as 1/T") {
  const PhysicalConstants consts;
  // Unbiased ramp: H(t/T) is a function of the fraction alone, so halving T
  // exactly doubles dH/dt at matching samples.
  const ThetaSeries slow =
      theta_scan(consts, ramp_stage(ProfileKind::linear, 9.0, 0.0), 2.0, 201,
                 0.1);
  const ThetaSeries fast =
      theta_scan(consts, ramp_stage(ProfileKind::linear, 4.5, 0.0), 2.0, 201,
                 0.1);
  CHECK(fast.max_theta == doctest::Approx(2.0 * slow.max_theta).epsilon(1e-9));
  CHECK(fast.argmax_index == slow.argmax_index);
  REQUIRE(slow.samples.size() == 201);
  CHECK(slow.samples.front().t_us == 0.0);
  CHECK(slow.samples.back().t_us == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("biased ramps need a floor above the bias splitting") {
  const PhysicalConstants consts;
  const double bias = 0.015 * 1.706;
  // With a floor well above the hyperfine-bias splitting the scan tracks the
  // strongly coupled pairs; the frozen values come from an independent
  // fine-grained scan of the same configuration.  Peaks sit where the ramp
  // slope is largest relative to the entry-region hyperfine gap: t = 0 for
  // the constant-slope ramp, slightly inside for the sech shape.
  const ThetaSeries linear = theta_scan(
      consts, ramp_stage(ProfileKind::linear, 9.0, bias), 2.0, 2001, 2.0);
  CHECK(linear.max_theta == doctest::Approx(0.0353041).epsilon(1e-3));
  CHECK(linear.samples[linear.argmax_index].t_us == 0.0);
  CHECK_FALSE(linear.excluded_union.empty());

  const ThetaSeries sech = theta_scan(
      consts, ramp_stage(ProfileKind::sech, 9.0, bias), 2.0, 2001, 2.0);
  CHECK(sech.max_theta == doctest::Approx(0.00586272).epsilon(1e-3));

  // A tiny floor lets the bias-split spectator pairs dominate: their gap
  // sweeps through any small floor while dJ/dt is nonzero, inflating the
  // measure by orders of magnitude (the strongly coupled pairs top out ~50x
  // lower for this shape).
  const ThetaSeries polluted = theta_scan(
      consts, ramp_stage(ProfileKind::sech, 9.0, bias), 2.0, 401, 0.1);
  CHECK(polluted.max_theta > 10.0 * sech.max_theta);
}

TEST_CASE("invalid inputs are rejected") {
  const PhysicalConstants consts;
  const Operator h = build_zeeman(consts, 2.0);
  Operator bad = Operator::Zero();
  bad(0, 1) = Complex(1.0, 0.0);  // not Hermitian
  CHECK_THROWS_AS((void)theta_at(consts, h, bad, 0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)theta_at(consts, bad, h, 0.1), std::invalid_argument);

  // A floor above the full spectral range excludes every pair.
  CHECK_THROWS_AS(
      (void)theta_at(consts, h, dot_coupling(Site::e1, Site::e2), 1e7),
      std::runtime_error);

  Stage driving = ramp_stage(ProfileKind::linear, 9.0, 0.0);
  driving.ac_on = true;
  CHECK_THROWS_AS((void)theta_scan(consts, driving, 2.0, 101, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)theta_scan(consts, ramp_stage(ProfileKind::linear, 9.0, 0.0), 2.0,
                       1, 0.1),
      std::invalid_argument);
}

}  // TEST_SUITE
}  // namespace
}  // namespace kanesim
