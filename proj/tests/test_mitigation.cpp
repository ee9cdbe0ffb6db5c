// Copyright 2026 The qkit Authors
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

#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cmath>

#include "qkit/mitigation.hpp"
#include "test_support.hpp"

using namespace qkit;

namespace {

// Dense Pauli matrices and a 4x4 CX (control = qubit 0, the low index bit),
// built by hand for the conjugation oracle.
Eigen::Matrix2cd pauli(unsigned p) {
  const std::complex<double> i(0, 1);
  Eigen::Matrix2cd m;
  switch (p) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 1, 0, 0, -1; break;
    case 3: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

Eigen::Matrix4cd cx_matrix() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(2, 2) = 1;  // control clear
  m(3, 1) = m(1, 3) = 1;  // control set: flip target
  return m;
}

// Target is the high bit, so the Kronecker product (target) x (control).
Eigen::Matrix4cd pauli_pair(unsigned c, unsigned t) {
  const Eigen::Matrix2cd a = pauli(t), b = pauli(c);
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return m;
}

Circuit ghz3_parity() {
  Circuit c(3, "ghz3");
  c.add(gates::h(0));
  c.add(gates::cx(0, 1));
  c.add(gates::cx(1, 2));
  // Rotate into the X basis: Z-parity of the result is <XXX> = +1 on GHZ.
  for (Qubit q = 0; q < 3; ++q) c.add(gates::h(q));
  return c;
}

Circuit random_cx_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t gates_count) {
  const auto raw = testing::random_circuit(
      rng, {.num_qubits = n, .num_gates = gates_count, .allow_three_qubit = false});
  return translate_to_basis(raw, BasisGateSet::default_set());
}

}  // namespace

TEST_CASE("CX conjugation table matches matrix algebra", "[mitigation]") {
  const Eigen::Matrix4cd cx = cx_matrix();
  for (unsigned c = 0; c < 4; ++c) {
    for (unsigned t = 0; t < 4; ++t) {
      const auto [c2, t2] = cx_conjugate({c, t});
      const Eigen::Matrix4cd lhs = cx * pauli_pair(c, t) * cx;
      const Eigen::Matrix4cd rhs = pauli_pair(c2, t2);
      CHECK(equivalent_up_to_global_phase(Eigen::MatrixXcd(lhs), Eigen::MatrixXcd(rhs), 1e-12));
    }
  }
  CHECK(cx_conjugate({0, 0}) == PauliPair{0, 0});
  CHECK(cx_conjugate({1, 0}) == PauliPair{1, 1});  // X on control spreads to target
  CHECK(cx_conjugate({0, 2}) == PauliPair{2, 2});  // Z on target spreads to control
}

TEST_CASE("pauli twirl preserves the unitary", "[mitigation]") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Circuit c = random_cx_circuit(rng, 4, 20);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Circuit tw = pauli_twirl(c, seed);
      CHECK(equivalent_up_to_global_phase(c, tw, 1e-9));
      CHECK(count_of(gate_counts(tw), GateKind::CX) == count_of(gate_counts(c), GateKind::CX));
    }
  }
  SECTION("deterministic per seed") {
    const Circuit c = random_cx_circuit(rng, 3, 15);
    CHECK(pauli_twirl(c, 9) == pauli_twirl(c, 9));
  }
  SECTION("untranslated two-qubit gates are rejected") {
    Circuit c(2);
    c.add(gates::cz(0, 1));
    CHECK_THROWS_AS(pauli_twirl(c, 1), TransformError);
  }
}

TEST_CASE("twirl pair distribution is uniform", "[mitigation]") {
  // 16 bins, 4000 seeds for the first CX: each frequency within 3 sigma of 1/16.
  const int seeds = 4000;
  std::array<int, 16> hist{};
  for (int s = 0; s < seeds; ++s) ++hist[twirl_pairs(3, static_cast<std::uint64_t>(s))[0]];
  const double p = 1.0 / 16, mean = seeds * p, sigma = std::sqrt(seeds * p * (1 - p));
  for (int k = 0; k < 16; ++k) {
    INFO("pair " << k);
    CHECK(std::abs(hist[static_cast<std::size_t>(k)] - mean) < 3 * sigma);
  }
}

TEST_CASE("folding", "[mitigation]") {
  std::mt19937_64 rng(17);
  const Circuit body = random_cx_circuit(rng, 3, 10);
  Circuit measured = body;
  measured.add(gates::measure(0));
  measured.add(gates::measure(2));

  CHECK(fold(measured, 1) == measured);
  for (unsigned lambda : {3U, 5U, 7U}) {
    const Circuit g = fold(measured, lambda, FoldMode::kGlobal);
    CHECK(g.size() == lambda * body.size() + 2);
    CHECK(g.measured_qubits() == measured.measured_qubits());
    CHECK(equivalent_up_to_global_phase(body, g.body(), 1e-9));
    const Circuit p = fold(measured, lambda, FoldMode::kPerGate);
    CHECK(p.size() == lambda * body.size() + 2);
    CHECK(equivalent_up_to_global_phase(body, p.body(), 1e-9));
  }
  CHECK_THROWS_AS(fold(measured, 2), InputError);
  CHECK_THROWS_AS(fold(measured, 0), InputError);
}

TEST_CASE("dynamical decoupling", "[mitigation]") {
  SECTION("no idle windows leaves the circuit alone") {
    Circuit c(2);
    c.add(gates::cx(0, 1));
    CHECK(insert_dd(c, schedule(c, default_durations()), 1) == c);
  }
  SECTION("idle qubit gets an X pair") {
    Circuit c(2);
    c.add(gates::h(0));
    c.add(gates::cx(0, 1));
    const auto dd = insert_dd(c, schedule(c, default_durations()), 1);
    Circuit expected(2);
    expected.add(gates::h(0));
    expected.add(gates::x(1));
    expected.add(gates::x(1));
    expected.add(gates::cx(0, 1));
    CHECK(dd == expected);
    CHECK(equivalent_up_to_global_phase(c, dd));
  }
  SECTION("windows shorter than the threshold are skipped") {
    Circuit c(2);
    c.add(gates::h(0));
    c.add(gates::cx(0, 1));
    CHECK(insert_dd(c, schedule(c, default_durations()), 2) == c);
  }
  SECTION("trailing windows insert before the measurement suffix") {
    Circuit c(2);
    c.add(gates::h(0));
    c.add(gates::h(1));
    c.add(gates::s(1));
    c.add(gates::measure(1));
    const auto dd = insert_dd(c, schedule(c, default_durations()), 1, DdSequence::kXYXY);
    CHECK(dd.has_measure());
    CHECK(count_of(gate_counts(dd), GateKind::Y) == 2);
    CHECK(equivalent_up_to_global_phase(c.body(), dd.body()));
  }
  SECTION("semantics on random circuits") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
      const Circuit c = random_cx_circuit(rng, 4, 20);
      const auto s = schedule(c, default_durations());
      for (auto seq : {DdSequence::kXX, DdSequence::kXYXY}) {
        CHECK(equivalent_up_to_global_phase(c, insert_dd(c, s, 1, seq), 1e-9));
      }
    }
  }
  SECTION("mismatched schedule") {
    Circuit c(1);
    c.add(gates::h(0));
    CHECK_THROWS_AS(insert_dd(c, Schedule{}, 1), DimensionMismatch);
  }
}

TEST_CASE("extrapolation", "[mitigation]") {
  const auto lin = extrapolate_to_zero({{1, 0.9}, {3, 0.7}, {5, 0.5}}, 1);
  CHECK(std::abs(lin.intercept - 1.0) < 1e-12);
  CHECK(std::abs(lin.coefficients[1] + 0.1) < 1e-12);
  // Exact quadratic 0.8 + 0.05 l - 0.01 l^2.
  std::vector<std::pair<double, double>> q;
  for (double l : {1.0, 3.0, 5.0, 7.0}) q.emplace_back(l, 0.8 + 0.05 * l - 0.01 * l * l);
  CHECK(std::abs(extrapolate_to_zero(q, 2).intercept - 0.8) < 1e-9);
  CHECK(std::abs(extrapolate_to_zero({{1, 0.4}, {3, 0.4}}, 1).intercept - 0.4) < 1e-12);
  CHECK_THROWS_AS(extrapolate_to_zero({{1, 0.5}, {3, 0.4}}, 2), InputError);
}

TEST_CASE("ZNE config validation", "[mitigation]") {
  ZneConfig c;
  c.observable = {0};
  CHECK_NOTHROW(c.validate(2));
  c.scale_factors = {3, 5};
  CHECK_THROWS_AS(c.validate(2), InputError);
  c.scale_factors = {1, 5, 3};
  CHECK_THROWS_AS(c.validate(2), InputError);
  c.scale_factors = {1, 2};
  CHECK_THROWS_AS(c.validate(2), InputError);
  c.scale_factors = {1, 3};
  c.extrapolator = Extrapolator::kQuadratic;
  CHECK_THROWS_AS(c.validate(2), InputError);
  c.extrapolator = Extrapolator::kLinear;
  c.observable = {2};
  CHECK_THROWS_AS(c.validate(2), InputError);
}

TEST_CASE("ZNE without noise returns the ideal value", "[mitigation]") {
  ZneConfig config;
  config.observable = {0, 1, 2};
  const auto r = zne_estimate(ghz3_parity(), config, {}, 2000, 1);
  for (const auto &[lambda, value] : r.raw) CHECK(value == 1.0);
  CHECK(std::abs(r.mitigated_value - 1.0) < 1e-12);
}

TEST_CASE("folded expectation decays with the scale factor", "[mitigation]") {
  ZneConfig config;
  config.observable = {0, 1, 2};
  config.scale_factors = {1, 3, 5, 7};
  const auto noise = NoiseModel::depolarizing(GateKind::CX, 0.02);
  const auto r = zne_estimate(ghz3_parity(), config, noise, 8000, 3);
  for (std::size_t i = 1; i < r.raw.size(); ++i) CHECK(r.raw[i].second < r.raw[i - 1].second);
}

TEST_CASE("ZNE reduces the error on a GHZ parity", "[mitigation][slow]") {
  ZneConfig config;
  config.observable = {0, 1, 2};
  const auto noise = NoiseModel::depolarizing(GateKind::CX, 0.01);
  double raw_err = 0, mitigated_err = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = zne_estimate(ghz3_parity(), config, noise, 4096, seed);
    raw_err += std::abs(r.raw.front().second - 1.0);
    mitigated_err += std::abs(r.mitigated_value - 1.0);
  }
  CHECK(mitigated_err < raw_err);
}

TEST_CASE("mirror circuits", "[mitigation]") {
  const Circuit layers = random_layer_circuit(4, 3, 99);
  SECTION("structure") {
    const Circuit m = mirror_circuit(layers);
    CHECK(m.size() == 2 * layers.size() + 4);
    CHECK(m.measured_qubits().size() == 4);
    Circuit measured = layers;
    measured.add(gates::measure(0));
    CHECK_THROWS_AS(mirror_circuit(measured), InputError);
  }
  SECTION("noiseless survival is exactly one") {
    const auto r = mirror_benchmark(layers, 1000, 4);
    CHECK(r.survival_probability == 1.0);
    CHECK(r.base_depth == depth(layers));
    CHECK(r.mirrored_depth >= 2 * r.base_depth - 1);
  }
  SECTION("readout flips on an empty circuit") {
    NoiseModel noise;
    noise.measurement_flip = 0.1;
    const std::uint64_t shots = 10000;
    const auto r = mirror_benchmark(Circuit(4), shots, 8, noise);
    const double p = std::pow(0.9, 4);
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
    CHECK(std::abs(r.survival_probability - p) < 4 * sigma);
  }
  SECTION("layer prefixes are stable") {
    const Circuit longer = random_layer_circuit(4, 5, 99);
    for (std::size_t i = 0; i < layers.size(); ++i) CHECK(longer[i] == layers[i]);
  }
}

TEST_CASE("mirror survival decreases with depth", "[mitigation]") {
  const auto noise = NoiseModel::depolarizing(GateKind::CX, 0.005);
  double previous = 1.1;
  for (std::size_t layers : {1U, 2U, 4U, 8U}) {
    const auto r = mirror_benchmark(random_layer_circuit(4, layers, 1234), 10000, 77, noise);
    CHECK(r.survival_probability < previous);
    previous = r.survival_probability;
  }
}
