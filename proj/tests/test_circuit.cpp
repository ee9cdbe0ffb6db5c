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
#include <numbers>

#include "qkit/circuit.hpp"
#include "qkit/simulator.hpp"
#include "test_support.hpp"

using namespace qkit;

TEST_CASE("append validates operands", "[circuit]") {
  const Circuit empty(2);
  SECTION("valid gate extends a copy") {
    const Circuit c = append(empty, gates::h(0));
    CHECK(c.size() == 1);
    CHECK(empty.empty());
  }
  SECTION("duplicate operand") {
    CHECK_THROWS_AS(append(empty, gates::cx(0, 0)), InvalidGate);
  }
  SECTION("index out of range") {
    CHECK_THROWS_AS(append(empty, gates::ccx(0, 1, 2)), InvalidGate);
  }
  SECTION("arity mismatch") {
    Gate g = gates::cx(0, 1);
    g.qubits.pop_back();
    CHECK_THROWS_AS(append(empty, g), InvalidGate);
  }
  SECTION("non-finite angle") {
    CHECK_THROWS_AS(append(empty, gates::rz(std::numeric_limits<double>::infinity(), 0)),
                    InvalidGate);
  }
  SECTION("cmodmul multiplier must be coprime") {
    const std::vector<Qubit> targets = {1, 2, 3};
    CHECK_THROWS_AS(append(Circuit(4), gates::cmodmul(3, 6, 0, targets)), NotCoprime);
    CHECK_NOTHROW(append(Circuit(4), gates::cmodmul(5, 6, 0, targets)));
  }
  SECTION("cmodmul register must hold the modulus") {
    const std::vector<Qubit> targets = {1, 2};
    CHECK_THROWS_AS(append(Circuit(3), gates::cmodmul(2, 5, 0, targets)), InvalidGate);
  }
  SECTION("measurements must be trailing") {
    Circuit c(2);
    c.add(gates::measure(0));
    CHECK_NOTHROW(c.add(gates::measure(1)));
    CHECK_THROWS_AS(c.add(gates::h(0)), InvalidGate);
  }
}

TEST_CASE("depth uses greedy layering", "[circuit]") {
  Circuit parallel(2);
  parallel.add(gates::h(0)).add(gates::h(1));
  CHECK(depth(parallel) == 1);

  Circuit chain(2);
  chain.add(gates::h(0)).add(gates::cx(0, 1)).add(gates::h(1));
  CHECK(depth(chain) == 3);

  CHECK(depth(Circuit(3)) == 0);

  Circuit fenced(3);
  fenced.add(gates::h(0)).add(gates::barrier()).add(gates::h(2)).add(gates::measure(2));
  CHECK(depth(fenced) == 4);
}

TEST_CASE("gate_counts is an exact histogram", "[circuit]") {
  Circuit c(2);
  c.add(gates::cx(0, 1)).add(gates::cx(1, 0));
  const auto counts = gate_counts(c);
  CHECK(counts.size() == 1);
  CHECK(count_of(counts, GateKind::CX) == 2);
  CHECK(gate_counts(Circuit(1)).empty());
}

TEST_CASE("inverse reverses and inverts", "[circuit]") {
  Circuit h(1);
  h.add(gates::h(0));
  CHECK(inverse(h) == h);

  const double theta = 0.7;
  Circuit c(2);
  c.add(gates::cp(theta, 0, 1)).add(gates::h(0));
  Circuit expected(2);
  expected.add(gates::h(0)).add(gates::cp(-theta, 0, 1));
  CHECK(inverse(c) == expected);

  Circuit named(2);
  named.add(gates::s(0)).add(gates::t(1)).add(gates::sx(0));
  CHECK(inverse(named)[0].kind == GateKind::SXDG);
  CHECK(inverse(named)[1].kind == GateKind::TDG);
  CHECK(inverse(named)[2].kind == GateKind::SDG);

  const std::vector<Qubit> targets = {1, 2, 3};
  Circuit mm(4);
  mm.add(gates::cmodmul(2, 5, 0, targets));
  CHECK(inverse(mm)[0].modmul.multiplier == 3);  // 2*3 = 6 = 1 mod 5

  Circuit measured(1);
  measured.add(gates::measure(0));
  CHECK_THROWS_AS(inverse(measured), InvalidGate);
}

TEST_CASE("inverse is an involution and undoes the circuit", "[circuit][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Circuit c = testing::random_circuit(rng, {.num_qubits = 3, .num_gates = 25});
    CHECK(inverse(inverse(c)) == c);
    const Statevector psi(testing::random_state(rng, 3));
    const Statevector back = run(compose(c, inverse(c)), psi);
    CHECK(fidelity(back, psi) == Catch::Approx(1.0).margin(1e-10));
    const Eigen::MatrixXcd product = unitary_of(c) * unitary_of(inverse(c));
    CHECK(product.isIdentity(1e-10));
  }
}

TEST_CASE("depth bounds", "[circuit][property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit a = testing::random_circuit(rng, {.num_qubits = 4, .num_gates = 15});
    const Circuit b = testing::random_circuit(rng, {.num_qubits = 4, .num_gates = 10});
    CHECK(depth(a) <= a.size());
    CHECK(depth(compose(a, b)) <= depth(a) + depth(b));
  }
}

TEST_CASE("text format parses the documented statements", "[circuit][format]") {
  const Circuit c = parse_circuit("qubits 2\nh 0\ncx 0 1");
  Circuit expected(2);
  expected.add(gates::h(0)).add(gates::cx(0, 1));
  CHECK(c == expected);

  const Circuit full = parse_circuit(
      "# comment line\n"
      "qubits 7\n"
      "\n"
      "cp 1.5707963267948966 0 1   # trailing comment\n"
      "ccx 0 1 2\n"
      "swap 0 2\n"
      "rz 0.25 3\n"
      "cmodmul 4 35 0 1 2 3 4 5 6\n"
      "barrier\n"
      "measure 0\n");
  REQUIRE(full.size() == 7);
  CHECK(full[0].angle == std::numbers::pi / 2);
  CHECK(full[4].kind == GateKind::CMODMUL);
  CHECK(full[4].modmul == ModMul{4, 35});
  CHECK(full[4].qubits.size() == 7);
  CHECK(full[6].kind == GateKind::MEASURE);
}

TEST_CASE("parse errors carry line numbers", "[circuit][format]") {
  auto line_of = [](const char *text) {
    try {
      parse_circuit(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("qubits 1\ncx 0 1") == 2);
  CHECK(line_of("qubits 2\nh 0\nfoo 1") == 3);
  CHECK(line_of("h 0") == 1);
  CHECK(line_of("qubits 2\nrz abc 0") == 2);
  CHECK(line_of("qubits 2\nh 0\nmeasure 0\nh 1") == 4);
  CHECK(line_of("") > 0);
}

TEST_CASE("render and parse round-trip", "[circuit][format][property]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Circuit c = testing::random_circuit(rng, {.num_qubits = 4, .num_gates = 30});
    c.add(gates::measure(trial % 4));
    const std::string text = render_circuit(c);
    const Circuit back = parse_circuit(text);
    CHECK(back == c);
    CHECK(render_circuit(back) == text);
  }
}

TEST_CASE("relabel maps operands", "[circuit]") {
  Circuit c(2);
  c.add(gates::cx(0, 1));
  const std::vector<Qubit> mapping = {2, 0};
  const Circuit r = relabel(c, mapping, 3);
  CHECK(r.num_qubits() == 3);
  CHECK(r[0].qubits == std::vector<Qubit>{2, 0});
}
