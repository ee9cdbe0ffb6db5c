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
#include <numeric>

#include "qkit/simulator.hpp"
#include "qkit/transpiler.hpp"
#include "test_support.hpp"

using namespace qkit;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t cx_count(const Circuit &c) { return count_of(gate_counts(c), GateKind::CX); }

bool all_on_edges(const Circuit &c, const CouplingMap &m) {
  for (const auto &g : c) {
    if (g.kind == GateKind::CMODMUL || g.qubits.size() != 2) continue;
    if (!m.adjacent(g.qubits[0], g.qubits[1])) return false;
  }
  return true;
}

Circuit swap_absorption_circuit() {
  Circuit c(4);
  c.add(gates::swap(0, 2));
  c.add(gates::cx(2, 3));
  c.add(gates::swap(1, 3));
  c.add(gates::cx(3, 1));
  return c;
}

}  // namespace

TEST_CASE("coupling map construction and distances", "[transpiler]") {
  const auto line = CouplingMap::line(5);
  CHECK(line.adjacent(1, 2));
  CHECK(line.adjacent(2, 1));
  CHECK_FALSE(line.adjacent(0, 2));
  CHECK(line.distance(0, 4) == 4);
  CHECK(line.shortest_path(0, 3) == std::vector<Qubit>{0, 1, 2, 3});
  CHECK(line.degree(0) == 1);
  CHECK(line.degree(2) == 2);

  const auto ring = CouplingMap::ring(6);
  CHECK(ring.distance(0, 5) == 1);
  CHECK(ring.distance(0, 3) == 3);
  CHECK(CouplingMap::star(5).degree(0) == 4);
  CHECK(CouplingMap::all_to_all(4).edges().size() == 6);

  CHECK_THROWS_AS(CouplingMap(3, {{0, 0}}), InputError);
  CHECK_THROWS_AS(CouplingMap(3, {{0, 3}}), InputError);
  CHECK_THROWS_AS(CouplingMap(4, {{0, 1}, {2, 3}}), InputError);
}

TEST_CASE("coupling map files", "[transpiler]") {
  const auto m = CouplingMap::parse("qubits 3\n# a line\n0 1\n1 2  # tail comment\n");
  CHECK(m.num_physical() == 3);
  CHECK(m.edges().size() == 2);
  try {
    CouplingMap::parse("qubits 3\n0 1\n1 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(CouplingMap::parse("0 1\n"), ParseError);
  CHECK_THROWS_AS(CouplingMap::parse("qubits 2\n0 5\n"), ParseError);
}

TEST_CASE("basis gate sets", "[transpiler]") {
  const auto b = BasisGateSet::parse("cx, rz,sx,x");
  CHECK(b.kinds == BasisGateSet::default_set().kinds);
  CHECK_THROWS_AS(BasisGateSet::parse("cx,foo"), InputError);
  CHECK_THROWS_AS(BasisGateSet::parse(""), InputError);
}

TEST_CASE("SWAP translates to three CX", "[transpiler]") {
  Circuit c(2);
  c.add(gates::swap(0, 1));
  const auto t = translate_to_basis(c, BasisGateSet::default_set());
  CHECK(t.size() == 3);
  CHECK(cx_count(t) == 3);
  CHECK(equivalent_up_to_global_phase(c, t));
}

TEST_CASE("CCX decomposes with six CX", "[transpiler]") {
  Circuit c(3);
  c.add(gates::ccx(0, 1, 2));
  const auto d = decompose_multiqubit(c);
  CHECK(cx_count(d) == 6);
  CHECK(d.size() == 15);
  CHECK(equivalent_up_to_global_phase(c, d));
  const auto t = translate_to_basis(c, BasisGateSet::default_set());
  CHECK(cx_count(t) == 6);
  CHECK(equivalent_up_to_global_phase(c, t));
}

TEST_CASE("every translation rule preserves the unitary", "[transpiler]") {
  const auto basis = BasisGateSet::default_set();
  std::vector<Gate> samples;
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                     GateKind::SDG, GateKind::T, GateKind::TDG, GateKind::SX, GateKind::SXDG}) {
    samples.push_back(gates::single(k, 1));
  }
  samples.push_back(gates::rz(0.3, 0));
  samples.push_back(gates::p(-1.1, 0));
  samples.push_back(gates::cx(1, 0));
  samples.push_back(gates::cz(0, 2));
  samples.push_back(gates::cp(0.7, 2, 0));
  samples.push_back(gates::swap(0, 2));
  samples.push_back(gates::ccx(2, 0, 1));
  for (const auto &g : samples) {
    Circuit c(3);
    c.add(g);
    const auto t = translate_to_basis(c, basis);
    INFO(kind_name(g.kind));
    for (const auto &out : t) CHECK(basis.contains(out.kind));
    CHECK(equivalent_up_to_global_phase(c, t));
  }
}

TEST_CASE("translation without a rule fails", "[transpiler]") {
  Circuit c(1);
  c.add(gates::h(0));
  BasisGateSet only_rz{{GateKind::CX, GateKind::RZ}};
  CHECK_THROWS_AS(translate_to_basis(c, only_rz), TransformError);
}

TEST_CASE("CMODMUL, BARRIER and MEASURE pass through translation", "[transpiler]") {
  Circuit c(3);
  const std::vector<Qubit> targets{1, 2};
  c.add(gates::cmodmul(2, 3, 0, targets));
  c.add(gates::barrier());
  c.add(gates::measure(0));
  CHECK(translate_to_basis(c, BasisGateSet::default_set()) == c);
}

TEST_CASE("peephole cancellation and fusion", "[transpiler]") {
  const auto id = Layout::identity(2);
  SECTION("inverse pairs") {
    Circuit c(2);
    c.add(gates::h(0));
    c.add(gates::cx(0, 1));
    c.add(gates::cx(0, 1));
    c.add(gates::h(0));
    c.add(gates::s(1));
    c.add(gates::sdg(1));
    CHECK(optimize(c, id).circuit.empty());
  }
  SECTION("nested cancellation reaches a fixpoint") {
    Circuit c(1);
    c.add(gates::t(0));
    c.add(gates::sx(0));
    c.add(gates::sxdg(0));
    c.add(gates::tdg(0));
    const auto r = optimize(c, Layout::identity(1));
    CHECK(r.circuit.empty());
    CHECK(r.passes >= 2);
  }
  SECTION("rotation fusion") {
    Circuit c(1);
    c.add(gates::rz(0.25, 0));
    c.add(gates::rz(0.5, 0));
    const auto r = optimize(c, Layout::identity(1));
    REQUIRE(r.circuit.size() == 1);
    CHECK(r.circuit[0].angle == Catch::Approx(0.75));
  }
  SECTION("fused rotations that vanish are dropped") {
    Circuit c(1);
    c.add(gates::rz(kPi, 0));
    c.add(gates::rz(kPi, 0));
    CHECK(optimize(c, Layout::identity(1)).circuit.empty());
  }
  SECTION("controlled-phase fusion is symmetric") {
    Circuit c(2);
    c.add(gates::cp(0.4, 0, 1));
    c.add(gates::cp(0.2, 1, 0));
    const auto r = optimize(c, id);
    REQUIRE(r.circuit.size() == 1);
    CHECK(r.circuit[0].angle == Catch::Approx(0.6));
  }
  SECTION("different targets do not cancel") {
    Circuit c(2);
    c.add(gates::cx(0, 1));
    c.add(gates::cx(1, 0));
    CHECK(optimize(c, id, {.absorb_swaps = false}).circuit.size() == 2);
  }
  SECTION("gates on other wires do not block") {
    Circuit c(3);
    c.add(gates::x(0));
    c.add(gates::h(2));
    c.add(gates::x(0));
    const auto r = optimize(c, Layout::identity(3));
    CHECK(r.circuit.size() == 1);
  }
  SECTION("barriers block every rule") {
    Circuit c(2);
    c.add(gates::h(0));
    c.add(gates::barrier());
    c.add(gates::h(0));
    c.add(gates::swap(0, 1));
    c.add(gates::barrier());
    c.add(gates::cx(0, 1));
    const auto r = optimize(c, id);
    CHECK(r.circuit.size() == 6);
    CHECK(r.layout == id);
  }
}

TEST_CASE("swap absorption tracks the output permutation", "[transpiler]") {
  const Circuit c = swap_absorption_circuit();
  const auto r = optimize(c, Layout::identity(4));
  CHECK(r.swaps_absorbed == 2);
  CHECK(gate_counts(r.circuit) == GateCounts{{GateKind::CX, 2}});
  CHECK(r.circuit[0] == gates::cx(0, 3));
  CHECK(layout_aware_distance(c, r.circuit, r.layout) < 1e-12);

  SECTION("CX triples are absorbed as swaps") {
    Circuit t(3);
    t.add(gates::cx(0, 1));
    t.add(gates::cx(1, 0));
    t.add(gates::cx(0, 1));
    t.add(gates::h(1));
    t.add(gates::cx(1, 2));
    const auto o = optimize(t, Layout::identity(3));
    CHECK(o.swaps_absorbed == 1);
    CHECK(o.circuit.size() == 2);
    CHECK(layout_aware_distance(t, o.circuit, o.layout) < 1e-12);
  }
  SECTION("coupling constraint vetoes absorption that breaks adjacency") {
    Circuit t(3);
    t.add(gates::swap(0, 1));
    t.add(gates::cx(1, 2));
    const auto line = CouplingMap::line(3);
    const auto o = optimize(t, Layout::identity(3), {.coupling = &line});
    CHECK(o.swaps_absorbed == 0);
    CHECK(o.circuit == t);
  }
}

TEST_CASE("layout strategies", "[transpiler]") {
  Circuit c(3);
  c.add(gates::cx(2, 0));
  c.add(gates::cx(2, 1));
  c.add(gates::cx(2, 0));
  SECTION("trivial") {
    const auto l = assign_layout(c, CouplingMap::line(5), LayoutStrategy::kTrivial);
    CHECK(l == Layout::identity(5));
  }
  SECTION("degree greedy puts the hub at the centre of a star") {
    const auto l = assign_layout(c, CouplingMap::star(4, 3), LayoutStrategy::kDegreeGreedy);
    CHECK(l.initial[2] == 3);
    l.validate();
  }
  SECTION("degree greedy keeps interacting qubits adjacent on a line") {
    const auto m = CouplingMap::line(4);
    const auto l = assign_layout(c, m, LayoutStrategy::kDegreeGreedy);
    l.validate();
    CHECK(m.adjacent(l.initial[2], l.initial[0]));
    CHECK(m.adjacent(l.initial[2], l.initial[1]));
  }
  CHECK_THROWS_AS(assign_layout(c, CouplingMap::line(2), LayoutStrategy::kTrivial),
                  TransformError);
}

TEST_CASE("routing places every two-qubit gate on an edge", "[transpiler]") {
  std::mt19937_64 rng(41);
  const auto m = CouplingMap::line(5);
  for (int i = 0; i < 20; ++i) {
    const Circuit c = decompose_multiqubit(
        testing::random_circuit(rng, {.num_qubits = 5, .num_gates = 25}));
    const auto r = route(c, Layout::identity(5), m);
    CHECK(all_on_edges(r.circuit, m));
    CHECK(count_of(gate_counts(r.circuit), GateKind::SWAP) ==
          count_of(gate_counts(c), GateKind::SWAP) + r.swaps_inserted);
    CHECK(layout_aware_distance(c, r.circuit, r.layout) < 1e-9);
  }
}

TEST_CASE("schedule is ASAP with idle windows", "[transpiler]") {
  Circuit c(3);
  c.add(gates::h(0));        // [0,1) on q0
  c.add(gates::cx(0, 1));    // [1,3) on q0,q1
  c.add(gates::x(2));        // [0,1) on q2
  c.add(gates::measure(1));  // [3,8) on q1
  const auto s = schedule(c, default_durations());
  CHECK(s.start == std::vector<std::uint64_t>{0, 1, 0, 3});
  CHECK(s.makespan == 8);
  const std::vector<IdleWindow> expected{{0, 3, 5}, {1, 0, 1}, {2, 1, 7}};
  CHECK(s.idle_windows == expected);

  SECTION("barrier synchronizes") {
    Circuit b(2);
    b.add(gates::cx(0, 1));
    b.add(gates::h(0));
    b.add(gates::barrier());
    b.add(gates::h(1));
    const auto sb = schedule(b, default_durations());
    CHECK(sb.start[3] == 3);
    CHECK(sb.idle_windows == std::vector<IdleWindow>{{0, 3, 1}, {1, 2, 1}});
  }
  SECTION("missing durations are an error") {
    Durations d;
    d[GateKind::H] = 1;
    CHECK_THROWS_AS(schedule(c, d), TransformError);
  }
}

TEST_CASE("the swap-absorption example compiles to two CX", "[transpiler]") {
  const auto result = transpile(swap_absorption_circuit(), CouplingMap::line(4), BasisGateSet::default_set());
  const auto counts = gate_counts(result.circuit);
  CHECK(counts == GateCounts{{GateKind::CX, 2}});
  CHECK(result.report.swap_inserted == 0);
  CHECK(result.report.swap_eliminated == 2);
  CHECK(layout_aware_distance(swap_absorption_circuit(), result.circuit, result.report.layout) < 1e-12);
}

TEST_CASE("end-to-end transpile is sound", "[transpiler]") {
  std::mt19937_64 rng(2718);
  const BasisGateSet basis = BasisGateSet::default_set();
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 4);
    const Circuit c = testing::random_circuit(rng, {.num_qubits = n, .num_gates = 1 + rng() % 30});
    for (const auto &m : {CouplingMap::line(5), CouplingMap::ring(5)}) {
      for (auto strategy : {LayoutStrategy::kTrivial, LayoutStrategy::kDegreeGreedy}) {
        const auto r = transpile(c, m, basis, {.layout = strategy});
        for (const auto &g : r.circuit) CHECK(basis.contains(g.kind));
        CHECK(all_on_edges(r.circuit, m));
        CHECK(layout_aware_distance(c, r.circuit, r.report.layout) < 1e-9);
      }
    }
  }
}

TEST_CASE("transpile report", "[transpiler]") {
  Circuit c(3);
  const std::vector<Qubit> targets{1, 2};
  c.add(gates::h(0));
  c.add(gates::cmodmul(2, 3, 0, targets));
  c.add(gates::measure(0));
  const auto r = transpile(c, CouplingMap::line(3), BasisGateSet::default_set());
  CHECK(r.report.cmodmul_passthrough == 1);
  std::vector<std::string> names;
  for (const auto &s : r.report.stages) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"init", "virtual_optimization", "layout", "routing",
                                          "translation", "optimization", "scheduling"});
  const auto j = r.report.to_json();
  CHECK(j.contains("output_permutation"));
  CHECK(j["schedule"]["makespan"].get<std::uint64_t>() == r.report.schedule.makespan);
  CHECK(r.circuit.has_measure());
}
