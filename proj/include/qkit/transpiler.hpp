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

// Pass pipeline: multi-qubit decomposition, layout, routing, basis
// translation, peephole optimization and ASAP scheduling.
//
// Every pass keeps the invariant
//
//   U(current) = P(layout.final) * U(original) * P(layout.initial)^-1
//
// up to global phase, where P(m) moves the state of qubit i to qubit m[i].
// Routing and swap absorption only ever change `final`.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkit/circuit.hpp"

namespace qkit {

/// Undirected physical connectivity. Construction rejects self-loops,
/// out-of-range endpoints and disconnected graphs.
class CouplingMap {
 public:
  CouplingMap(std::size_t num_physical, const std::vector<std::pair<Qubit, Qubit>> &edges);

  static CouplingMap line(std::size_t n);
  static CouplingMap ring(std::size_t n);
  static CouplingMap star(std::size_t n, Qubit center = 0);
  static CouplingMap all_to_all(std::size_t n);
  /// `qubits <n>` header followed by one `u v` edge per line; '#' comments.
  static CouplingMap parse(std::string_view text);

  std::size_t num_physical() const { return num_physical_; }
  const std::set<std::pair<Qubit, Qubit>> &edges() const { return edges_; }
  bool adjacent(Qubit a, Qubit b) const;
  const std::vector<Qubit> &neighbors(Qubit q) const { return adjacency_[q]; }
  std::size_t degree(Qubit q) const { return adjacency_[q].size(); }
  std::size_t distance(Qubit a, Qubit b) const { return distances_[a][b]; }
  /// BFS path a..b; neighbors explored in ascending index order.
  std::vector<Qubit> shortest_path(Qubit a, Qubit b) const;

 private:
  std::size_t num_physical_;
  std::set<std::pair<Qubit, Qubit>> edges_;
  std::vector<std::vector<Qubit>> adjacency_;
  std::vector<std::vector<std::size_t>> distances_;
};

struct BasisGateSet {
  std::set<GateKind> kinds;

  /// {CX, RZ, SX, X}.
  static BasisGateSet default_set();
  /// Comma-separated mnemonics, e.g. "cx,rz,sx,x".
  static BasisGateSet parse(std::string_view list);
  bool contains(GateKind kind) const { return kinds.count(kind) != 0; }
};

/// Virtual-to-physical placement at circuit entry (`initial`) and where each
/// virtual qubit's state sits at circuit exit (`final`).
struct Layout {
  std::vector<Qubit> initial;
  std::vector<Qubit> final;

  static Layout identity(std::size_t n);
  std::size_t size() const { return initial.size(); }
  /// Throws TransformError unless both maps are permutations.
  void validate() const;
  bool operator==(const Layout &) const = default;
};

enum class LayoutStrategy { kTrivial, kDegreeGreedy };

using Durations = std::map<GateKind, std::uint64_t>;

/// Single-qubit gates 1, two-qubit gates 2, CCX 6, CMODMUL 10, MEASURE 5.
Durations default_durations();

struct IdleWindow {
  Qubit qubit = 0;
  std::uint64_t start = 0;
  std::uint64_t duration = 0;

  bool operator==(const IdleWindow &) const = default;
};

struct Schedule {
  std::vector<std::uint64_t> start;     // per gate
  std::vector<std::uint64_t> duration;  // per gate
  std::uint64_t makespan = 0;
  std::vector<IdleWindow> idle_windows;

  nlohmann::ordered_json to_json() const;
};

struct StageMetrics {
  std::string name;
  std::size_t depth_before = 0;
  std::size_t depth_after = 0;
  GateCounts counts_before;
  GateCounts counts_after;
};

struct TranspileReport {
  std::vector<StageMetrics> stages;
  std::size_t swap_inserted = 0;
  std::size_t swap_eliminated = 0;
  std::size_t optimize_passes = 0;
  std::size_t cmodmul_passthrough = 0;
  Layout layout;
  Schedule schedule;

  nlohmann::ordered_json to_json() const;
};

struct TranspileOptions {
  LayoutStrategy layout = LayoutStrategy::kDegreeGreedy;
  Durations durations = default_durations();
  std::size_t max_optimize_passes = 100;
};

struct TranspileResult {
  Circuit circuit;
  TranspileReport report;
};

// Init: CCX becomes 6 CX plus H/T/TDG; everything else passes through.
Circuit decompose_multiqubit(const Circuit &circuit);

Layout assign_layout(const Circuit &circuit, const CouplingMap &coupling,
                     LayoutStrategy strategy);

/// Relabels a virtual circuit onto the physical register of `layout`.
Circuit apply_layout(const Circuit &circuit, const Layout &layout);

struct RouteResult {
  Circuit circuit;
  Layout layout;
  std::size_t swaps_inserted = 0;
};

/// Inserts SWAPs so every two-qubit gate of the physical circuit acts on an
/// edge. CMODMUL passes through unrouted.
RouteResult route(const Circuit &circuit, const Layout &layout, const CouplingMap &coupling);

/// Rewrites into `basis` (BARRIER, MEASURE and CMODMUL pass through).
Circuit translate_to_basis(const Circuit &circuit, const BasisGateSet &basis);

struct OptimizeOptions {
  std::size_t max_passes = 100;
  bool absorb_swaps = true;
  /// When set, swap absorption is only applied if every relabeled two-qubit
  /// gate stays on an edge.
  const CouplingMap *coupling = nullptr;
};

struct OptimizeResult {
  Circuit circuit;
  Layout layout;
  std::size_t passes = 0;
  std::size_t swaps_absorbed = 0;
};

/// Peephole rules to a fixpoint: inverse-pair cancellation, RZ/P/CP fusion,
/// and absorption of SWAPs (or CX-CX-CX swap patterns) into the output
/// permutation. Rules never act across a BARRIER.
OptimizeResult optimize(const Circuit &circuit, const Layout &layout,
                        const OptimizeOptions &options = {});

/// ASAP schedule. Throws TransformError when a present kind has no duration
/// (BARRIER needs none).
Schedule schedule(const Circuit &circuit, const Durations &durations);

TranspileResult transpile(const Circuit &circuit, const CouplingMap &coupling,
                          const BasisGateSet &basis, const TranspileOptions &options = {});

/// Max entry deviation (after global phase alignment) between U(output) and
/// P(final) U(input) P(initial)^-1. `input` is widened to the output register.
double layout_aware_distance(const Circuit &input, const Circuit &output, const Layout &layout);

}  // namespace qkit
