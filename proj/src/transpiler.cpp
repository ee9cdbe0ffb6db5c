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

#include "qkit/transpiler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>

#include "qkit/reporting.hpp"
#include "qkit/simulator.hpp"

namespace qkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

std::pair<Qubit, Qubit> ordered(Qubit a, Qubit b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

// ---------------------------------------------------------------------------
// CouplingMap

CouplingMap::CouplingMap(std::size_t num_physical,
                         const std::vector<std::pair<Qubit, Qubit>> &edges)
    : num_physical_(num_physical), adjacency_(num_physical) {
  if (num_physical == 0) throw InputError("coupling map needs at least one qubit");
  for (auto [a, b] : edges) {
    if (a == b) throw InputError("self-loop on qubit " + std::to_string(a));
    if (a >= num_physical || b >= num_physical) {
      throw InputError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                       " out of range for " + std::to_string(num_physical) + " qubits");
    }
    if (edges_.insert(ordered(a, b)).second) {
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
    }
  }
  for (auto &n : adjacency_) std::sort(n.begin(), n.end());

  distances_.assign(num_physical, std::vector<std::size_t>(num_physical, kUnreachable));
  for (Qubit src = 0; src < num_physical; ++src) {
    auto &dist = distances_[src];
    std::deque<Qubit> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      const Qubit u = queue.front();
      queue.pop_front();
      for (Qubit v : adjacency_[u]) {
        if (dist[v] == kUnreachable) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (Qubit q = 0; q < num_physical; ++q) {
      if (dist[q] == kUnreachable) {
        throw InputError("coupling map is disconnected: no path from " + std::to_string(src) +
                         " to " + std::to_string(q));
      }
    }
  }
}

CouplingMap CouplingMap::line(std::size_t n) {
  std::vector<std::pair<Qubit, Qubit>> edges;
  for (Qubit q = 0; q + 1 < n; ++q) edges.emplace_back(q, q + 1);
  return CouplingMap(n, edges);
}

CouplingMap CouplingMap::ring(std::size_t n) {
  std::vector<std::pair<Qubit, Qubit>> edges;
  for (Qubit q = 0; q + 1 < n; ++q) edges.emplace_back(q, q + 1);
  if (n > 2) edges.emplace_back(static_cast<Qubit>(n - 1), 0);
  return CouplingMap(n, edges);
}

CouplingMap CouplingMap::star(std::size_t n, Qubit center) {
  std::vector<std::pair<Qubit, Qubit>> edges;
  for (Qubit q = 0; q < n; ++q) {
    if (q != center) edges.emplace_back(center, q);
  }
  return CouplingMap(n, edges);
}

CouplingMap CouplingMap::all_to_all(std::size_t n) {
  std::vector<std::pair<Qubit, Qubit>> edges;
  for (Qubit a = 0; a < n; ++a) {
    for (Qubit b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return CouplingMap(n, edges);
}

CouplingMap CouplingMap::parse(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<std::pair<Qubit, Qubit>> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto number = [&](std::string_view tok) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ParseError(line_no, "invalid number '" + std::string(tok) + "'");
    }
    return v;
  };
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) continue;
    if (!n) {
      if (tokens.size() != 2 || tokens[0] != "qubits") {
        throw ParseError(line_no, "expected header 'qubits <n>'");
      }
      n = number(tokens[1]);
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected edge 'u v'");
    const auto a = number(tokens[0]);
    const auto b = number(tokens[1]);
    if (a >= *n || b >= *n || a == b) {
      throw ParseError(line_no, "invalid edge " + std::string(tokens[0]) + " " +
                                    std::string(tokens[1]));
    }
    edges.emplace_back(static_cast<Qubit>(a), static_cast<Qubit>(b));
  }
  if (!n) throw ParseError(line_no, "missing header 'qubits <n>'");
  return CouplingMap(*n, edges);
}

bool CouplingMap::adjacent(Qubit a, Qubit b) const { return edges_.count(ordered(a, b)) != 0; }

std::vector<Qubit> CouplingMap::shortest_path(Qubit a, Qubit b) const {
  std::vector<Qubit> parent(num_physical_, std::numeric_limits<Qubit>::max());
  std::deque<Qubit> queue{a};
  parent[a] = a;
  while (!queue.empty() && parent[b] == std::numeric_limits<Qubit>::max()) {
    const Qubit u = queue.front();
    queue.pop_front();
    for (Qubit v : adjacency_[u]) {
      if (parent[v] == std::numeric_limits<Qubit>::max()) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  std::vector<Qubit> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

// ---------------------------------------------------------------------------
// Basis, layout, durations

BasisGateSet BasisGateSet::default_set() {
  return {{GateKind::CX, GateKind::RZ, GateKind::SX, GateKind::X}};
}

BasisGateSet BasisGateSet::parse(std::string_view list) {
  BasisGateSet basis;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view name = list.substr(pos, comma - pos);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
    pos = comma + 1;
    if (name.empty()) continue;
    const auto kind = kind_from_name(name);
    if (!kind || *kind == GateKind::BARRIER || *kind == GateKind::MEASURE ||
        *kind == GateKind::CMODMUL) {
      throw InputError("unknown basis gate '" + std::string(name) + "'");
    }
    basis.kinds.insert(*kind);
  }
  if (basis.kinds.empty()) throw InputError("empty basis gate set");
  return basis;
}

Layout Layout::identity(std::size_t n) {
  Layout l;
  l.initial.resize(n);
  std::iota(l.initial.begin(), l.initial.end(), Qubit{0});
  l.final = l.initial;
  return l;
}

void Layout::validate() const {
  auto is_permutation = [](std::vector<Qubit> v) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != i) return false;
    }
    return true;
  };
  if (initial.size() != final.size() || !is_permutation(initial) || !is_permutation(final)) {
    throw TransformError("layout is not a bijection");
  }
}

Durations default_durations() {
  Durations d;
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                     GateKind::SDG, GateKind::T, GateKind::TDG, GateKind::SX, GateKind::SXDG,
                     GateKind::RZ, GateKind::P}) {
    d[k] = 1;
  }
  for (GateKind k : {GateKind::CX, GateKind::CZ, GateKind::CP, GateKind::SWAP}) d[k] = 2;
  d[GateKind::CCX] = 6;
  d[GateKind::CMODMUL] = 10;
  d[GateKind::MEASURE] = 5;
  return d;
}

// ---------------------------------------------------------------------------
// Init

namespace {

void append_ccx_template(Circuit &out, Qubit a, Qubit b, Qubit c) {
  out.add(gates::h(c));
  out.add(gates::cx(b, c));
  out.add(gates::tdg(c));
  out.add(gates::cx(a, c));
  out.add(gates::t(c));
  out.add(gates::cx(b, c));
  out.add(gates::tdg(c));
  out.add(gates::cx(a, c));
  out.add(gates::t(b));
  out.add(gates::t(c));
  out.add(gates::h(c));
  out.add(gates::cx(a, b));
  out.add(gates::t(a));
  out.add(gates::tdg(b));
  out.add(gates::cx(a, b));
}

}  // namespace

Circuit decompose_multiqubit(const Circuit &circuit) {
  Circuit out(circuit.num_qubits(), circuit.name());
  for (const auto &g : circuit) {
    if (g.kind == GateKind::CCX) {
      append_ccx_template(out, g.qubits[0], g.qubits[1], g.qubits[2]);
    } else {
      out.add(g);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layout

Layout assign_layout(const Circuit &circuit, const CouplingMap &coupling,
                     LayoutStrategy strategy) {
  const std::size_t nv = circuit.num_qubits();
  const std::size_t np = coupling.num_physical();
  if (nv > np) {
    throw TransformError("circuit needs " + std::to_string(nv) + " qubits, coupling map has " +
                         std::to_string(np));
  }
  if (strategy == LayoutStrategy::kTrivial) return Layout::identity(np);

  // Interaction weights between virtual qubits; ancillas (>= nv) have none.
  std::vector<std::vector<std::size_t>> weight(np, std::vector<std::size_t>(np, 0));
  std::vector<std::size_t> total(np, 0);
  for (const auto &g : circuit) {
    if (g.kind == GateKind::BARRIER || g.qubits.size() < 2) continue;
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      for (std::size_t j = i + 1; j < g.qubits.size(); ++j) {
        ++weight[g.qubits[i]][g.qubits[j]];
        ++weight[g.qubits[j]][g.qubits[i]];
        ++total[g.qubits[i]];
        ++total[g.qubits[j]];
      }
    }
  }

  constexpr Qubit kFree = std::numeric_limits<Qubit>::max();
  std::vector<Qubit> phys_of(np, kFree);
  std::vector<bool> used(np, false);

  auto best_free_by_degree = [&]() {
    Qubit best = kFree;
    for (Qubit p = 0; p < np; ++p) {
      if (used[p]) continue;
      if (best == kFree || coupling.degree(p) > coupling.degree(best)) best = p;
    }
    return best;
  };

  while (true) {
    // Next virtual: strongest tie to already placed qubits, then busiest, then lowest index.
    Qubit pick = kFree;
    std::size_t pick_link = 0;
    for (Qubit v = 0; v < np; ++v) {
      if (phys_of[v] != kFree || total[v] == 0) continue;
      std::size_t link = 0;
      for (Qubit u = 0; u < np; ++u) {
        if (phys_of[u] != kFree) link += weight[v][u];
      }
      if (pick == kFree || link > pick_link || (link == pick_link && total[v] > total[pick])) {
        pick = v;
        pick_link = link;
      }
    }
    if (pick == kFree) break;

    Qubit target = kFree;
    if (pick_link == 0) {
      target = best_free_by_degree();
    } else {
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      for (Qubit p = 0; p < np; ++p) {
        if (used[p]) continue;
        std::size_t cost = 0;
        for (Qubit u = 0; u < np; ++u) {
          if (phys_of[u] != kFree) cost += weight[pick][u] * coupling.distance(p, phys_of[u]);
        }
        if (cost < best_cost ||
            (cost == best_cost && coupling.degree(p) > coupling.degree(target))) {
          best_cost = cost;
          target = p;
        }
      }
    }
    phys_of[pick] = target;
    used[target] = true;
  }
  // Idle virtual qubits and ancillas fill the remaining physical qubits in order.
  Qubit next = 0;
  for (Qubit v = 0; v < np; ++v) {
    if (phys_of[v] != kFree) continue;
    while (used[next]) ++next;
    phys_of[v] = next;
    used[next] = true;
  }
  Layout layout;
  layout.initial = phys_of;
  layout.final = phys_of;
  return layout;
}

Circuit apply_layout(const Circuit &circuit, const Layout &layout) {
  if (circuit.num_qubits() > layout.size()) {
    throw TransformError("layout smaller than circuit");
  }
  return relabel(circuit, layout.initial, layout.size());
}

// ---------------------------------------------------------------------------
// Routing

RouteResult route(const Circuit &circuit, const Layout &layout, const CouplingMap &coupling) {
  const std::size_t np = coupling.num_physical();
  if (circuit.num_qubits() != np || layout.size() != np) {
    throw TransformError("routing expects a circuit laid out on all " + std::to_string(np) +
                         " physical qubits");
  }
  // where[p]: current location of the state the unrouted circuit keeps on p.
  std::vector<Qubit> where(np), at(np);
  std::iota(where.begin(), where.end(), Qubit{0});
  std::iota(at.begin(), at.end(), Qubit{0});

  RouteResult result{Circuit(np, circuit.name()), layout, 0};
  auto emit_swap = [&](Qubit a, Qubit b) {
    result.circuit.add(gates::swap(a, b));
    ++result.swaps_inserted;
    std::swap(at[a], at[b]);
    where[at[a]] = a;
    where[at[b]] = b;
  };

  for (Gate g : circuit) {
    if (g.kind == GateKind::CCX) {
      throw TransformError("routing needs CCX decomposed first");
    }
    if (g.qubits.size() == 2) {
      const Qubit a = where[g.qubits[0]];
      const Qubit b = where[g.qubits[1]];
      if (!coupling.adjacent(a, b)) {
        const auto path = coupling.shortest_path(a, b);
        for (std::size_t i = 0; i + 2 < path.size(); ++i) emit_swap(path[i], path[i + 1]);
      }
    }
    for (Qubit &q : g.qubits) q = where[q];
    result.circuit.add(std::move(g));
  }
  for (Qubit &q : result.layout.final) q = where[q];
  return result;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

std::vector<Gate> rewrite_rule(const Gate &g) {
  using namespace gates;
  const Qubit q = g.qubits.empty() ? 0 : g.qubits[0];
  switch (g.kind) {
    case GateKind::H: return {rz(kPi / 2, q), sx(q), rz(kPi / 2, q)};
    case GateKind::S: return {rz(kPi / 2, q)};
    case GateKind::SDG: return {rz(-kPi / 2, q)};
    case GateKind::T: return {rz(kPi / 4, q)};
    case GateKind::TDG: return {rz(-kPi / 4, q)};
    case GateKind::P: return {rz(g.angle, q)};
    case GateKind::Z: return {rz(kPi, q)};
    case GateKind::Y: return {rz(kPi, q), x(q)};
    case GateKind::X: return {sx(q), sx(q)};
    case GateKind::SXDG: return {rz(kPi, q), sx(q), rz(kPi, q)};
    case GateKind::CZ: return {h(g.qubits[1]), cx(g.qubits[0], g.qubits[1]), h(g.qubits[1])};
    case GateKind::CP: {
      const Qubit c = g.qubits[0], t = g.qubits[1];
      const double half = g.angle / 2;
      return {rz(half, c), rz(half, t), cx(c, t), rz(-half, t), cx(c, t)};
    }
    case GateKind::SWAP: {
      const Qubit a = g.qubits[0], b = g.qubits[1];
      return {cx(a, b), cx(b, a), cx(a, b)};
    }
    case GateKind::CCX: {
      Circuit tmp(*std::max_element(g.qubits.begin(), g.qubits.end()) + 1);
      append_ccx_template(tmp, g.qubits[0], g.qubits[1], g.qubits[2]);
      return tmp.gates();
    }
    default: return {};
  }
}

bool passes_through(GateKind kind) {
  return kind == GateKind::BARRIER || kind == GateKind::MEASURE || kind == GateKind::CMODMUL;
}

void translate_gate(const Gate &g, const BasisGateSet &basis, Circuit &out, int depth) {
  if (passes_through(g.kind) || basis.contains(g.kind)) {
    out.add(g);
    return;
  }
  const auto rule = rewrite_rule(g);
  if (rule.empty() || depth > 8) {
    throw TransformError("no rule translates '" + std::string(kind_name(g.kind)) +
                         "' into the requested basis");
  }
  for (const auto &r : rule) translate_gate(r, basis, out, depth + 1);
}

}  // namespace

Circuit translate_to_basis(const Circuit &circuit, const BasisGateSet &basis) {
  Circuit out(circuit.num_qubits(), circuit.name());
  for (const auto &g : circuit) translate_gate(g, basis, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Peephole optimization

namespace {

bool same_qubit_set(const Gate &a, const Gate &b) {
  if (a.qubits.size() != b.qubits.size()) return false;
  auto x = a.qubits, y = b.qubits;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

bool symmetric_operands(GateKind kind) {
  return kind == GateKind::CZ || kind == GateKind::CP || kind == GateKind::SWAP;
}

/// True when `b` undoes `a` exactly (given they act on the same qubit set).
bool cancels(const Gate &a, const Gate &b) {
  if (a.kind == GateKind::MEASURE || a.kind == GateKind::BARRIER) return false;
  if (kind_has_angle(a.kind)) return false;  // handled by fusion
  const Gate inv = inverse(a);
  if (inv.kind != b.kind) return false;
  if (a.kind == GateKind::CMODMUL) {
    return inv.qubits == b.qubits && inv.modmul == b.modmul;
  }
  if (a.kind == GateKind::CCX) {
    return a.qubits[2] == b.qubits[2];
  }
  if (symmetric_operands(a.kind)) return true;
  return a.qubits == b.qubits;
}

bool fusable(const Gate &a, const Gate &b) {
  return kind_has_angle(a.kind) && a.kind == b.kind;
}

double wrap_angle(double theta) {
  double r = std::remainder(theta, 2 * kPi);  // in [-pi, pi]
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

bool negligible(double theta) { return std::abs(wrap_angle(theta)) < 1e-12; }

class PeepholeEngine {
 public:
  PeepholeEngine(const Circuit &circuit, Layout layout, const OptimizeOptions &options)
      : num_qubits_(circuit.num_qubits()),
        name_(circuit.name()),
        gates_(circuit.gates().begin(), circuit.gates().end()),
        alive_(circuit.size(), true),
        layout_(std::move(layout)),
        options_(options) {}

  OptimizeResult run() {
    std::size_t passes = 0;
    while (passes < options_.max_passes) {
      ++passes;
      if (!pass()) break;
    }
    OptimizeResult out{Circuit(num_qubits_, name_), layout_, passes, absorbed_};
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (alive_[i]) out.circuit.add(gates_[i]);
    }
    return out;
  }

 private:
  bool touches(std::size_t j, const Gate &g) const {
    if (gates_[j].kind == GateKind::BARRIER) return true;
    for (Qubit q : gates_[j].qubits) {
      if (std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end()) return true;
    }
    return false;
  }

  /// Next live gate sharing a qubit with gate i (BARRIERs share every qubit).
  std::optional<std::size_t> next_on_wires(std::size_t i) const {
    for (std::size_t j = i + 1; j < gates_.size(); ++j) {
      if (alive_[j] && touches(j, gates_[i])) return j;
    }
    return std::nullopt;
  }

  bool pass() {
    bool changed = false;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (!alive_[i]) continue;
      Gate &g = gates_[i];
      if (g.kind == GateKind::BARRIER || g.kind == GateKind::MEASURE) continue;

      if (kind_has_angle(g.kind) && negligible(g.angle)) {
        alive_[i] = false;
        changed = true;
        continue;
      }
      if (options_.absorb_swaps && try_absorb(i)) {
        changed = true;
        continue;
      }
      const auto j = next_on_wires(i);
      if (!j) continue;
      Gate &h = gates_[*j];
      if (h.kind == GateKind::BARRIER || !same_qubit_set(g, h)) continue;
      if (cancels(g, h)) {
        alive_[i] = alive_[*j] = false;
        changed = true;
      } else if (fusable(g, h) && (symmetric_operands(g.kind) || g.qubits == h.qubits)) {
        g.angle = wrap_angle(g.angle + h.angle);
        alive_[*j] = false;
        if (negligible(g.angle)) alive_[i] = false;
        changed = true;
      }
    }
    return changed;
  }

  /// Recognizes SWAP(a,b) or CX(a,b) CX(b,a) CX(a,b) starting at gate i and,
  /// when allowed, deletes it and relabels a <-> b on everything after it.
  bool try_absorb(std::size_t i) {
    const Gate &g = gates_[i];
    std::vector<std::size_t> pattern{i};
    if (g.kind == GateKind::CX) {
      const auto j = next_on_wires(i);
      if (!j || gates_[*j].kind != GateKind::CX ||
          gates_[*j].qubits != std::vector<Qubit>{g.qubits[1], g.qubits[0]}) {
        return false;
      }
      const auto k = next_on_wires(*j);
      if (!k || gates_[*k].kind != GateKind::CX || gates_[*k].qubits != g.qubits) return false;
      pattern = {i, *j, *k};
    } else if (g.kind != GateKind::SWAP) {
      return false;
    }
    const Qubit a = g.qubits[0], b = g.qubits[1];
    auto swapped = [a, b](Qubit q) { return q == a ? b : (q == b ? a : q); };

    const std::size_t last = pattern.back();
    for (std::size_t j = last + 1; j < gates_.size(); ++j) {
      if (!alive_[j]) continue;
      if (gates_[j].kind == GateKind::BARRIER) return false;
      if (options_.coupling && gates_[j].qubits.size() == 2 &&
          gates_[j].kind != GateKind::CMODMUL) {
        if (!options_.coupling->adjacent(swapped(gates_[j].qubits[0]),
                                         swapped(gates_[j].qubits[1]))) {
          return false;
        }
      }
    }
    // Gates between the pattern members on other wires are untouched.
    for (std::size_t idx : pattern) alive_[idx] = false;
    for (std::size_t j = last + 1; j < gates_.size(); ++j) {
      if (!alive_[j]) continue;
      for (Qubit &q : gates_[j].qubits) q = swapped(q);
    }
    for (Qubit &q : layout_.final) q = swapped(q);
    ++absorbed_;
    return true;
  }

  std::size_t num_qubits_;
  std::string name_;
  std::vector<Gate> gates_;
  std::vector<bool> alive_;
  Layout layout_;
  OptimizeOptions options_;
  std::size_t absorbed_ = 0;
};

}  // namespace

OptimizeResult optimize(const Circuit &circuit, const Layout &layout,
                        const OptimizeOptions &options) {
  if (layout.size() != circuit.num_qubits()) {
    throw TransformError("layout width " + std::to_string(layout.size()) +
                         " does not match circuit width " + std::to_string(circuit.num_qubits()));
  }
  return PeepholeEngine(circuit, layout, options).run();
}

// ---------------------------------------------------------------------------
// Scheduling

Schedule schedule(const Circuit &circuit, const Durations &durations) {
  const std::size_t n = circuit.num_qubits();
  Schedule s;
  s.start.reserve(circuit.size());
  s.duration.reserve(circuit.size());
  std::vector<std::uint64_t> ready(n, 0);
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> busy(n);

  for (const auto &g : circuit) {
    if (g.kind == GateKind::BARRIER) {
      const std::uint64_t t = *std::max_element(ready.begin(), ready.end());
      std::fill(ready.begin(), ready.end(), t);
      s.start.push_back(t);
      s.duration.push_back(0);
      continue;
    }
    auto it = durations.find(g.kind);
    if (it == durations.end()) {
      throw TransformError("no duration configured for '" + std::string(kind_name(g.kind)) + "'");
    }
    std::uint64_t t = 0;
    for (Qubit q : g.qubits) t = std::max(t, ready[q]);
    for (Qubit q : g.qubits) {
      ready[q] = t + it->second;
      busy[q].emplace_back(t, t + it->second);
    }
    s.start.push_back(t);
    s.duration.push_back(it->second);
    s.makespan = std::max(s.makespan, t + it->second);
  }
  for (Qubit q = 0; q < n; ++q) {
    if (busy[q].empty()) continue;
    std::uint64_t cursor = 0;
    for (auto [begin, end] : busy[q]) {
      if (begin > cursor) s.idle_windows.push_back({q, cursor, begin - cursor});
      cursor = end;
    }
    if (s.makespan > cursor) s.idle_windows.push_back({q, cursor, s.makespan - cursor});
  }
  return s;
}

nlohmann::ordered_json Schedule::to_json() const {
  nlohmann::ordered_json windows = nlohmann::ordered_json::array();
  for (const auto &w : idle_windows) {
    windows.push_back({{"qubit", w.qubit}, {"start", w.start}, {"duration", w.duration}});
  }
  return {{"makespan", makespan}, {"start", start}, {"duration", duration},
          {"idle_windows", windows}};
}

// ---------------------------------------------------------------------------
// Pipeline

nlohmann::ordered_json TranspileReport::to_json() const {
  nlohmann::ordered_json st = nlohmann::ordered_json::array();
  for (const auto &m : stages) {
    st.push_back({{"name", m.name},
                  {"depth_before", m.depth_before},
                  {"depth_after", m.depth_after},
                  {"counts_before", gate_counts_json(m.counts_before)},
                  {"counts_after", gate_counts_json(m.counts_after)}});
  }
  return {{"stages", st},
          {"swap_inserted", swap_inserted},
          {"swap_eliminated", swap_eliminated},
          {"optimize_passes", optimize_passes},
          {"cmodmul_passthrough", cmodmul_passthrough},
          {"initial_layout", layout.initial},
          {"output_permutation", layout.final},
          {"schedule", schedule.to_json()}};
}

TranspileResult transpile(const Circuit &circuit, const CouplingMap &coupling,
                          const BasisGateSet &basis, const TranspileOptions &options) {
  TranspileReport report;
  auto record = [&report](std::string name, const Circuit &before, const Circuit &after) {
    report.stages.push_back({std::move(name), depth(before), depth(after), gate_counts(before),
                             gate_counts(after)});
  };

  // Init
  Circuit current = decompose_multiqubit(circuit);
  record("init", circuit, current);

  // Virtual-circuit optimization shares the peephole engine.
  auto virt = optimize(current, Layout::identity(current.num_qubits()),
                       {.max_passes = options.max_optimize_passes});
  record("virtual_optimization", current, virt.circuit);
  report.swap_eliminated += virt.swaps_absorbed;
  report.optimize_passes += virt.passes;

  // Layout: final = initial o sigma, sigma being the virtual output permutation.
  const Layout placement = assign_layout(virt.circuit, coupling, options.layout);
  Layout layout = placement;
  for (Qubit v = 0; v < virt.layout.size(); ++v) layout.final[v] = placement.initial[virt.layout.final[v]];
  Circuit physical = apply_layout(virt.circuit, layout);
  record("layout", virt.circuit, physical);

  auto routed = route(physical, layout, coupling);
  record("routing", physical, routed.circuit);
  report.swap_inserted = routed.swaps_inserted;

  Circuit translated = translate_to_basis(routed.circuit, basis);
  record("translation", routed.circuit, translated);

  auto optimized = optimize(translated, routed.layout,
                            {.max_passes = options.max_optimize_passes, .coupling = &coupling});
  record("optimization", translated, optimized.circuit);
  report.swap_eliminated += optimized.swaps_absorbed;
  report.optimize_passes += optimized.passes;

  report.schedule = schedule(optimized.circuit, options.durations);
  record("scheduling", optimized.circuit, optimized.circuit);
  report.cmodmul_passthrough = count_of(gate_counts(optimized.circuit), GateKind::CMODMUL);
  report.layout = optimized.layout;
  report.layout.validate();
  return {std::move(optimized.circuit), std::move(report)};
}

double layout_aware_distance(const Circuit &input, const Circuit &output, const Layout &layout) {
  const std::size_t np = output.num_qubits();
  if (layout.size() != np || input.num_qubits() > np) {
    throw DimensionMismatch("layout, input and output widths disagree");
  }
  std::vector<Qubit> widen(input.num_qubits());
  std::iota(widen.begin(), widen.end(), Qubit{0});
  const Circuit wide = relabel(input.body(), widen, np);
  const Eigen::MatrixXcd expected = permutation_unitary(layout.final) * unitary_of(wide) *
                                    permutation_unitary(layout.initial).adjoint();
  return phase_aligned_distance(unitary_of(output.body()), expected);
}

}  // namespace qkit
