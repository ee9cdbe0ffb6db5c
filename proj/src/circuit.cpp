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

#include "qkit/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace qkit {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::optional<std::size_t> arity;
  bool angle;
};

constexpr std::array<KindInfo, 20> kKinds = {{
    {GateKind::H, "h", 1, false},
    {GateKind::X, "x", 1, false},
    {GateKind::Y, "y", 1, false},
    {GateKind::Z, "z", 1, false},
    {GateKind::S, "s", 1, false},
    {GateKind::SDG, "sdg", 1, false},
    {GateKind::T, "t", 1, false},
    {GateKind::TDG, "tdg", 1, false},
    {GateKind::SX, "sx", 1, false},
    {GateKind::SXDG, "sxdg", 1, false},
    {GateKind::RZ, "rz", 1, true},
    {GateKind::P, "p", 1, true},
    {GateKind::CX, "cx", 2, false},
    {GateKind::CZ, "cz", 2, false},
    {GateKind::CP, "cp", 2, true},
    {GateKind::SWAP, "swap", 2, false},
    {GateKind::CCX, "ccx", 3, false},
    {GateKind::CMODMUL, "cmodmul", std::nullopt, false},
    {GateKind::BARRIER, "barrier", std::nullopt, false},
    {GateKind::MEASURE, "measure", 1, false},
}};

const KindInfo &info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

std::string describe(const Gate &gate) {
  std::string out(kind_name(gate.kind));
  for (Qubit q : gate.qubits) out += " " + std::to_string(q);
  return out;
}

std::string format_angle(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

}  // namespace

std::string_view kind_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> kind_from_name(std::string_view name) {
  for (const auto &k : kKinds) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

std::optional<std::size_t> kind_arity(GateKind kind) { return info(kind).arity; }

bool kind_has_angle(GateKind kind) { return info(kind).angle; }

namespace gates {
Gate single(GateKind kind, Qubit q) { return Gate{kind, {q}, 0.0, {}}; }
Gate h(Qubit q) { return single(GateKind::H, q); }
Gate x(Qubit q) { return single(GateKind::X, q); }
Gate y(Qubit q) { return single(GateKind::Y, q); }
Gate z(Qubit q) { return single(GateKind::Z, q); }
Gate s(Qubit q) { return single(GateKind::S, q); }
Gate sdg(Qubit q) { return single(GateKind::SDG, q); }
Gate t(Qubit q) { return single(GateKind::T, q); }
Gate tdg(Qubit q) { return single(GateKind::TDG, q); }
Gate sx(Qubit q) { return single(GateKind::SX, q); }
Gate sxdg(Qubit q) { return single(GateKind::SXDG, q); }
Gate rz(double theta, Qubit q) { return Gate{GateKind::RZ, {q}, theta, {}}; }
Gate p(double theta, Qubit q) { return Gate{GateKind::P, {q}, theta, {}}; }
Gate cx(Qubit control, Qubit target) {
  return Gate{GateKind::CX, {control, target}, 0.0, {}};
}
Gate cz(Qubit a, Qubit b) { return Gate{GateKind::CZ, {a, b}, 0.0, {}}; }
Gate cp(double theta, Qubit control, Qubit target) {
  return Gate{GateKind::CP, {control, target}, theta, {}};
}
Gate swap(Qubit a, Qubit b) { return Gate{GateKind::SWAP, {a, b}, 0.0, {}}; }
Gate ccx(Qubit c0, Qubit c1, Qubit target) {
  return Gate{GateKind::CCX, {c0, c1, target}, 0.0, {}};
}
Gate cmodmul(std::uint64_t multiplier, std::uint64_t modulus, Qubit control,
             std::span<const Qubit> targets) {
  Gate g{GateKind::CMODMUL, {control}, 0.0, {multiplier, modulus}};
  g.qubits.insert(g.qubits.end(), targets.begin(), targets.end());
  return g;
}
Gate barrier() { return Gate{GateKind::BARRIER, {}, 0.0, {}}; }
Gate measure(Qubit q) { return single(GateKind::MEASURE, q); }
}  // namespace gates

void validate_gate(const Gate &gate, std::size_t num_qubits) {
  const auto arity = kind_arity(gate.kind);
  if (arity && gate.qubits.size() != *arity) {
    throw InvalidGate(std::string(kind_name(gate.kind)) + " expects " +
                      std::to_string(*arity) + " qubit(s), got " +
                      std::to_string(gate.qubits.size()));
  }
  if (gate.kind == GateKind::BARRIER && !gate.qubits.empty()) {
    throw InvalidGate("barrier takes no operands");
  }
  for (Qubit q : gate.qubits) {
    if (q >= num_qubits) {
      throw InvalidGate("qubit index " + std::to_string(q) +
                        " out of range for " + std::to_string(num_qubits) +
                        " qubit(s) in '" + describe(gate) + "'");
    }
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    for (std::size_t j = i + 1; j < gate.qubits.size(); ++j) {
      if (gate.qubits[i] == gate.qubits[j]) {
        throw InvalidGate("duplicate operand " + std::to_string(gate.qubits[i]) +
                          " in '" + describe(gate) + "'");
      }
    }
  }
  if (kind_has_angle(gate.kind) && !std::isfinite(gate.angle)) {
    throw InvalidGate("non-finite angle in '" + describe(gate) + "'");
  }
  if (gate.kind == GateKind::CMODMUL) {
    const auto &mm = gate.modmul;
    if (gate.qubits.size() < 2) {
      throw InvalidGate("cmodmul needs a control and at least one target");
    }
    if (mm.modulus == 0 || mm.multiplier == 0) {
      throw InvalidGate("cmodmul multiplier and modulus must be positive");
    }
    const auto g = std::gcd(mm.multiplier, mm.modulus);
    if (g != 1) throw NotCoprime(mm.multiplier, mm.modulus, g);
    const std::size_t width = gate.qubits.size() - 1;
    if (width < 64 && (std::uint64_t{1} << width) < mm.modulus) {
      throw InvalidGate("cmodmul register of " + std::to_string(width) +
                        " qubit(s) cannot hold values below " +
                        std::to_string(mm.modulus));
    }
  }
}

Circuit::Circuit(std::size_t num_qubits, std::string name)
    : num_qubits_(num_qubits), name_(std::move(name)) {
  if (num_qubits == 0) throw InvalidGate("circuit needs at least one qubit");
}

Circuit &Circuit::add(Gate gate) {
  validate_gate(gate, num_qubits_);
  if (gate.kind != GateKind::MEASURE && has_measure()) {
    throw InvalidGate("'" + describe(gate) +
                      "' after measurement; measurements must be trailing");
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit &Circuit::add_all(const Circuit &other) {
  if (other.num_qubits() != num_qubits_) {
    throw DimensionMismatch("cannot concatenate circuits of width " +
                            std::to_string(num_qubits_) + " and " +
                            std::to_string(other.num_qubits()));
  }
  for (const auto &g : other) add(g);
  return *this;
}

bool Circuit::has_measure() const {
  return !gates_.empty() && gates_.back().kind == GateKind::MEASURE;
}

Circuit Circuit::body() const {
  Circuit out(num_qubits_, name_);
  for (const auto &g : gates_) {
    if (g.kind == GateKind::MEASURE) break;
    out.gates_.push_back(g);
  }
  return out;
}

std::vector<Qubit> Circuit::measured_qubits() const {
  std::vector<Qubit> out;
  for (const auto &g : gates_) {
    if (g.kind == GateKind::MEASURE) out.push_back(g.qubits[0]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Circuit append(Circuit circuit, const Gate &gate) {
  circuit.add(gate);
  return circuit;
}

Circuit compose(const Circuit &first, const Circuit &second) {
  Circuit out = first;
  out.add_all(second);
  return out;
}

std::size_t depth(const Circuit &circuit) {
  std::vector<std::size_t> layer(circuit.num_qubits(), 0);
  std::size_t result = 0;
  for (const auto &g : circuit) {
    std::size_t top = 0;
    if (g.kind == GateKind::BARRIER) {
      top = *std::max_element(layer.begin(), layer.end()) + 1;
      std::fill(layer.begin(), layer.end(), top);
    } else {
      for (Qubit q : g.qubits) top = std::max(top, layer[q]);
      ++top;
      for (Qubit q : g.qubits) layer[q] = top;
    }
    result = std::max(result, top);
  }
  return result;
}

GateCounts gate_counts(const Circuit &circuit) {
  GateCounts counts;
  for (const auto &g : circuit) ++counts[g.kind];
  return counts;
}

std::size_t count_of(const GateCounts &counts, GateKind kind) {
  auto it = counts.find(kind);
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t modular_inverse(std::uint64_t value, std::uint64_t modulus) {
  if (modulus == 1) return 0;
  // Extended Euclid on signed 128-bit to avoid overflow for 64-bit inputs.
  __int128 old_r = static_cast<__int128>(value % modulus), r = modulus;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) {
    throw NotCoprime(value, modulus, static_cast<std::uint64_t>(old_r));
  }
  __int128 m = modulus;
  return static_cast<std::uint64_t>(((old_s % m) + m) % m);
}

Gate inverse(const Gate &gate) {
  Gate out = gate;
  switch (gate.kind) {
    case GateKind::S: out.kind = GateKind::SDG; break;
    case GateKind::SDG: out.kind = GateKind::S; break;
    case GateKind::T: out.kind = GateKind::TDG; break;
    case GateKind::TDG: out.kind = GateKind::T; break;
    case GateKind::SX: out.kind = GateKind::SXDG; break;
    case GateKind::SXDG: out.kind = GateKind::SX; break;
    case GateKind::RZ:
    case GateKind::P:
    case GateKind::CP: out.angle = -gate.angle; break;
    case GateKind::CMODMUL:
      out.modmul.multiplier =
          modular_inverse(gate.modmul.multiplier, gate.modmul.modulus);
      if (out.modmul.multiplier == 0) out.modmul.multiplier = 1;
      break;
    case GateKind::MEASURE:
      throw InvalidGate("measurement has no inverse");
    default: break;  // self-inverse
  }
  return out;
}

Circuit inverse(const Circuit &circuit) {
  Circuit out(circuit.num_qubits(), circuit.name());
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it) {
    out.add(inverse(*it));
  }
  return out;
}

Circuit relabel(const Circuit &circuit, std::span<const Qubit> mapping,
                std::size_t num_qubits) {
  if (mapping.size() < circuit.num_qubits()) {
    throw DimensionMismatch("relabel mapping shorter than circuit width");
  }
  Circuit out(num_qubits, circuit.name());
  for (Gate g : circuit) {
    for (Qubit &q : g.qubits) q = mapping[q];
    out.add(std::move(g));
  }
  return out;
}

namespace {

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char *what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" +
                               std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!circuit) {
      if (tokens[0] != "qubits" || tokens.size() != 2) {
        throw ParseError(line_no, "expected header 'qubits <n>'");
      }
      const auto n = parse_number<std::size_t>(tokens[1], line_no, "qubit count");
      if (n == 0) throw ParseError(line_no, "qubit count must be positive");
      circuit.emplace(n);
      continue;
    }
    if (tokens[0] == "qubits") throw ParseError(line_no, "duplicate header");

    const auto kind = kind_from_name(tokens[0]);
    if (!kind) {
      throw ParseError(line_no, "unknown gate '" + std::string(tokens[0]) + "'");
    }
    Gate gate{*kind, {}, 0.0, {}};
    std::size_t next = 1;
    if (kind_has_angle(*kind)) {
      if (tokens.size() < 2) throw ParseError(line_no, "missing angle");
      gate.angle = parse_number<double>(tokens[1], line_no, "angle");
      next = 2;
    } else if (*kind == GateKind::CMODMUL) {
      if (tokens.size() < 3) throw ParseError(line_no, "missing multiplier/modulus");
      gate.modmul.multiplier = parse_number<std::uint64_t>(tokens[1], line_no, "multiplier");
      gate.modmul.modulus = parse_number<std::uint64_t>(tokens[2], line_no, "modulus");
      next = 3;
    }
    for (; next < tokens.size(); ++next) {
      gate.qubits.push_back(parse_number<Qubit>(tokens[next], line_no, "qubit index"));
    }
    try {
      circuit->add(std::move(gate));
    } catch (const Error &e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!circuit) throw ParseError(line_no, "missing header 'qubits <n>'");
  return std::move(*circuit);
}

std::string render_circuit(const Circuit &circuit) {
  std::ostringstream out;
  if (!circuit.name().empty()) out << "# " << circuit.name() << "\n";
  out << "qubits " << circuit.num_qubits() << "\n";
  for (const auto &g : circuit) {
    out << kind_name(g.kind);
    if (kind_has_angle(g.kind)) out << ' ' << format_angle(g.angle);
    if (g.kind == GateKind::CMODMUL) {
      out << ' ' << g.modmul.multiplier << ' ' << g.modmul.modulus;
    }
    for (Qubit q : g.qubits) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

}  // namespace qkit
