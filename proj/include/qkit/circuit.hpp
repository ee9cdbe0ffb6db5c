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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qkit/errors.hpp"

namespace qkit {

using Qubit = unsigned;

enum class GateKind {
  H,
  X,
  Y,
  Z,
  S,
  SDG,
  T,
  TDG,
  SX,
  SXDG,
  RZ,
  P,
  CX,
  CZ,
  CP,
  SWAP,
  CCX,
  CMODMUL,
  BARRIER,
  MEASURE,
};

/// Lowercase mnemonic used by the text format ("cx", "cmodmul", ...).
std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

/// Fixed operand count, or nullopt for CMODMUL (1 + width) and BARRIER (all).
std::optional<std::size_t> kind_arity(GateKind kind);
bool kind_has_angle(GateKind kind);

/// Parameters of a controlled modular multiplication f -> multiplier * f mod modulus.
struct ModMul {
  std::uint64_t multiplier = 1;
  std::uint64_t modulus = 1;

  bool operator==(const ModMul &) const = default;
};

/// One circuit instruction.
///
/// CMODMUL operands are `control, target_0, target_1, ...` with target_0 the
/// least-significant bit of the function register value. A BARRIER carries no
/// operands and spans every qubit.
struct Gate {
  GateKind kind = GateKind::BARRIER;
  std::vector<Qubit> qubits;
  double angle = 0.0;
  ModMul modmul;

  bool operator==(const Gate &) const = default;

  bool is_two_qubit() const { return qubits.size() == 2; }
};

namespace gates {
Gate h(Qubit q);
Gate x(Qubit q);
Gate y(Qubit q);
Gate z(Qubit q);
Gate s(Qubit q);
Gate sdg(Qubit q);
Gate t(Qubit q);
Gate tdg(Qubit q);
Gate sx(Qubit q);
Gate sxdg(Qubit q);
Gate rz(double theta, Qubit q);
Gate p(double theta, Qubit q);
Gate cx(Qubit control, Qubit target);
Gate cz(Qubit a, Qubit b);
Gate cp(double theta, Qubit control, Qubit target);
Gate swap(Qubit a, Qubit b);
Gate ccx(Qubit c0, Qubit c1, Qubit target);
Gate cmodmul(std::uint64_t multiplier, std::uint64_t modulus, Qubit control,
             std::span<const Qubit> targets);
Gate barrier();
Gate measure(Qubit q);
/// Single-qubit gate of any parameter-free kind.
Gate single(GateKind kind, Qubit q);
}  // namespace gates

/// Throws InvalidGate when `gate` breaks an operand or parameter invariant
/// against a register of `num_qubits` qubits.
void validate_gate(const Gate &gate, std::size_t num_qubits);

/// Ordered gate list over `num_qubits` indexed qubits.
///
/// Every gate is validated on insertion, and MEASURE gates may only form a
/// trailing suffix.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits, std::string name = {});

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate> &gates() const { return gates_; }
  const std::string &name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate &operator[](std::size_t i) const { return gates_[i]; }
  auto begin() const { return gates_.begin(); }
  auto end() const { return gates_.end(); }

  /// Validating in-place append, for builders.
  Circuit &add(Gate gate);
  Circuit &add_all(const Circuit &other);

  bool has_measure() const;
  /// Gates before the MEASURE suffix.
  Circuit body() const;
  std::vector<Qubit> measured_qubits() const;

  /// Structural equality: width and gate list. The name is not compared.
  bool operator==(const Circuit &other) const {
    return num_qubits_ == other.num_qubits_ && gates_ == other.gates_;
  }

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::string name_;
};

Circuit append(Circuit circuit, const Gate &gate);
/// `first` followed by `second`; widths must agree.
Circuit compose(const Circuit &first, const Circuit &second);

/// Greedy layering depth; BARRIER occupies every qubit.
std::size_t depth(const Circuit &circuit);

using GateCounts = std::map<GateKind, std::size_t>;
GateCounts gate_counts(const Circuit &circuit);
std::size_t count_of(const GateCounts &counts, GateKind kind);

Gate inverse(const Gate &gate);
/// Reversed circuit of inverted gates. Throws InvalidGate on MEASURE.
Circuit inverse(const Circuit &circuit);

/// Relabels every operand through `mapping` (old index -> new index) onto a
/// register of `num_qubits` qubits.
Circuit relabel(const Circuit &circuit, std::span<const Qubit> mapping,
                std::size_t num_qubits);

Circuit parse_circuit(std::string_view text);
std::string render_circuit(const Circuit &circuit);

std::uint64_t modular_inverse(std::uint64_t value, std::uint64_t modulus);

}  // namespace qkit
