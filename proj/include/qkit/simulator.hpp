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

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkit/circuit.hpp"

namespace qkit {

inline constexpr std::size_t kMaxStatevectorQubits = 24;
inline constexpr std::size_t kMaxUnitaryQubits = 10;

/// Pure state over 2^n basis states, qubit 0 = least-significant index bit.
class Statevector {
 public:
  /// |0...0>.
  explicit Statevector(std::size_t num_qubits);
  /// Takes ownership of `amplitudes`; size must be a power of two and the norm 1 within 1e-10.
  explicit Statevector(Eigen::VectorXcd amplitudes);

  static Statevector basis(std::size_t num_qubits, std::uint64_t index);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
  std::complex<double> operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  Eigen::VectorXd probabilities() const { return amplitudes_.cwiseAbs2(); }

  void apply(const Gate &gate);

 private:
  std::size_t num_qubits_;
  Eigen::VectorXcd amplitudes_;
};

/// Applies the unitary part of `circuit` to an arbitrary (not necessarily
/// normalized) amplitude vector in place.
void apply_circuit(const Circuit &circuit, Eigen::Ref<Eigen::VectorXcd> amplitudes);

Statevector run(const Circuit &circuit, const Statevector &initial,
                std::size_t max_qubits = kMaxStatevectorQubits);
Statevector run(const Circuit &circuit, std::uint64_t basis_index = 0,
                std::size_t max_qubits = kMaxStatevectorQubits);

/// Columns are run(circuit, basis_j).
Eigen::MatrixXcd unitary_of(const Circuit &circuit);

/// Operator sending the state of qubit i to qubit mapping[i].
Eigen::MatrixXcd permutation_unitary(std::span<const Qubit> mapping);

/// |<a|b>|^2.
double fidelity(const Statevector &a, const Statevector &b);

bool equivalent_up_to_global_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                                   double tol);
bool equivalent_up_to_global_phase(const Circuit &a, const Circuit &b, double tol = 1e-10);

/// Maximum entry deviation after aligning the global phase on the largest
/// entry of `b`.
double phase_aligned_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

struct PauliError {
  double px = 0.0;
  double py = 0.0;
  double pz = 0.0;

  double total() const { return px + py + pz; }
  bool operator==(const PauliError &) const = default;
};

/// Stochastic Pauli noise applied after gates of each listed kind, on every
/// qubit the gate touches, plus a classical readout flip probability.
struct NoiseModel {
  std::map<GateKind, PauliError> gate_errors;
  double measurement_flip = 0.0;

  /// Symmetric channel: X, Y, Z each with probability p/3.
  static NoiseModel depolarizing(GateKind kind, double p);

  bool has_gate_noise() const;
  bool is_noiseless() const { return !has_gate_noise() && measurement_flip == 0.0; }
  /// Throws InputError when a probability is outside [0,1] or an entry sums past 1.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  static NoiseModel from_json(const nlohmann::json &j);
};

/// Measurement counts. Outcome bit k corresponds to the k-th smallest
/// measured qubit; rendered bitstrings put that bit k places from the right.
struct ShotHistogram {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<Qubit> measured_qubits;
  std::map<std::uint64_t, std::uint64_t> counts;

  std::string bitstring(std::uint64_t outcome) const;
  std::uint64_t count(std::uint64_t outcome) const;
  nlohmann::ordered_json to_json() const;
};

struct SampleOptions {
  /// Simulate each shot as a trajectory even when no gate noise is present.
  bool force_trajectories = false;
  std::size_t max_qubits = kMaxStatevectorQubits;
};

/// Name of the per-shot random stream scheme, reported alongside results.
inline constexpr const char *kRngScheme = "mt19937_64/seed_seq(seed,shot,stream) v1";

/// Deterministic generator for stream `stream` of shot `shot` under `seed`.
std::mt19937_64 shot_stream(std::uint64_t seed, std::uint64_t shot, std::uint32_t stream);
/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64 &rng);

/// Samples the measured qubits of `circuit`. Without gate noise the final
/// state is computed once; otherwise every shot is a Pauli trajectory.
ShotHistogram sample(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed,
                     const NoiseModel &noise = {}, const SampleOptions &options = {});

}  // namespace qkit
