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

// Error suppression and mitigation: dynamical decoupling, Pauli twirling,
// unitary folding with zero-noise extrapolation, and mirror circuits.

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkit/circuit.hpp"
#include "qkit/simulator.hpp"
#include "qkit/transpiler.hpp"

namespace qkit {

enum class DdSequence { kXX, kXYXY };

/// Fills every idle window of at least `min_window` time units with the
/// pulse sequence. `schedule` must come from schedule(circuit, ...).
Circuit insert_dd(const Circuit &circuit, const Schedule &schedule, std::uint64_t min_window,
                  DdSequence sequence = DdSequence::kXX);

/// Pauli encoded as (x, z) bits: 0 = I, 1 = X, 2 = Z, 3 = Y.
using PauliPair = std::pair<unsigned, unsigned>;  // (control, target)

/// The pair P' with CX (P_c x P_t) = (P'_c x P'_t) CX up to phase.
PauliPair cx_conjugate(PauliPair before);

/// The sampled pre-CX pair index (0..15, control * 4 + target) for each of
/// `num_cx` CX gates, as pauli_twirl draws them.
std::vector<unsigned> twirl_pairs(std::size_t num_cx, std::uint64_t seed);

/// Sandwiches every CX between a random Pauli pair and its compensating pair.
/// Throws TransformError on CZ, CP, SWAP or CCX.
Circuit pauli_twirl(const Circuit &circuit, std::uint64_t seed);

enum class FoldMode { kGlobal, kPerGate };

/// Odd scale factor lambda. Global: C (C^-1 C)^k; per gate: G (G^-1 G)^k,
/// with k = (lambda - 1) / 2. The MEASURE suffix is kept once.
Circuit fold(const Circuit &circuit, unsigned lambda, FoldMode mode = FoldMode::kGlobal);

enum class Extrapolator { kLinear, kQuadratic };

struct ZneConfig {
  std::vector<unsigned> scale_factors{1, 3, 5};
  FoldMode fold_mode = FoldMode::kGlobal;
  Extrapolator extrapolator = Extrapolator::kLinear;
  /// Z-parity observable over these qubits.
  std::vector<Qubit> observable;

  /// Throws InputError on an invalid configuration.
  void validate(std::size_t num_qubits) const;
  nlohmann::ordered_json to_json() const;
};

struct ZeroNoiseFit {
  std::vector<double> coefficients;  // ascending powers of lambda
  double intercept = 0.0;
};

/// Least-squares polynomial of the given degree through (lambda, value)
/// points. Throws InputError with fewer than degree + 1 points.
ZeroNoiseFit extrapolate_to_zero(const std::vector<std::pair<double, double>> &points,
                                 std::size_t degree);

/// Mean of (-1)^parity over the histogram, restricted to `qubits`.
double parity_expectation(const ShotHistogram &histogram, const std::vector<Qubit> &qubits);

struct ZneResult {
  double mitigated_value = 0.0;
  ZeroNoiseFit fit;
  std::vector<std::pair<double, double>> raw;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
};

/// Folds the circuit body at every scale factor, measures the observable
/// qubits, samples under `noise` and extrapolates to lambda = 0.
ZneResult zne_estimate(const Circuit &circuit, const ZneConfig &config, const NoiseModel &noise,
                       std::uint64_t shots, std::uint64_t seed);

struct MirrorReport {
  std::size_t base_depth = 0;
  std::size_t mirrored_depth = 0;
  double survival_probability = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
};

/// C followed by C^-1, then MEASURE on every qubit.
Circuit mirror_circuit(const Circuit &circuit);

MirrorReport mirror_benchmark(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed,
                              const NoiseModel &noise = {});

/// Random-parameter layers: RZ(angle) and SX on every qubit, then a CX
/// ladder 0-1, 1-2, ... The first k layers for a given seed are a prefix of
/// the first k+1.
Circuit random_layer_circuit(std::size_t num_qubits, std::size_t layers, std::uint64_t seed);

}  // namespace qkit
