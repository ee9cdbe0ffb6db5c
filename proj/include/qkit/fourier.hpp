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

// Quantum Fourier transform builders with an optional rotation cutoff.
//
// Rotation index k >= 2 denotes the controlled phase CP(pi / 2^(k-1)) between
// a target qubit and the qubit k-1 positions below it. The approximate
// transform keeps only rotations with k <= cutoff, so a cutoff of 1 drops
// every controlled phase and a cutoff >= n keeps all of them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qkit/circuit.hpp"

namespace qkit {

inline constexpr std::size_t kMaxFourierQubits = 24;

/// ceil(log2 n), clamped to at least 1.
std::size_t default_cutoff(std::size_t n);

struct AqftConfig {
  std::size_t n = 1;
  /// nullopt keeps every rotation.
  std::optional<std::size_t> cutoff;

  static AqftConfig full(std::size_t n) { return {n, std::nullopt}; }
  static AqftConfig with_default_cutoff(std::size_t n) { return {n, default_cutoff(n)}; }

  /// "full" or the decimal cutoff.
  std::string cutoff_label() const;
  void validate() const;
};

struct FourierBuildReport {
  std::size_t hadamard_count = 0;
  std::size_t rotation_count = 0;
  std::size_t swap_count = 0;
  /// One per qubit visited by the recursive builder plus one per emitted rotation.
  std::size_t recursive_calls = 0;

  std::size_t transform_count() const { return hadamard_count + rotation_count; }
  nlohmann::ordered_json to_json() const;
  bool operator==(const FourierBuildReport &) const = default;
};

struct FourierCircuit {
  Circuit circuit;
  FourierBuildReport report;
};

/// QFT|j> = T^{-1/2} sum_z exp(2 pi i j z / T) |z>, T = 2^n.
FourierCircuit build_qft(std::size_t n);
FourierCircuit build_aqft(const AqftConfig &config);
Circuit build_inverse_qft(std::size_t n);
Circuit build_inverse_qft(const AqftConfig &config);

/// n(n+1)/2: Hadamards plus rotations of the full transform.
std::size_t full_transform_count(std::size_t n);
/// n + sum_i min(n-1-i, cutoff-1).
std::size_t aqft_transform_count(std::size_t n, std::size_t cutoff);

/// Mean fidelity between QFT and AQFT outputs over `trials` random product
/// states drawn from `seed`.
double aqft_fidelity(std::size_t n, std::optional<std::size_t> cutoff, std::size_t trials,
                     std::uint64_t seed);

inline constexpr std::size_t kMaxFidelityQubits = 12;

}  // namespace qkit
