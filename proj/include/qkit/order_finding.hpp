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

// Order finding: the smallest r with x^r = 1 (mod N).
//
// Register layout of the order-finding circuit: qubits [0, t) hold the
// argument a (qubit 0 = least-significant bit) and qubits [t, t+n) hold the
// function value x^a mod N, with n = ceil(log2 N).

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qkit/circuit.hpp"
#include "qkit/fourier.hpp"
#include "qkit/simulator.hpp"

namespace qkit {

struct OrderFindingConfig {
  std::uint64_t modulus = 15;  // N
  std::uint64_t base = 2;      // x
  /// Argument register width; defaults to 2n+1.
  std::optional<std::size_t> argument_qubits;
  bool use_aqft = false;
  /// Rotation cutoff when use_aqft is set; defaults to default_cutoff(t).
  std::optional<std::size_t> cutoff;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  /// Read out through the inverse transform instead of the forward one.
  bool inverse_transform = false;
  std::size_t max_qubits = kMaxStatevectorQubits;

  std::size_t function_qubits() const;
  std::size_t argument_width() const;
  std::uint64_t period_domain() const { return std::uint64_t{1} << argument_width(); }  // T
  AqftConfig transform_config() const;
  /// Throws NotCoprime, InvalidGate or SizeLimitExceeded.
  void validate() const;
};

struct OrderCircuit {
  Circuit circuit;
  FourierBuildReport transform_report;
  /// Index of the first transform gate; gates before it prepare |psi_2>.
  std::size_t transform_begin = 0;
};

struct SpectrumPoint {
  std::uint64_t z = 0;
  double probability = 0.0;
};

struct Convergent {
  std::uint64_t numerator = 0;    // d
  std::uint64_t denominator = 1;  // r candidate

  bool operator==(const Convergent &) const = default;
};

struct CandidateFraction {
  std::uint64_t z = 0;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
};

struct OrderResult {
  std::optional<std::uint64_t> order;
  std::vector<CandidateFraction> candidate_fractions;
  ShotHistogram histogram;
  double success_fraction = 0.0;
  GateCounts gate_counts;
  FourierBuildReport transform_report;
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Brute-force smallest r >= 1 with x^r = 1 (mod N).
std::uint64_t classical_order(std::uint64_t x, std::uint64_t modulus);

OrderCircuit build_order_circuit(const OrderFindingConfig &config);

/// Exact distribution of the argument-register readout, one point per z in [0, T).
std::vector<SpectrumPoint> spectrum(const OrderFindingConfig &config);

/// Convergents d/r of z/T with r < N, by increasing denominator.
std::vector<Convergent> continued_fractions(std::uint64_t z, std::uint64_t period_domain,
                                            std::uint64_t modulus);

OrderResult find_order(const OrderFindingConfig &config);

nlohmann::ordered_json to_json(const OrderFindingConfig &config, const OrderResult &result);

}  // namespace qkit
