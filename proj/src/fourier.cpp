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

#include "qkit/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qkit/simulator.hpp"

namespace qkit {

std::size_t default_cutoff(std::size_t n) {
  if (n <= 1) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(n - 1)));
}

std::string AqftConfig::cutoff_label() const {
  return cutoff ? std::to_string(*cutoff) : std::string("full");
}

void AqftConfig::validate() const {
  if (n < 1 || n > kMaxFourierQubits) {
    throw SizeLimitExceeded("Fourier register width must be in [1, " +
                            std::to_string(kMaxFourierQubits) + "], got " + std::to_string(n));
  }
  if (cutoff && (*cutoff < 1 || *cutoff > n)) {
    throw InvalidGate("cutoff must be in [1, " + std::to_string(n) + "], got " +
                      std::to_string(*cutoff));
  }
}

nlohmann::ordered_json FourierBuildReport::to_json() const {
  return {{"hadamards", hadamard_count},
          {"rotations", rotation_count},
          {"swaps", swap_count},
          {"recursive_calls", recursive_calls}};
}

namespace {

class TransformBuilder {
 public:
  TransformBuilder(std::size_t n, std::size_t cutoff) : circuit_(n), cutoff_(cutoff) {}

  FourierCircuit build() {
    const std::size_t n = circuit_.num_qubits();
    transform(static_cast<Qubit>(n - 1));
    for (Qubit q = 0; q < n / 2; ++q) {
      circuit_.add(gates::swap(q, static_cast<Qubit>(n - 1 - q)));
      ++report_.swap_count;
    }
    return {std::move(circuit_), report_};
  }

 private:
  // Hadamard on `target`, its conditional rotations, then the qubit below.
  void transform(Qubit target) {
    ++report_.recursive_calls;
    circuit_.add(gates::h(target));
    ++report_.hadamard_count;
    for (Qubit control = target; control-- > 0;) {
      const std::size_t k = target - control + 1;
      if (k > cutoff_) break;
      circuit_.add(gates::cp(std::numbers::pi / std::ldexp(1.0, static_cast<int>(k - 1)),
                             control, target));
      ++report_.rotation_count;
      ++report_.recursive_calls;
    }
    if (target > 0) transform(target - 1);
  }

  Circuit circuit_;
  std::size_t cutoff_;
  FourierBuildReport report_;
};

}  // namespace

FourierCircuit build_aqft(const AqftConfig &config) {
  config.validate();
  return TransformBuilder(config.n, config.cutoff.value_or(config.n)).build();
}

FourierCircuit build_qft(std::size_t n) { return build_aqft(AqftConfig::full(n)); }

Circuit build_inverse_qft(std::size_t n) { return inverse(build_qft(n).circuit); }

Circuit build_inverse_qft(const AqftConfig &config) {
  return inverse(build_aqft(config).circuit);
}

std::size_t full_transform_count(std::size_t n) { return n * (n + 1) / 2; }

std::size_t aqft_transform_count(std::size_t n, std::size_t cutoff) {
  std::size_t total = n;
  for (std::size_t i = 0; i < n; ++i) total += std::min(n - 1 - i, cutoff - 1);
  return total;
}

double aqft_fidelity(std::size_t n, std::optional<std::size_t> cutoff, std::size_t trials,
                     std::uint64_t seed) {
  if (n > kMaxFidelityQubits) {
    throw SizeLimitExceeded("aqft_fidelity limited to " + std::to_string(kMaxFidelityQubits) +
                            " qubits, got " + std::to_string(n));
  }
  if (trials == 0) throw InvalidGate("aqft_fidelity needs at least one trial");
  const Circuit exact = build_qft(n).circuit;
  const Circuit approx = build_aqft({n, cutoff}).circuit;
  if (exact == approx) return 1.0;

  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    // Product of Bloch-sphere-uniform single-qubit states.
    Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
    for (std::size_t q = 0; q < n; ++q) {
      const double theta = std::acos(1.0 - 2.0 * uniform01(rng));
      const double phi = 2.0 * std::numbers::pi * uniform01(rng);
      Eigen::Vector2cd qubit(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
      Eigen::VectorXcd next(psi.size() * 2);
      // New qubit q becomes the most-significant bit so far.
      next.head(psi.size()) = qubit[0] * psi;
      next.tail(psi.size()) = qubit[1] * psi;
      psi = std::move(next);
    }
    const Statevector initial(psi.normalized());
    total += fidelity(run(exact, initial), run(approx, initial));
  }
  return total / static_cast<double>(trials);
}

}  // namespace qkit
