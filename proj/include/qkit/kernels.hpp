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

// In-place gate kernels over a dense amplitude array.
//
// Basis convention: qubit q is bit q of the amplitude index, so qubit 0 is
// the least-significant bit.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qkit/circuit.hpp"

namespace qkit::kernels {

template <typename Scalar>
using Matrix2 = std::array<std::complex<Scalar>, 4>;  // row-major

/// 2x2 unitary of a parameter-free or RZ/P single-qubit gate.
template <typename Scalar>
Matrix2<Scalar> single_qubit_matrix(GateKind kind, Scalar angle = 0) {
  using C = std::complex<Scalar>;
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  const C i(0, 1);
  switch (kind) {
    case GateKind::H: return {C(r), C(r), C(r), C(-r)};
    case GateKind::X: return {C(0), C(1), C(1), C(0)};
    case GateKind::Y: return {C(0), -i, i, C(0)};
    case GateKind::Z: return {C(1), C(0), C(0), C(-1)};
    case GateKind::S: return {C(1), C(0), C(0), i};
    case GateKind::SDG: return {C(1), C(0), C(0), -i};
    case GateKind::T: return {C(1), C(0), C(0), std::polar(Scalar(1), std::numbers::pi_v<Scalar> / 4)};
    case GateKind::TDG: return {C(1), C(0), C(0), std::polar(Scalar(1), -std::numbers::pi_v<Scalar> / 4)};
    case GateKind::SX: return {C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5)};
    case GateKind::SXDG: return {C(0.5, -0.5), C(0.5, 0.5), C(0.5, 0.5), C(0.5, -0.5)};
    case GateKind::RZ:
      return {std::polar(Scalar(1), -angle / 2), C(0), C(0), std::polar(Scalar(1), angle / 2)};
    case GateKind::P: return {C(1), C(0), C(0), std::polar(Scalar(1), angle)};
    default: return {C(1), C(0), C(0), C(1)};
  }
}

template <typename Scalar>
void apply_single(std::span<std::complex<Scalar>> amps, Qubit q, const Matrix2<Scalar> &m) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = amps.size();
  const bool diagonal = m[1] == std::complex<Scalar>(0) && m[2] == std::complex<Scalar>(0);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const auto a = amps[j];
      const auto b = amps[j + stride];
      if (diagonal) {
        amps[j] = m[0] * a;
        amps[j + stride] = m[3] * b;
      } else {
        amps[j] = m[0] * a + m[1] * b;
        amps[j + stride] = m[2] * a + m[3] * b;
      }
    }
  }
}

/// Maps the function-register value f (bits at `targets`, LSB first) to
/// multiplier * f mod modulus wherever `control` is set and f < modulus.
template <typename Scalar>
void apply_modmul(std::span<std::complex<Scalar>> amps, Qubit control,
                  std::span<const Qubit> targets, std::uint64_t multiplier,
                  std::uint64_t modulus) {
  const std::size_t width = targets.size();
  const std::size_t block = std::size_t{1} << width;
  std::vector<std::size_t> offset(block, 0);
  std::size_t target_mask = 0;
  for (std::size_t k = 0; k < width; ++k) target_mask |= std::size_t{1} << targets[k];
  for (std::size_t f = 0; f < block; ++f) {
    for (std::size_t k = 0; k < width; ++k) {
      if ((f >> k) & 1U) offset[f] |= std::size_t{1} << targets[k];
    }
  }
  std::vector<std::size_t> image(block);
  for (std::size_t f = 0; f < block; ++f) {
    image[f] = f < modulus
                   ? static_cast<std::size_t>(
                         (static_cast<unsigned __int128>(multiplier) * f) % modulus)
                   : f;
  }
  const std::size_t cmask = std::size_t{1} << control;
  std::vector<std::complex<Scalar>> buffer(block);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & target_mask) != 0 || (i & cmask) == 0) continue;
    for (std::size_t f = 0; f < block; ++f) buffer[image[f]] = amps[i | offset[f]];
    for (std::size_t f = 0; f < block; ++f) amps[i | offset[f]] = buffer[f];
  }
}

/// Applies one gate in place. MEASURE and BARRIER are no-ops here.
template <typename Scalar>
void apply_gate(std::span<std::complex<Scalar>> amps, const Gate &gate) {
  using C = std::complex<Scalar>;
  const std::size_t dim = amps.size();
  switch (gate.kind) {
    case GateKind::MEASURE:
    case GateKind::BARRIER: return;
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << gate.qubits[0];
      const std::size_t t = std::size_t{1} << gate.qubits[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(amps[i], amps[i | t]);
      }
      return;
    }
    case GateKind::CCX: {
      const std::size_t c = (std::size_t{1} << gate.qubits[0]) | (std::size_t{1} << gate.qubits[1]);
      const std::size_t t = std::size_t{1} << gate.qubits[2];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) == c && !(i & t)) std::swap(amps[i], amps[i | t]);
      }
      return;
    }
    case GateKind::CZ:
    case GateKind::CP: {
      const std::size_t both = (std::size_t{1} << gate.qubits[0]) | (std::size_t{1} << gate.qubits[1]);
      const C phase = gate.kind == GateKind::CZ ? C(-1) : std::polar(Scalar(1), Scalar(gate.angle));
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) amps[i] *= phase;
      }
      return;
    }
    case GateKind::SWAP: {
      const std::size_t a = std::size_t{1} << gate.qubits[0];
      const std::size_t b = std::size_t{1} << gate.qubits[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps[i], amps[(i ^ a) | b]);
      }
      return;
    }
    case GateKind::CMODMUL:
      apply_modmul<Scalar>(amps, gate.qubits[0],
                           std::span<const Qubit>(gate.qubits).subspan(1),
                           gate.modmul.multiplier, gate.modmul.modulus);
      return;
    default:
      apply_single<Scalar>(amps, gate.qubits[0],
                           single_qubit_matrix<Scalar>(gate.kind, Scalar(gate.angle)));
      return;
  }
}

}  // namespace qkit::kernels
