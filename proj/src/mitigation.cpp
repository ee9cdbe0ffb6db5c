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

#include "qkit/mitigation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <map>
#include <numbers>
#include <set>
#include <string>

namespace qkit {

namespace {

constexpr std::uint32_t kTwirlStream = 3;
constexpr std::uint32_t kLayerStream = 4;

std::size_t body_size(const Circuit &circuit) { return circuit.body().size(); }

}  // namespace

// ---------------------------------------------------------------------------
// Dynamical decoupling

Circuit insert_dd(const Circuit &circuit, const Schedule &schedule, std::uint64_t min_window,
                  DdSequence sequence) {
  if (schedule.start.size() != circuit.size() || schedule.duration.size() != circuit.size()) {
    throw DimensionMismatch("schedule covers " + std::to_string(schedule.start.size()) +
                            " gates, circuit has " + std::to_string(circuit.size()));
  }
  const std::size_t suffix_begin = body_size(circuit);
  const std::size_t pulses = sequence == DdSequence::kXX ? 2 : 4;
  const auto measured_list = circuit.measured_qubits();
  const std::set<Qubit> measured(measured_list.begin(), measured_list.end());
  // insertion position -> gates to emit before the gate at that position
  std::map<std::size_t, std::vector<Gate>> inserts;

  for (const auto &w : schedule.idle_windows) {
    if (w.qubit >= circuit.num_qubits()) {
      throw DimensionMismatch("idle window on qubit " + std::to_string(w.qubit) +
                              " outside the circuit");
    }
    if (w.duration < std::max<std::uint64_t>(min_window, 1)) continue;
    const std::uint64_t end = w.start + w.duration;
    std::size_t position = suffix_begin;
    for (std::size_t i = 0; i < circuit.size(); ++i) {
      const Gate &g = circuit[i];
      if (g.kind == GateKind::BARRIER || schedule.start[i] != end) continue;
      if (std::find(g.qubits.begin(), g.qubits.end(), w.qubit) == g.qubits.end()) continue;
      position = std::min(i, suffix_begin);
      break;
    }
    // A measured qubit's trailing window follows its measurement.
    if (position == suffix_begin && measured.count(w.qubit) != 0) continue;
    auto &seq = inserts[position];
    for (std::size_t k = 0; k < pulses; ++k) {
      const bool y = sequence == DdSequence::kXYXY && (k % 2 == 1);
      seq.push_back(y ? gates::y(w.qubit) : gates::x(w.qubit));
    }
  }

  Circuit out(circuit.num_qubits(), circuit.name());
  for (std::size_t i = 0; i <= circuit.size(); ++i) {
    if (auto it = inserts.find(i); it != inserts.end()) {
      for (const auto &g : it->second) out.add(g);
    }
    if (i < circuit.size()) out.add(circuit[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pauli twirling

PauliPair cx_conjugate(PauliPair before) {
  const unsigned xc = before.first & 1U, zc = before.first >> 1;
  const unsigned xt = before.second & 1U, zt = before.second >> 1;
  const unsigned xc2 = xc, zc2 = zc ^ zt, xt2 = xt ^ xc, zt2 = zt;
  return {xc2 | (zc2 << 1), xt2 | (zt2 << 1)};
}

std::vector<unsigned> twirl_pairs(std::size_t num_cx, std::uint64_t seed) {
  auto rng = shot_stream(seed, 0, kTwirlStream);
  std::vector<unsigned> pairs(num_cx);
  for (auto &p : pairs) p = static_cast<unsigned>(rng() >> 60);
  return pairs;
}

namespace {

void emit_pauli(Circuit &out, unsigned pauli, Qubit q) {
  switch (pauli) {
    case 1: out.add(gates::x(q)); break;
    case 2: out.add(gates::z(q)); break;
    case 3: out.add(gates::y(q)); break;
    default: break;
  }
}

}  // namespace

Circuit pauli_twirl(const Circuit &circuit, std::uint64_t seed) {
  std::size_t num_cx = 0;
  for (const auto &g : circuit) {
    switch (g.kind) {
      case GateKind::CX: ++num_cx; break;
      case GateKind::CZ:
      case GateKind::CP:
      case GateKind::SWAP:
      case GateKind::CCX:
        throw TransformError("twirling expects CX as the only two-qubit gate, found '" +
                             std::string(kind_name(g.kind)) + "'");
      default: break;
    }
  }
  const auto pairs = twirl_pairs(num_cx, seed);
  Circuit out(circuit.num_qubits(), circuit.name());
  std::size_t k = 0;
  for (const auto &g : circuit) {
    if (g.kind != GateKind::CX) {
      out.add(g);
      continue;
    }
    const PauliPair before{pairs[k] >> 2, pairs[k] & 3U};
    const PauliPair after = cx_conjugate(before);
    ++k;
    emit_pauli(out, before.first, g.qubits[0]);
    emit_pauli(out, before.second, g.qubits[1]);
    out.add(g);
    emit_pauli(out, after.first, g.qubits[0]);
    emit_pauli(out, after.second, g.qubits[1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Folding and extrapolation

Circuit fold(const Circuit &circuit, unsigned lambda, FoldMode mode) {
  if (lambda == 0 || lambda % 2 == 0) {
    throw InputError("scale factor must be an odd positive integer, got " +
                     std::to_string(lambda));
  }
  const unsigned k = (lambda - 1) / 2;
  const Circuit body = circuit.body();
  Circuit out(circuit.num_qubits(), circuit.name());
  if (mode == FoldMode::kGlobal) {
    const Circuit inv = inverse(body);
    out.add_all(body);
    for (unsigned i = 0; i < k; ++i) {
      out.add_all(inv);
      out.add_all(body);
    }
  } else {
    for (const auto &g : body) {
      out.add(g);
      if (g.kind == GateKind::BARRIER) continue;
      const Gate inv = inverse(g);
      for (unsigned i = 0; i < k; ++i) {
        out.add(inv);
        out.add(g);
      }
    }
  }
  for (std::size_t i = body.size(); i < circuit.size(); ++i) out.add(circuit[i]);
  return out;
}

void ZneConfig::validate(std::size_t num_qubits) const {
  if (scale_factors.empty()) throw InputError("no scale factors given");
  if (scale_factors.front() != 1) throw InputError("the first scale factor must be 1");
  for (std::size_t i = 0; i < scale_factors.size(); ++i) {
    if (scale_factors[i] % 2 == 0) {
      throw InputError("scale factor " + std::to_string(scale_factors[i]) + " is not odd");
    }
    if (i > 0 && scale_factors[i] <= scale_factors[i - 1]) {
      throw InputError("scale factors must be strictly ascending");
    }
  }
  const std::size_t degree = extrapolator == Extrapolator::kLinear ? 1 : 2;
  if (scale_factors.size() < degree + 1) {
    throw InputError("fit of degree " + std::to_string(degree) + " needs at least " +
                     std::to_string(degree + 1) + " scale factors");
  }
  if (observable.empty()) throw InputError("observable has no qubits");
  std::set<Qubit> seen;
  for (Qubit q : observable) {
    if (q >= num_qubits) throw InputError("observable qubit " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) throw InputError("observable repeats qubit " + std::to_string(q));
  }
}

nlohmann::ordered_json ZneConfig::to_json() const {
  return {{"scale_factors", scale_factors},
          {"fold_mode", fold_mode == FoldMode::kGlobal ? "global" : "per-gate"},
          {"fit", extrapolator == Extrapolator::kLinear ? "linear" : "quadratic"},
          {"observable", observable}};
}

ZeroNoiseFit extrapolate_to_zero(const std::vector<std::pair<double, double>> &points,
                                 std::size_t degree) {
  if (points.size() < degree + 1) {
    throw InputError("fit of degree " + std::to_string(degree) + " needs " +
                     std::to_string(degree + 1) + " points, got " + std::to_string(points.size()));
  }
  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd vandermonde(rows, cols);
  Eigen::VectorXd values(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double lambda = points[static_cast<std::size_t>(i)].first;
    double power = 1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      vandermonde(i, j) = power;
      power *= lambda;
    }
    values(i) = points[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd c = vandermonde.colPivHouseholderQr().solve(values);
  ZeroNoiseFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.intercept = c(0);
  return fit;
}

double parity_expectation(const ShotHistogram &histogram, const std::vector<Qubit> &qubits) {
  if (histogram.shots == 0) throw InputError("histogram has no shots");
  std::uint64_t mask = 0;
  for (Qubit q : qubits) {
    auto it = std::find(histogram.measured_qubits.begin(), histogram.measured_qubits.end(), q);
    if (it == histogram.measured_qubits.end()) {
      throw InputError("observable qubit " + std::to_string(q) + " was not measured");
    }
    mask |= std::uint64_t{1} << (it - histogram.measured_qubits.begin());
  }
  std::int64_t total = 0;
  for (auto [outcome, count] : histogram.counts) {
    const bool odd = std::popcount(outcome & mask) % 2 == 1;
    total += odd ? -static_cast<std::int64_t>(count) : static_cast<std::int64_t>(count);
  }
  return static_cast<double>(total) / static_cast<double>(histogram.shots);
}

nlohmann::ordered_json ZneResult::to_json() const {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (auto [lambda, value] : raw) points.push_back({{"lambda", lambda}, {"expectation", value}});
  return {{"mitigated_value", mitigated_value},
          {"fit_coefficients", fit.coefficients},
          {"raw", points},
          {"shots", shots},
          {"seed", seed},
          {"rng", kRngScheme}};
}

ZneResult zne_estimate(const Circuit &circuit, const ZneConfig &config, const NoiseModel &noise,
                       std::uint64_t shots, std::uint64_t seed) {
  config.validate(circuit.num_qubits());
  noise.validate();
  if (shots == 0) throw InputError("shots must be positive");
  ZneResult result;
  result.shots = shots;
  result.seed = seed;
  const Circuit body = circuit.body();
  for (unsigned lambda : config.scale_factors) {
    Circuit folded = fold(body, lambda, config.fold_mode);
    for (Qubit q : config.observable) folded.add(gates::measure(q));
    const ShotHistogram hist = sample(folded, shots, seed, noise);
    result.raw.emplace_back(static_cast<double>(lambda), parity_expectation(hist, config.observable));
  }
  const std::size_t degree = config.extrapolator == Extrapolator::kLinear ? 1 : 2;
  result.fit = extrapolate_to_zero(result.raw, degree);
  result.mitigated_value = result.fit.intercept;
  return result;
}

// ---------------------------------------------------------------------------
// Mirror circuits

nlohmann::ordered_json MirrorReport::to_json() const {
  return {{"base_depth", base_depth},
          {"mirrored_depth", mirrored_depth},
          {"survival_probability", survival_probability},
          {"shots", shots},
          {"seed", seed},
          {"rng", kRngScheme}};
}

Circuit mirror_circuit(const Circuit &circuit) {
  if (circuit.has_measure()) throw InputError("mirror base circuit must not measure");
  Circuit out = compose(circuit, inverse(circuit));
  for (Qubit q = 0; q < circuit.num_qubits(); ++q) out.add(gates::measure(q));
  return out;
}

MirrorReport mirror_benchmark(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed,
                              const NoiseModel &noise) {
  if (shots == 0) throw InputError("shots must be positive");
  const Circuit mirrored = mirror_circuit(circuit);
  const ShotHistogram hist = sample(mirrored, shots, seed, noise);
  MirrorReport report;
  report.base_depth = depth(circuit);
  report.mirrored_depth = depth(mirrored.body());
  report.survival_probability =
      static_cast<double>(hist.count(0)) / static_cast<double>(shots);
  report.shots = shots;
  report.seed = seed;
  return report;
}

Circuit random_layer_circuit(std::size_t num_qubits, std::size_t layers, std::uint64_t seed) {
  if (num_qubits == 0) throw InputError("layer circuit needs at least one qubit");
  auto rng = shot_stream(seed, 0, kLayerStream);
  Circuit out(num_qubits, "random_layers");
  for (std::size_t layer = 0; layer < layers; ++layer) {
    for (Qubit q = 0; q < num_qubits; ++q) {
      out.add(gates::rz(2 * std::numbers::pi * uniform01(rng), q));
      out.add(gates::sx(q));
    }
    for (Qubit q = 0; q + 1 < num_qubits; ++q) out.add(gates::cx(q, q + 1));
  }
  return out;
}

}  // namespace qkit
