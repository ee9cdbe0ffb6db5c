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

#include "qkit/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qkit/kernels.hpp"

namespace qkit {

namespace {

std::span<std::complex<double>> as_span(Eigen::Ref<Eigen::VectorXcd> v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void check_width(std::size_t n, std::size_t limit, const char *what) {
  if (n > limit) {
    throw SizeLimitExceeded(std::string(what) + " limited to " + std::to_string(limit) +
                            " qubits, got " + std::to_string(n));
  }
}

Eigen::VectorXcd zero_state(std::size_t num_qubits) {
  check_width(num_qubits, kMaxStatevectorQubits, "statevector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  v[0] = 1.0;
  return v;
}

}  // namespace

Statevector::Statevector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(zero_state(num_qubits)) {}

Statevector::Statevector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  const auto dim = static_cast<std::uint64_t>(amplitudes_.size());
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw DimensionMismatch("amplitude count " + std::to_string(dim) + " is not a power of two");
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-10) {
    throw DimensionMismatch("statevector is not normalized");
  }
}

Statevector Statevector::basis(std::size_t num_qubits, std::uint64_t index) {
  Statevector v(num_qubits);
  if (index >= v.dimension()) {
    throw DimensionMismatch("basis index " + std::to_string(index) + " out of range");
  }
  v.amplitudes_[0] = 0.0;
  v.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

void Statevector::apply(const Gate &gate) {
  validate_gate(gate, num_qubits_);
  kernels::apply_gate<double>(as_span(amplitudes_), gate);
}

void apply_circuit(const Circuit &circuit, Eigen::Ref<Eigen::VectorXcd> amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != (std::size_t{1} << circuit.num_qubits())) {
    throw DimensionMismatch("vector of " + std::to_string(amplitudes.size()) +
                            " amplitudes for a " + std::to_string(circuit.num_qubits()) +
                            "-qubit circuit");
  }
  const auto span = as_span(amplitudes);
  for (const auto &g : circuit) kernels::apply_gate<double>(span, g);
}

Statevector run(const Circuit &circuit, const Statevector &initial, std::size_t max_qubits) {
  check_width(circuit.num_qubits(), max_qubits, "statevector simulation");
  if (initial.num_qubits() != circuit.num_qubits()) {
    throw DimensionMismatch("initial state has " + std::to_string(initial.num_qubits()) +
                            " qubits, circuit has " + std::to_string(circuit.num_qubits()));
  }
  Statevector out = initial;
  for (const auto &g : circuit) out.apply(g);
  return out;
}

Statevector run(const Circuit &circuit, std::uint64_t basis_index, std::size_t max_qubits) {
  check_width(circuit.num_qubits(), max_qubits, "statevector simulation");
  return run(circuit, Statevector::basis(circuit.num_qubits(), basis_index), max_qubits);
}

Eigen::MatrixXcd unitary_of(const Circuit &circuit) {
  check_width(circuit.num_qubits(), kMaxUnitaryQubits, "dense unitary");
  const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) apply_circuit(circuit, u.col(j));
  return u;
}

Eigen::MatrixXcd permutation_unitary(std::span<const Qubit> mapping) {
  const std::size_t n = mapping.size();
  check_width(n, kMaxUnitaryQubits, "dense unitary");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t b = 0; b < static_cast<std::size_t>(dim); ++b) {
    std::size_t image = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((b >> i) & 1U) image |= std::size_t{1} << mapping[i];
    }
    u(static_cast<Eigen::Index>(image), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return u;
}

double fidelity(const Statevector &a, const Statevector &b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("fidelity between states of different dimension");
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double phase_aligned_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrices of different shape");
  }
  Eigen::Index row = 0, col = 0;
  b.cwiseAbs().maxCoeff(&row, &col);
  std::complex<double> phase = 1.0;
  const auto pivot_b = b(row, col);
  const auto pivot_a = a(row, col);
  if (std::abs(pivot_b) > 0 && std::abs(pivot_a) > 0) {
    phase = (pivot_a / pivot_b) / std::abs(pivot_a / pivot_b);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

bool equivalent_up_to_global_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                                   double tol) {
  return phase_aligned_distance(a, b) <= tol;
}

bool equivalent_up_to_global_phase(const Circuit &a, const Circuit &b, double tol) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionMismatch("circuits of different width");
  }
  return equivalent_up_to_global_phase(unitary_of(a), unitary_of(b), tol);
}

NoiseModel NoiseModel::depolarizing(GateKind kind, double p) {
  NoiseModel model;
  model.gate_errors[kind] = PauliError{p / 3, p / 3, p / 3};
  return model;
}

bool NoiseModel::has_gate_noise() const {
  return std::any_of(gate_errors.begin(), gate_errors.end(),
                     [](const auto &e) { return e.second.total() > 0; });
}

void NoiseModel::validate() const {
  auto check = [](double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError(what + " probability " + std::to_string(p) + " outside [0,1]");
    }
  };
  for (const auto &[kind, e] : gate_errors) {
    const std::string name(kind_name(kind));
    check(e.px, name + " px");
    check(e.py, name + " py");
    check(e.pz, name + " pz");
    if (e.total() > 1.0 + 1e-15) throw InputError(name + " error probabilities sum past 1");
  }
  check(measurement_flip, "measurement flip");
}

nlohmann::ordered_json NoiseModel::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[kind, e] : gate_errors) {
    j[std::string(kind_name(kind))] = {{"px", e.px}, {"py", e.py}, {"pz", e.pz}};
  }
  j["meas"] = measurement_flip;
  return j;
}

NoiseModel NoiseModel::from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw InputError("noise model must be a JSON object");
  NoiseModel model;
  for (const auto &[key, value] : j.items()) {
    if (key == "meas") {
      if (!value.is_number()) throw InputError("'meas' must be a number");
      model.measurement_flip = value.get<double>();
      continue;
    }
    const auto kind = kind_from_name(key);
    if (!kind || *kind == GateKind::BARRIER || *kind == GateKind::MEASURE) {
      throw InputError("unknown noisy gate kind '" + key + "'");
    }
    if (!value.is_object()) throw InputError("entry '" + key + "' must be an object");
    PauliError e;
    for (const auto &[field, p] : value.items()) {
      if (!p.is_number()) throw InputError(key + "." + field + " must be a number");
      if (field == "px") e.px = p.get<double>();
      else if (field == "py") e.py = p.get<double>();
      else if (field == "pz") e.pz = p.get<double>();
      else if (field == "p") e = PauliError{p.get<double>() / 3, p.get<double>() / 3, p.get<double>() / 3};
      else throw InputError("unknown field '" + field + "' in entry '" + key + "'");
    }
    model.gate_errors[*kind] = e;
  }
  model.validate();
  return model;
}

std::string ShotHistogram::bitstring(std::uint64_t outcome) const {
  const std::size_t width = measured_qubits.size();
  std::string s(width, '0');
  for (std::size_t k = 0; k < width; ++k) {
    if ((outcome >> k) & 1U) s[width - 1 - k] = '1';
  }
  return s;
}

std::uint64_t ShotHistogram::count(std::uint64_t outcome) const {
  auto it = counts.find(outcome);
  return it == counts.end() ? 0 : it->second;
}

nlohmann::ordered_json ShotHistogram::to_json() const {
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto &[outcome, n] : counts) c[bitstring(outcome)] = n;
  return {{"shots", shots}, {"seed", seed}, {"counts", c}};
}

std::mt19937_64 shot_stream(std::uint64_t seed, std::uint64_t shot, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32),
                    stream};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

enum Stream : std::uint32_t { kMeasureStream = 0, kGateNoiseStream = 1, kReadoutStream = 2 };

/// Cumulative marginal distribution over the measured qubits.
std::vector<double> marginal_cdf(const Eigen::VectorXcd &amps, std::span<const Qubit> measured) {
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    std::size_t outcome = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
      if ((static_cast<std::size_t>(i) >> measured[k]) & 1U) outcome |= std::size_t{1} << k;
    }
    probs[outcome] += std::norm(amps[i]);
  }
  for (std::size_t k = 1; k < probs.size(); ++k) probs[k] += probs[k - 1];
  return probs;
}

std::uint64_t draw_outcome(const std::vector<double> &cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::uint64_t>(it - cdf.begin());
}

struct PauliEvent {
  std::size_t gate_index;
  Qubit qubit;
  GateKind pauli;
};

std::vector<PauliEvent> draw_gate_noise(const Circuit &body, const NoiseModel &noise,
                                        std::mt19937_64 &rng) {
  std::vector<PauliEvent> events;
  for (std::size_t i = 0; i < body.size(); ++i) {
    auto it = noise.gate_errors.find(body[i].kind);
    if (it == noise.gate_errors.end() || it->second.total() <= 0) continue;
    const PauliError &e = it->second;
    for (Qubit q : body[i].qubits) {
      const double u = uniform01(rng);
      if (u < e.px) events.push_back({i, q, GateKind::X});
      else if (u < e.px + e.py) events.push_back({i, q, GateKind::Y});
      else if (u < e.total()) events.push_back({i, q, GateKind::Z});
    }
  }
  return events;
}

std::uint64_t apply_readout_flips(std::uint64_t outcome, std::size_t width, double p,
                                  std::mt19937_64 &rng) {
  if (p <= 0) return outcome;
  for (std::size_t k = 0; k < width; ++k) {
    if (uniform01(rng) < p) outcome ^= std::uint64_t{1} << k;
  }
  return outcome;
}

}  // namespace

ShotHistogram sample(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed,
                     const NoiseModel &noise, const SampleOptions &options) {
  if (shots == 0) throw InvalidGate("shot count must be positive");
  if (!circuit.has_measure()) throw InvalidGate("circuit has no measurements to sample");
  check_width(circuit.num_qubits(), options.max_qubits, "statevector simulation");
  noise.validate();

  ShotHistogram hist;
  hist.shots = shots;
  hist.seed = seed;
  hist.measured_qubits = circuit.measured_qubits();
  const std::size_t width = hist.measured_qubits.size();

  const Circuit body = circuit.body();
  Eigen::VectorXcd ideal = Statevector(circuit.num_qubits()).amplitudes();
  apply_circuit(body, ideal);
  const std::vector<double> ideal_cdf = marginal_cdf(ideal, hist.measured_qubits);

  const bool trajectories = options.force_trajectories || noise.has_gate_noise();
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    std::uint64_t outcome = 0;
    auto measure_rng = shot_stream(seed, shot, kMeasureStream);
    std::vector<PauliEvent> events;
    if (trajectories) {
      auto noise_rng = shot_stream(seed, shot, kGateNoiseStream);
      events = draw_gate_noise(body, noise, noise_rng);
    }
    if (events.empty()) {
      // Error-free trajectories reproduce the ideal state exactly.
      outcome = draw_outcome(ideal_cdf, uniform01(measure_rng));
    } else {
      Eigen::VectorXcd amps = Statevector(circuit.num_qubits()).amplitudes();
      const auto span = as_span(amps);
      std::size_t next = 0;
      for (std::size_t i = 0; i < body.size(); ++i) {
        kernels::apply_gate<double>(span, body[i]);
        for (; next < events.size() && events[next].gate_index == i; ++next) {
          kernels::apply_gate<double>(span, gates::single(events[next].pauli, events[next].qubit));
        }
      }
      outcome = draw_outcome(marginal_cdf(amps, hist.measured_qubits), uniform01(measure_rng));
    }
    if (noise.measurement_flip > 0) {
      auto readout_rng = shot_stream(seed, shot, kReadoutStream);
      outcome = apply_readout_flips(outcome, width, noise.measurement_flip, readout_rng);
    }
    ++hist.counts[outcome];
  }
  return hist;
}

}  // namespace qkit
