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

#include "qkit/order_finding.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "qkit/reporting.hpp"

namespace qkit {

std::size_t OrderFindingConfig::function_qubits() const {
  return modulus < 2 ? 1 : static_cast<std::size_t>(std::bit_width(modulus - 1));
}

std::size_t OrderFindingConfig::argument_width() const {
  return argument_qubits.value_or(2 * function_qubits() + 1);
}

AqftConfig OrderFindingConfig::transform_config() const {
  const std::size_t t = argument_width();
  if (!use_aqft) return AqftConfig::full(t);
  return {t, cutoff.value_or(default_cutoff(t))};
}

void OrderFindingConfig::validate() const {
  if (modulus < 3) throw InvalidGate("modulus N must be at least 3");
  if (base < 2 || base >= modulus) {
    throw InvalidGate("base x must lie in [2, N-1], got " + std::to_string(base));
  }
  if (const auto g = std::gcd(base, modulus); g != 1) throw NotCoprime(base, modulus, g);
  const std::size_t t = argument_width();
  const std::size_t n = function_qubits();
  if (t < n) {
    throw InvalidGate("argument register (" + std::to_string(t) +
                      ") must be at least as wide as the function register (" +
                      std::to_string(n) + ")");
  }
  if (t + n > max_qubits) {
    throw SizeLimitExceeded("order finding needs " + std::to_string(t + n) +
                            " qubits, limit is " + std::to_string(max_qubits));
  }
  if (shots == 0) throw InvalidGate("shot count must be positive");
  transform_config().validate();
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  using u128 = unsigned __int128;
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = static_cast<std::uint64_t>(u128(result) * base % modulus);
    base = static_cast<std::uint64_t>(u128(base) * base % modulus);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t classical_order(std::uint64_t x, std::uint64_t modulus) {
  if (modulus == 0) throw InvalidGate("modulus must be positive");
  if (const auto g = std::gcd(x, modulus); g != 1) throw NotCoprime(x, modulus, g);
  if (modulus == 1) return 1;
  std::uint64_t value = x % modulus;
  std::uint64_t r = 1;
  while (value != 1) {
    value = static_cast<std::uint64_t>((unsigned __int128)value * x % modulus);
    ++r;
  }
  return r;
}

OrderCircuit build_order_circuit(const OrderFindingConfig &config) {
  config.validate();
  const std::size_t t = config.argument_width();
  const std::size_t n = config.function_qubits();
  Circuit c(t + n, "order-finding N=" + std::to_string(config.modulus) +
                       " x=" + std::to_string(config.base));

  // Function register starts at |1>, the multiplicative identity.
  c.add(gates::x(static_cast<Qubit>(t)));
  for (Qubit q = 0; q < t; ++q) c.add(gates::h(q));

  std::vector<Qubit> function_register(n);
  std::iota(function_register.begin(), function_register.end(), static_cast<Qubit>(t));
  std::uint64_t multiplier = config.base % config.modulus;  // x^(2^j) mod N
  for (Qubit j = 0; j < t; ++j) {
    c.add(gates::cmodmul(multiplier, config.modulus, j, function_register));
    multiplier = mod_pow(multiplier, 2, config.modulus);
  }

  OrderCircuit out{Circuit(1), {}, c.size()};
  auto transform = build_aqft(config.transform_config());
  out.transform_report = transform.report;
  const Circuit readout =
      config.inverse_transform ? inverse(transform.circuit) : std::move(transform.circuit);
  std::vector<Qubit> identity(t);
  std::iota(identity.begin(), identity.end(), Qubit{0});
  c.add_all(relabel(readout, identity, t + n));
  for (Qubit q = 0; q < t; ++q) c.add(gates::measure(q));
  out.circuit = std::move(c);
  return out;
}

std::vector<SpectrumPoint> spectrum(const OrderFindingConfig &config) {
  const OrderCircuit oc = build_order_circuit(config);
  const Statevector final_state = run(oc.circuit.body(), 0, config.max_qubits);
  const std::uint64_t T = config.period_domain();
  std::vector<SpectrumPoint> points(T);
  for (std::uint64_t z = 0; z < T; ++z) points[z].z = z;
  const auto &amps = final_state.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    points[static_cast<std::uint64_t>(i) & (T - 1)].probability += std::norm(amps[i]);
  }
  return points;
}

std::vector<Convergent> continued_fractions(std::uint64_t z, std::uint64_t period_domain,
                                            std::uint64_t modulus) {
  if (period_domain == 0 || z >= period_domain) {
    throw InvalidGate("continued fractions need 0 <= z < T");
  }
  std::vector<Convergent> out;
  // h_k = a_k h_{k-1} + h_{k-2}, k_k = a_k k_{k-1} + k_{k-2}
  std::uint64_t h_prev = 1, h_prev2 = 0;
  std::uint64_t k_prev = 0, k_prev2 = 1;
  std::uint64_t num = z, den = period_domain;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t h = a * h_prev + h_prev2;
    const std::uint64_t k = a * k_prev + k_prev2;
    if (k >= modulus) break;
    out.push_back({h, k});
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const std::uint64_t rem = num - a * den;
    num = den;
    den = rem;
  }
  return out;
}

namespace {

bool is_period(std::uint64_t x, std::uint64_t r, std::uint64_t modulus) {
  return r > 0 && mod_pow(x, r, modulus) == 1;
}

/// Smallest divisor s of a verified multiple `r` with x^s = 1.
std::uint64_t reduce_to_order(std::uint64_t x, std::uint64_t r, std::uint64_t modulus) {
  for (std::uint64_t s = 1; s <= r; ++s) {
    if (r % s == 0 && is_period(x, s, modulus)) return s;
  }
  return r;
}

}  // namespace

OrderResult find_order(const OrderFindingConfig &config) {
  const OrderCircuit oc = build_order_circuit(config);
  OrderResult result;
  result.gate_counts = gate_counts(oc.circuit);
  result.transform_report = oc.transform_report;
  result.histogram = sample(oc.circuit, config.shots, config.seed, {},
                            {.force_trajectories = false, .max_qubits = config.max_qubits});

  const std::uint64_t N = config.modulus;
  const std::uint64_t x = config.base;
  const std::uint64_t T = config.period_domain();

  // Histogram outcomes are already the argument value z: the argument
  // register is qubits [0, t) and all of them are measured.
  std::set<std::uint64_t> denominators;
  std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> per_outcome;
  for (const auto &[z, count] : result.histogram.counts) {
    std::vector<std::uint64_t> ds;
    for (const auto &c : continued_fractions(z, T, N)) {
      result.candidate_fractions.push_back({z, c.numerator, c.denominator});
      if (c.denominator >= 2) {
        ds.push_back(c.denominator);
        denominators.insert(c.denominator);
      }
    }
    per_outcome.emplace_back(z, std::move(ds));
  }

  std::optional<std::uint64_t> verified;
  for (std::uint64_t r : denominators) {
    if (is_period(x, r, N)) {
      verified = r;
      break;
    }
  }
  if (!verified) {
    // Completion: a denominator may be a proper divisor of the order when d
    // and r share a factor; the lcm of two such divisors can recover it.
    for (auto a = denominators.begin(); a != denominators.end(); ++a) {
      for (auto b = std::next(a); b != denominators.end(); ++b) {
        const std::uint64_t l = std::lcm(*a, *b);
        if (is_period(x, l, N) && (!verified || l < *verified)) verified = l;
      }
    }
  }
  if (!verified) return result;

  const std::uint64_t r = reduce_to_order(x, *verified, N);
  result.order = r;
  std::uint64_t successes = 0;
  for (const auto &[z, ds] : per_outcome) {
    const bool ok = std::any_of(ds.begin(), ds.end(), [r](std::uint64_t d) { return r % d == 0; });
    if (ok) successes += result.histogram.count(z);
  }
  result.success_fraction =
      static_cast<double>(successes) / static_cast<double>(result.histogram.shots);
  return result;
}

nlohmann::ordered_json to_json(const OrderFindingConfig &config, const OrderResult &result) {
  const AqftConfig transform = config.transform_config();
  nlohmann::ordered_json j;
  j["N"] = config.modulus;
  j["x"] = config.base;
  j["t"] = config.argument_width();
  j["n"] = config.function_qubits();
  j["aqft"] = config.use_aqft;
  j["m"] = transform.cutoff_label();
  if (result.order) j["r"] = *result.order;
  else j["r"] = nullptr;
  j["success_fraction"] = result.success_fraction;
  j["shots"] = config.shots;
  j["gate_counts"] = gate_counts_json(result.gate_counts);
  j["transform_report"] = result.transform_report.to_json();
  j["seed"] = config.seed;
  j["rng"] = kRngScheme;
  nlohmann::ordered_json candidates = nlohmann::ordered_json::array();
  for (const auto &c : result.candidate_fractions) {
    candidates.push_back({c.z, c.numerator, c.denominator});
  }
  j["candidate_fractions"] = std::move(candidates);
  j["histogram"] = result.histogram.to_json();
  return j;
}

}  // namespace qkit
