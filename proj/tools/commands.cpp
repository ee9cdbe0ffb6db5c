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

#include "commands.hpp"

#include <charconv>
#include <cstdio>
#include <iostream>

#include <json.hpp>

#include "qkit/fourier.hpp"
#include "qkit/mitigation.hpp"
#include "qkit/order_finding.hpp"
#include "qkit/transpiler.hpp"

namespace qkit::cli {

using nlohmann::ordered_json;

std::string Context::read_input(const std::string &path) {
  std::string contents = read_file(path);
  manifest.add_input(path, contents);
  return contents;
}

void Context::emit(const std::string &contents) {
  if (out.empty()) {
    std::cout << contents;
    return;
  }
  write_file(out, contents);
  manifest.outputs.push_back(out);
  manifest.finished_at = utc_timestamp();
  write_file(out + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

namespace {

std::uint64_t parse_number(std::string_view tok, std::string_view what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw InputError("invalid " + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(sep, pos), text.size());
    if (next > pos) parts.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

std::string with_digest(ordered_json report, const Context &ctx) {
  ordered_json j;
  j["manifest_digest"] = ctx.manifest.digest();
  for (auto &[key, value] : report.items()) j[key] = value;
  return j.dump(2) + "\n";
}

std::string circuit_with_digest(const Circuit &circuit, const Context &ctx) {
  return "# manifest " + ctx.manifest.digest() + "\n" + render_circuit(circuit);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

NoiseModel load_noise(Context &ctx, const std::string &path) {
  if (path.empty()) return {};
  const auto text = ctx.read_input(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(path + ": " + e.what());
  }
  NoiseModel noise = NoiseModel::from_json(j);
  noise.validate();
  return noise;
}

}  // namespace

std::vector<std::size_t> parse_range(const std::string &text) {
  if (text.empty()) return {};
  const auto colon = text.find(':');
  std::size_t lo = 0, hi = 0;
  if (colon == std::string::npos) {
    lo = hi = parse_number(text, "range");
  } else {
    lo = parse_number(std::string_view(text).substr(0, colon), "range start");
    hi = parse_number(std::string_view(text).substr(colon + 1), "range end");
  }
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> parse_list(const std::string &text) {
  std::vector<std::uint64_t> out;
  for (const auto &tok : split(text, ',')) out.push_back(parse_number(tok, "list entry"));
  return out;
}

// ---------------------------------------------------------------------------

int qft_bench(Context &ctx, const QftBenchArgs &args) {
  const auto ns = parse_range(args.n_range);
  const auto cutoffs = split(args.cutoffs, ',');
  std::string csv = "# manifest " + ctx.manifest.digest() + "\n";
  csv += "n,m,hadamards,rotations,swaps,recursive_calls,fidelity\n";
  for (std::size_t n : ns) {
    if (n == 0) throw InputError("n must be positive");
    for (const auto &spec : cutoffs) {
      AqftConfig config;
      if (spec == "full") {
        config = AqftConfig::full(n);
      } else if (spec == "default") {
        config = AqftConfig::with_default_cutoff(n);
      } else {
        config = {n, parse_number(spec, "cutoff")};
        if (*config.cutoff > n) continue;
      }
      const auto built = config.cutoff ? build_aqft(config) : build_qft(n);
      const auto &r = built.report;
      std::string fid;
      if (n <= kMaxFidelityQubits) {
        fid = format_double(aqft_fidelity(n, config.cutoff, args.trials, ctx.seed));
      }
      csv += std::to_string(n) + "," + config.cutoff_label() + "," +
             std::to_string(r.hadamard_count) + "," + std::to_string(r.rotation_count) + "," +
             std::to_string(r.swap_count) + "," + std::to_string(r.recursive_calls) + "," + fid +
             "\n";
    }
  }
  ctx.emit(csv);
  return 0;
}

int order_find(Context &ctx, const OrderFindArgs &args) {
  OrderFindingConfig config;
  config.modulus = args.modulus;
  config.base = args.base;
  config.argument_qubits = args.t;
  config.use_aqft = args.aqft;
  config.cutoff = args.m;
  config.shots = args.shots;
  config.seed = ctx.seed;
  config.inverse_transform = args.inverse;
  config.max_qubits = ctx.max_qubits;
  const auto result = find_order(config);
  ctx.emit(with_digest(to_json(config, result), ctx));
  return 0;
}

int transpile(Context &ctx, const TranspileArgs &args) {
  const auto coupling = CouplingMap::parse(ctx.read_input(args.coupling));
  const auto basis = BasisGateSet::parse(args.basis);
  const auto circuit = parse_circuit(ctx.read_input(args.input));
  TranspileOptions options;
  if (args.layout == "trivial") {
    options.layout = LayoutStrategy::kTrivial;
  } else if (args.layout == "greedy") {
    options.layout = LayoutStrategy::kDegreeGreedy;
  } else {
    throw InputError("unknown layout strategy '" + args.layout + "'");
  }
  const auto result = qkit::transpile(circuit, coupling, basis, options);
  if (!args.report.empty()) {
    write_file(args.report, with_digest(result.report.to_json(), ctx));
    ctx.manifest.outputs.push_back(args.report);
  }
  ctx.emit(circuit_with_digest(result.circuit, ctx));
  return 0;
}

int mitigate(Context &ctx, const MitigateArgs &args) {
  const auto circuit = parse_circuit(ctx.read_input(args.input));
  const auto &t = args.technique;
  if (t == "twirl") {
    ctx.emit(circuit_with_digest(pauli_twirl(circuit, ctx.seed), ctx));
  } else if (t == "dd") {
    DdSequence seq;
    if (args.sequence == "xx") {
      seq = DdSequence::kXX;
    } else if (args.sequence == "xyxy") {
      seq = DdSequence::kXYXY;
    } else {
      throw InputError("unknown DD sequence '" + args.sequence + "'");
    }
    const auto sched = schedule(circuit, default_durations());
    ctx.emit(circuit_with_digest(insert_dd(circuit, sched, args.min_window, seq), ctx));
  } else if (t == "mirror") {
    const auto noise = load_noise(ctx, args.noise);
    const auto report = mirror_benchmark(circuit.body(), args.shots, ctx.seed, noise);
    ctx.emit(with_digest(report.to_json(), ctx));
  } else if (t == "zne") {
    const auto noise = load_noise(ctx, args.noise);
    ZneConfig config;
    config.scale_factors.clear();
    for (auto v : parse_list(args.scale_factors)) config.scale_factors.push_back(static_cast<unsigned>(v));
    if (args.fit == "linear") {
      config.extrapolator = Extrapolator::kLinear;
    } else if (args.fit == "quadratic") {
      config.extrapolator = Extrapolator::kQuadratic;
    } else {
      throw InputError("unknown fit '" + args.fit + "'");
    }
    if (args.fold_mode == "global") {
      config.fold_mode = FoldMode::kGlobal;
    } else if (args.fold_mode == "per-gate") {
      config.fold_mode = FoldMode::kPerGate;
    } else {
      throw InputError("unknown fold mode '" + args.fold_mode + "'");
    }
    if (!args.observable.empty()) {
      for (auto q : parse_list(args.observable)) config.observable.push_back(static_cast<Qubit>(q));
    } else if (circuit.has_measure()) {
      config.observable = circuit.measured_qubits();
    } else {
      for (Qubit q = 0; q < circuit.num_qubits(); ++q) config.observable.push_back(q);
    }
    const auto result = zne_estimate(circuit, config, noise, args.shots, ctx.seed);
    ordered_json j = config.to_json();
    const ordered_json fields = result.to_json();
    for (const auto &[key, value] : fields.items()) j[key] = value;
    j["noise"] = noise.to_json();
    ctx.emit(with_digest(j, ctx));
  } else {
    throw InputError("unknown technique '" + t + "'");
  }
  return 0;
}

int mirror(Context &ctx, const MirrorArgs &args) {
  NoiseModel noise = args.noise.empty() ? NoiseModel::depolarizing(GateKind::CX, args.p)
                                        : load_noise(ctx, args.noise);
  noise.validate();
  const auto depths = parse_list(args.depths);
  std::size_t deepest = 0;
  for (auto d : depths) deepest = std::max<std::size_t>(deepest, d);
  const Circuit full = random_layer_circuit(args.qubits, deepest, ctx.seed);
  const std::size_t per_layer = full.size() / std::max<std::size_t>(deepest, 1);
  ordered_json rows = ordered_json::array();
  for (auto d : depths) {
    Circuit prefix(args.qubits, "random_layers");
    for (std::size_t i = 0; i < d * per_layer; ++i) prefix.add(full[i]);
    auto row = mirror_benchmark(prefix, args.shots, ctx.seed, noise).to_json();
    ordered_json entry{{"layers", d}};
    for (auto &[key, value] : row.items()) entry[key] = value;
    rows.push_back(entry);
  }
  ctx.emit(with_digest({{"qubits", args.qubits}, {"noise", noise.to_json()}, {"ladder", rows}},
                       ctx));
  return 0;
}

}  // namespace qkit::cli
