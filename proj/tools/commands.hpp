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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkit/reporting.hpp"
#include "qkit/simulator.hpp"

namespace qkit::cli {

/// Global flags plus the manifest being assembled for this invocation.
struct Context {
  std::uint64_t seed = 0;
  std::string out;  // empty: stdout
  std::size_t max_qubits = kMaxStatevectorQubits;
  RunManifest manifest;

  /// Reads an input file and records its digest.
  std::string read_input(const std::string &path);
  /// Writes `contents` to --out (or stdout) and the manifest next to it.
  void emit(const std::string &contents);
};

struct QftBenchArgs {
  std::string n_range = "1:13";
  std::string cutoffs = "full,default";
  std::size_t trials = 16;
};

struct OrderFindArgs {
  std::uint64_t modulus = 0;
  std::uint64_t base = 0;
  std::optional<std::size_t> t;
  bool aqft = false;
  std::optional<std::size_t> m;
  std::uint64_t shots = 1024;
  bool inverse = false;
};

struct TranspileArgs {
  std::string coupling;
  std::string basis = "cx,rz,sx,x";
  std::string input;
  std::string report;
  std::string layout = "greedy";
};

struct MitigateArgs {
  std::string technique;  // zne, mirror, twirl, dd
  std::string input;
  std::string noise;
  std::uint64_t shots = 4096;
  std::string scale_factors = "1,3,5";
  std::string fit = "linear";
  std::string fold_mode = "global";
  std::string observable;  // default: measured qubits, else all
  std::uint64_t min_window = 1;
  std::string sequence = "xx";
};

struct MirrorArgs {
  std::size_t qubits = 4;
  std::string depths = "1,2,4,8";
  double p = 0.005;
  std::string noise;
  std::uint64_t shots = 10000;
};

int qft_bench(Context &ctx, const QftBenchArgs &args);
int order_find(Context &ctx, const OrderFindArgs &args);
int transpile(Context &ctx, const TranspileArgs &args);
int mitigate(Context &ctx, const MitigateArgs &args);
int mirror(Context &ctx, const MirrorArgs &args);

/// "a:b" inclusive; empty string is the empty range.
std::vector<std::size_t> parse_range(const std::string &text);
std::vector<std::uint64_t> parse_list(const std::string &text);

}  // namespace qkit::cli
