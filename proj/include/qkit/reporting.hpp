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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkit/circuit.hpp"

namespace qkit {

inline constexpr const char *kToolkitVersion = QKIT_VERSION;

/// {"cx": 3, "h": 1, ...} keyed by gate mnemonic.
nlohmann::ordered_json gate_counts_json(const GateCounts &counts);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view contents);

/// Provenance record for one CLI invocation.
///
/// The digest covers version, command line, seed and input digests only, so
/// reports that embed it stay byte-identical across re-runs; timestamps live
/// in the manifest file alone.
struct RunManifest {
  std::string version = kToolkitVersion;
  std::vector<std::string> command_line;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, sha256
  std::vector<std::string> outputs;

  void add_input(const std::filesystem::path &path, std::string_view contents);
  std::string digest() const;
  nlohmann::ordered_json to_json() const;
};

/// Current UTC time as ISO-8601.
std::string utc_timestamp();

}  // namespace qkit
