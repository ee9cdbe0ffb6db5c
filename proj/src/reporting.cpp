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

#include "qkit/reporting.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace qkit {

nlohmann::ordered_json gate_counts_json(const GateCounts &counts) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[kind, n] : counts) j[std::string(kind_name(kind))] = n;
  return j;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path &path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << contents;
}

void RunManifest::add_input(const std::filesystem::path &path, std::string_view contents) {
  input_digests.emplace_back(path.string(), sha256_hex(contents));
}

std::string RunManifest::digest() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["command_line"] = command_line;
  j["seed"] = seed;
  j["inputs"] = input_digests;
  return sha256_hex(j.dump());
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
  for (const auto &[path, digest] : input_digests) {
    inputs.push_back({{"path", path}, {"sha256", digest}});
  }
  return {{"version", version},       {"command_line", command_line},
          {"seed", seed},             {"started_at", started_at},
          {"finished_at", finished_at}, {"inputs", inputs},
          {"outputs", outputs},       {"digest", digest()}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace qkit
