// Copyright 2026 The rtnb Authors
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

// Flat YAML run configuration. Every key must be consumed by the scenario
// that reads it; leftovers are reported as unknown with their line.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

namespace rtnb::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScenarioConfig {
 public:
  /// Throws ConfigError on unreadable files, syntax errors or a non-flat map.
  static ScenarioConfig load(const std::string& path);
  static ScenarioConfig parse(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  double real(const std::string& key, double fallback, double lo, double hi);
  double real(const std::string& key, double lo, double hi);  // required
  long integer(const std::string& key, long fallback, long lo, long hi);
  long integer(const std::string& key, long lo, long hi);  // required
  bool flag(const std::string& key, bool fallback);
  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed);

  /// Either `key: [v0, v1, ...]`, a scalar, or the triple
  /// `key_min`, `key_max`, `key_points` (inclusive, evenly spaced).
  std::vector<double> real_grid(const std::string& key, double lo, double hi,
                                const std::vector<double>& fallback = {});
  std::vector<long> int_grid(const std::string& key, long lo, long hi,
                             const std::vector<long>& fallback = {});

  /// Throws ConfigError for every key not read so far.
  void reject_unused() const;

  /// FNV-1a 64 of the raw file contents.
  std::uint64_t hash() const noexcept { return hash_; }
  const std::string& origin() const noexcept { return origin_; }

 private:
  ScenarioConfig(YAML::Node root, std::string origin, std::uint64_t hash);
  YAML::Node node(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  YAML::Node root_;
  std::string origin_;
  std::uint64_t hash_;
  std::set<std::string> used_;
};

std::uint64_t fnv1a64(const std::string& bytes) noexcept;

}  // namespace rtnb::cli
