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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rtnb::cli {

std::uint64_t fnv1a64(const std::string& bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ScenarioConfig::ScenarioConfig(YAML::Node root, std::string origin, std::uint64_t hash)
    : root_(std::move(root)), origin_(std::move(origin)), hash_(hash) {}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

ScenarioConfig ScenarioConfig::parse(const std::string& text, const std::string& origin) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << origin << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": syntax error: " << e.msg;
    throw ConfigError(os.str());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError(origin + ": top level must be a key: value mapping");
  for (const auto& kv : root) {
    if (kv.second.IsMap()) {
      std::ostringstream os;
      os << origin << ":" << kv.first.Mark().line + 1 << ": key '" << kv.first.as<std::string>()
         << "': nested tables are not supported (flat key: value only)";
      throw ConfigError(os.str());
    }
  }
  return ScenarioConfig(root, origin, fnv1a64(text));
}

bool ScenarioConfig::has(const std::string& key) const { return static_cast<bool>(root_[key]); }

YAML::Node ScenarioConfig::node(const std::string& key) {
  used_.insert(key);
  return root_[key];
}

void ScenarioConfig::fail(const std::string& key, const std::string& what) const {
  std::ostringstream os;
  os << origin_;
  if (const YAML::Node n = root_[key]) os << ":" << n.Mark().line + 1;
  os << ": field '" << key << "': " << what;
  throw ConfigError(os.str());
}

namespace {

template <class T>
T scalar_as(const YAML::Node& n, bool& ok) {
  ok = false;
  if (!n.IsScalar()) return T{};
  try {
    T v = n.as<T>();
    ok = true;
    return v;
  } catch (const YAML::Exception&) {
    return T{};
  }
}

std::string range_text(double lo, double hi) {
  std::ostringstream os;
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

}  // namespace

double ScenarioConfig::real(const std::string& key, double lo, double hi) {
  if (!has(key)) fail(key, "required field is missing");
  return real(key, 0.0, lo, hi);
}

double ScenarioConfig::real(const std::string& key, double fallback, double lo, double hi) {
  const YAML::Node n = node(key);
  if (!n) return fallback;
  bool ok;
  const double v = scalar_as<double>(n, ok);
  if (!ok || !std::isfinite(v)) fail(key, "expected a finite number");
  if (v < lo || v > hi) fail(key, "value " + n.Scalar() + " outside " + range_text(lo, hi));
  return v;
}

long ScenarioConfig::integer(const std::string& key, long lo, long hi) {
  if (!has(key)) fail(key, "required field is missing");
  return integer(key, 0, lo, hi);
}

long ScenarioConfig::integer(const std::string& key, long fallback, long lo, long hi) {
  const YAML::Node n = node(key);
  if (!n) return fallback;
  bool ok;
  const long v = scalar_as<long>(n, ok);
  if (!ok) fail(key, "expected an integer");
  if (v < lo || v > hi) fail(key, "value " + n.Scalar() + " outside " + range_text(lo, hi));
  return v;
}

bool ScenarioConfig::flag(const std::string& key, bool fallback) {
  const YAML::Node n = node(key);
  if (!n) return fallback;
  bool ok;
  const bool v = scalar_as<bool>(n, ok);
  if (!ok) fail(key, "expected true or false");
  return v;
}

std::string ScenarioConfig::choice(const std::string& key, const std::string& fallback,
                                   const std::vector<std::string>& allowed) {
  const YAML::Node n = node(key);
  if (!n) return fallback;
  if (!n.IsScalar()) fail(key, "expected a string");
  const std::string v = n.Scalar();
  for (const auto& a : allowed)
    if (a == v) return v;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  fail(key, "'" + v + "' is not one of {" + list + "}");
}

std::vector<double> ScenarioConfig::real_grid(const std::string& key, double lo, double hi,
                                              const std::vector<double>& fallback) {
  std::vector<double> out;
  if (has(key)) {
    const YAML::Node n = node(key);
    if (n.IsScalar()) {
      out.push_back(real(key, lo, hi));
      return out;
    }
    if (!n.IsSequence() || n.size() == 0) fail(key, "expected a number or a non-empty list");
    for (const auto& e : n) {
      bool ok;
      const double v = scalar_as<double>(e, ok);
      if (!ok || !std::isfinite(v)) fail(key, "list entries must be finite numbers");
      if (v < lo || v > hi) fail(key, "entry " + e.Scalar() + " outside " + range_text(lo, hi));
      out.push_back(v);
    }
    return out;
  }
  const std::string kmin = key + "_min", kmax = key + "_max", kn = key + "_points";
  if (has(kmin) || has(kmax) || has(kn)) {
    const double a = real(kmin, lo, hi);
    const double b = real(kmax, lo, hi);
    const long n = integer(kn, 1, 1000000);
    if (b < a) fail(kmax, "must not be below " + kmin);
    if (n == 1) return {a};
    for (long i = 0; i < n; ++i) out.push_back(a + (b - a) * static_cast<double>(i) / (n - 1));
    return out;
  }
  if (fallback.empty()) fail(key, "required grid is missing (give " + key + " or " + kmin + "/" +
                                      kmax + "/" + kn + ")");
  return fallback;
}

std::vector<long> ScenarioConfig::int_grid(const std::string& key, long lo, long hi,
                                           const std::vector<long>& fallback) {
  std::vector<long> out;
  if (has(key)) {
    const YAML::Node n = node(key);
    if (n.IsScalar()) return {integer(key, lo, hi)};
    if (!n.IsSequence() || n.size() == 0) fail(key, "expected an integer or a non-empty list");
    for (const auto& e : n) {
      bool ok;
      const long v = scalar_as<long>(e, ok);
      if (!ok) fail(key, "list entries must be integers");
      if (v < lo || v > hi) fail(key, "entry " + e.Scalar() + " outside " + range_text(lo, hi));
      out.push_back(v);
    }
    return out;
  }
  const std::string kmin = key + "_min", kmax = key + "_max";
  if (has(kmin) || has(kmax)) {
    const long a = integer(kmin, lo, hi);
    const long b = integer(kmax, lo, hi);
    if (b < a) fail(kmax, "must not be below " + kmin);
    for (long v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  if (fallback.empty()) fail(key, "required list is missing (give " + key + " or " + kmin + "/" + kmax + ")");
  return fallback;
}

void ScenarioConfig::reject_unused() const {
  for (const auto& kv : root_) {
    const std::string k = kv.first.as<std::string>();
    if (!used_.count(k)) {
      std::ostringstream os;
      os << origin_ << ":" << kv.first.Mark().line + 1 << ": unknown field '" << k
         << "' for this scenario";
      throw ConfigError(os.str());
    }
  }
}

}  // namespace rtnb::cli
