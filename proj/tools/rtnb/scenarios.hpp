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

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace rtnb::cli {

struct RunOptions {
  unsigned workers = 1;
  std::uint64_t seed = 1;
};

const std::vector<std::string>& scenario_names();

/// Dispatches on `scenario`, reads its fields from cfg and rejects unknown
/// ones. Library errors propagate unchanged.
ResultTable run_scenario(const std::string& scenario, ScenarioConfig& cfg, const RunOptions& opts);

}  // namespace rtnb::cli
