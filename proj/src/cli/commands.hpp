// Copyright 2026 The qdca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qdca/cli/config.hpp"

namespace qdca::cli {

/// Files produced by a command, written only after the command succeeds.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
};

struct Context {
  RunConfig cfg;
  int jobs = 1;
  std::ostream* log = nullptr;
};

struct FilterRequest {
  std::string initial = "s_vertical";
  std::string schedule = "0:4";  // V/Delta0 : duration/t_R pairs
};

Artifacts cmd_materials(const Context& ctx);
Artifacts cmd_solve(const Context& ctx, const std::string& density_state);
Artifacts cmd_effective(const Context& ctx);
Artifacts cmd_filter(const Context& ctx, const FilterRequest& req);
Artifacts cmd_gate(const Context& ctx);
Artifacts cmd_cluster(const Context& ctx);
Artifacts cmd_sweep(const Context& ctx);
Artifacts cmd_reproduce(const Context& ctx, const std::string& figure);

/// Scalar outputs of a sweep target; names are fixed per target.
std::vector<std::string> target_columns(const std::string& target);
std::vector<double> target_scalars(const std::string& target, const RunConfig& cfg);

}  // namespace qdca::cli
