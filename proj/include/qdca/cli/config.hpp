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

/// Run configuration: `[section]` headers followed by `key = value` lines.
/// Keys before the first header belong to the run itself (seed, output_dir).
/// `#` and `;` start comments. Every key is checked against a fixed schema.

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdca/cluster/array.hpp"
#include "qdca/effective_params.hpp"
#include "qdca/exact/solver.hpp"
#include "qdca/gate/engine.hpp"
#include "qdca/units.hpp"

namespace qdca::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { kDouble, kInt, kBool, kString, kList };

using Schema = std::map<std::string, std::map<std::string, ValueType>>;

/// Sections and keys accepted in a config file. The run section has the empty name.
const Schema& config_schema();

/// Parses "a,b,c", "a,b,...,z" (arithmetic progression) or "start:step:stop".
std::vector<double> parse_list(std::string_view text);

class RunConfig {
 public:
  static RunConfig parse(std::string_view text, std::string_view origin = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  /// Sets one value after checking section, key and type.
  void set(const std::string& section, const std::string& key, const std::string& value);
  bool has(const std::string& section, const std::string& key) const;

  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;

  std::uint64_t seed() const;
  std::filesystem::path output_dir() const;

 private:
  const std::string* raw(const std::string& section, const std::string& key) const;
  std::map<std::string, std::map<std::string, std::string>> values_;
};

MaterialParams material_from(const RunConfig& cfg);
exact::SolverConfig solver_from(const RunConfig& cfg);
/// Literal effective parameters from [effective]; defaults are the reference dot.
EffectiveParams effective_literals(const RunConfig& cfg);

}  // namespace qdca::cli
