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

#include "qdca/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qdca::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number '" + std::string(s) + "' for " + std::string(what));
  }
  return v;
}

long long to_int(std::string_view s, std::string_view what) {
  s = trim(s);
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("invalid integer '" + std::string(s) + "' for " + std::string(what));
  }
  return v;
}

bool to_bool(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("invalid boolean '" + std::string(s) + "' for " + std::string(what));
}

std::string label(const std::string& section, const std::string& key) {
  return section.empty() ? key : "[" + section + "] " + key;
}

}  // namespace

const Schema& config_schema() {
  using T = ValueType;
  static const Schema schema = {
      {"", {{"seed", T::kInt}, {"output_dir", T::kString}}},
      {"material", {{"m_star", T::kDouble}, {"eps_r", T::kDouble}, {"g_factor", T::kDouble}}},
      {"solver",
       {{"L_nm", T::kDouble},
        {"n_max", T::kInt},
        {"quadrature_order", T::kInt},
        {"k_levels", T::kInt},
        {"spectrum_cutoff", T::kInt},
        {"dense_threshold", T::kInt},
        {"eigen_tol", T::kDouble},
        {"V_over_Delta0", T::kList},
        {"density_points", T::kInt}}},
      {"effective",
       {{"from_solver", T::kBool},
        {"Delta0", T::kDouble},
        {"E0S", T::kDouble},
        {"E0T", T::kDouble},
        {"p_S", T::kDouble},
        {"p_T", T::kDouble},
        {"V_over_Delta0", T::kList}}},
      {"gate",
       {{"L_nm", T::kDouble},
        {"d_nm", T::kDouble},
        {"u0", T::kDouble},
        {"u1", T::kDouble},
        {"V_freeze_over_Delta0", T::kDouble},
        {"freeze_mode", T::kString},
        {"samples_per_segment", T::kInt}}},
      {"cluster",
       {{"rows", T::kInt},
        {"cols", T::kInt},
        {"u0_row", T::kDouble},
        {"u1_row", T::kDouble},
        {"u0_col", T::kDouble},
        {"u1_col", T::kDouble}}},
      {"sweep", {{"target", T::kString}, {"parameter", T::kString}, {"values", T::kList}}},
  };
  return schema;
}

std::vector<double> parse_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    for (;;) {
      const auto pos = text.find(':', start);
      parts.push_back(to_double(text.substr(start, pos - start), "range"));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (parts.size() != 3) throw ConfigError("range must be start:step:stop, got '" + std::string(text) + "'");
    const double a = parts[0], step = parts[1], b = parts[2];
    if (step == 0.0 || (b - a) / step < 0.0) throw ConfigError("range step does not reach the stop value");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::vector<std::string_view> items;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    items.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == "...") {
      if (out.size() < 2 || i + 1 != items.size() - 1) {
        throw ConfigError("'...' needs two leading values and one final value");
      }
      const double step = out[out.size() - 1] - out[out.size() - 2];
      const double first = out[out.size() - 2];
      const double last = to_double(items.back(), "list");
      if (step == 0.0 || (last - first) / step < 0.0) throw ConfigError("'...' progression does not reach its end");
      const auto n = static_cast<long long>(std::llround((last - first) / step));
      out.resize(out.size() - 2);
      for (long long k = 0; k <= n; ++k) out.push_back(first + static_cast<double>(k) * step);
      return out;
    }
    if (items[i].empty()) throw ConfigError("empty entry in list '" + std::string(text) + "'");
    out.push_back(to_double(items[i], "list"));
  }
  return out;
}

RunConfig RunConfig::parse(std::string_view text, std::string_view origin) {
  RunConfig cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view l = line;
    if (const auto c = l.find_first_of("#;"); c != std::string_view::npos) l = l.substr(0, c);
    l = trim(l);
    if (l.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    if (l.front() == '[') {
      if (l.back() != ']') throw ConfigError(where + "malformed section header");
      section = std::string(trim(l.substr(1, l.size() - 2)));
      if (!config_schema().contains(section) || section.empty()) {
        throw ConfigError(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const std::string key(trim(l.substr(0, eq)));
    try {
      cfg.set(section, key, std::string(trim(l.substr(eq + 1))));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.string());
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  const auto sec = config_schema().find(section);
  if (sec == config_schema().end()) throw ConfigError("unknown section [" + section + "]");
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) throw ConfigError("unknown key " + label(section, key));
  const std::string what = label(section, key);
  switch (it->second) {
    case ValueType::kDouble:
      to_double(value, what);
      break;
    case ValueType::kInt:
      to_int(value, what);
      break;
    case ValueType::kBool:
      to_bool(value, what);
      break;
    case ValueType::kList:
      if (parse_list(value).empty()) throw ConfigError("empty list for " + what);
      break;
    case ValueType::kString:
      break;
  }
  values_[section][key] = value;
}

const std::string* RunConfig::raw(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  if (s == values_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

bool RunConfig::has(const std::string& section, const std::string& key) const { return raw(section, key) != nullptr; }

double RunConfig::get_double(const std::string& section, const std::string& key, double fallback) const {
  const std::string* v = raw(section, key);
  return v ? to_double(*v, label(section, key)) : fallback;
}

int RunConfig::get_int(const std::string& section, const std::string& key, int fallback) const {
  const std::string* v = raw(section, key);
  return v ? static_cast<int>(to_int(*v, label(section, key))) : fallback;
}

bool RunConfig::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  const std::string* v = raw(section, key);
  return v ? to_bool(*v, label(section, key)) : fallback;
}

std::string RunConfig::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  const std::string* v = raw(section, key);
  return v ? *v : fallback;
}

std::vector<double> RunConfig::get_list(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback) const {
  const std::string* v = raw(section, key);
  return v ? parse_list(*v) : fallback;
}

std::uint64_t RunConfig::seed() const {
  const std::string* v = raw("", "seed");
  return v ? static_cast<std::uint64_t>(to_int(*v, "seed")) : 20140613u;
}

std::filesystem::path RunConfig::output_dir() const { return get_string("", "output_dir", "."); }

MaterialParams material_from(const RunConfig& cfg) {
  MaterialParams m;
  m.m_star = cfg.get_double("material", "m_star", m.m_star);
  m.eps_r = cfg.get_double("material", "eps_r", m.eps_r);
  m.g_factor = cfg.get_double("material", "g_factor", m.g_factor);
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[material] ") + e.what());
  }
  return m;
}

exact::SolverConfig solver_from(const RunConfig& cfg) {
  exact::SolverConfig s;
  s.length_nm = cfg.get_double("solver", "L_nm", s.length_nm);
  s.n_max = cfg.get_int("solver", "n_max", s.n_max);
  s.quadrature_order = cfg.get_int("solver", "quadrature_order", s.quadrature_order);
  s.k_levels = cfg.get_int("solver", "k_levels", s.k_levels);
  s.spectrum_cutoff = cfg.get_int("solver", "spectrum_cutoff", s.spectrum_cutoff);
  s.eigen.dense_threshold = cfg.get_int("solver", "dense_threshold", s.eigen.dense_threshold);
  s.eigen.rel_tol = cfg.get_double("solver", "eigen_tol", s.eigen.rel_tol);
  s.eigen.seed = static_cast<unsigned>(cfg.seed() & 0xffffffffu);
  if (!(s.length_nm > 0.0)) throw ConfigError("[solver] L_nm must be positive");
  if (s.n_max < 2) throw ConfigError("[solver] n_max must be at least 2");
  if (s.quadrature_order < 16) throw ConfigError("[solver] quadrature_order must be at least 16");
  if (s.k_levels < 1) throw ConfigError("[solver] k_levels must be positive");
  if (s.spectrum_cutoff < 1) throw ConfigError("[solver] spectrum_cutoff must be positive");
  if (!(s.eigen.rel_tol > 0.0)) throw ConfigError("[solver] eigen_tol must be positive");
  return s;
}

EffectiveParams effective_literals(const RunConfig& cfg) {
  EffectiveParams e;
  e.delta0 = cfg.get_double("effective", "Delta0", e.delta0);
  e.e0s = cfg.get_double("effective", "E0S", e.e0s);
  e.e0t = cfg.get_double("effective", "E0T", e.e0t);
  e.p_s = cfg.get_double("effective", "p_S", e.p_s);
  e.p_t = cfg.get_double("effective", "p_T", e.p_t);
  try {
    e.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("[effective] ") + ex.what());
  }
  return e;
}

}  // namespace qdca::cli
