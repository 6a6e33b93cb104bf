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

#include "qdca/cli/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qdca/cli/output.hpp"
#include "qdca/errors.hpp"

namespace qdca::cli {

namespace {

// A flag that, when given, overrides one config key.
struct Override {
  std::string section;
  std::string key;
  std::string value;
};

class OverrideSet {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& section, const std::string& key,
           const std::string& help) {
    items_.push_back(std::make_unique<Override>(Override{section, key, {}}));
    app->add_option(flag, items_.back()->value, help);
  }
  void apply(RunConfig& cfg) const {
    for (const auto& o : items_) {
      if (!o->value.empty()) cfg.set(o->section, o->key, o->value);
    }
  }

 private:
  std::vector<std::unique_ptr<Override>> items_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square quantum dot singlet-triplet qubit simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string seed;
  std::string out_dir;
  int jobs = 1;
  app.add_option("--config", config_path, "Config file (default: $QDOT_CONFIG)");
  app.add_option("--seed", seed, "Seed overriding the config value");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);

  OverrideSet overrides;

  CLI::App* materials = app.add_subcommand("materials", "Material constants and unit conversions");
  overrides.add(materials, "--m-star", "material", "m_star", "Effective mass ratio");
  overrides.add(materials, "--eps-r", "material", "eps_r", "Relative permittivity");
  overrides.add(materials, "--Delta0", "effective", "Delta0", "Energy to convert to a temperature (ueV)");

  CLI::App* solve = app.add_subcommand("solve", "Exact two-electron spectrum");
  std::string density_state;
  overrides.add(solve, "--L", "solver", "L_nm", "Dot size (nm)");
  overrides.add(solve, "--n-max", "solver", "n_max", "Modes per axis");
  overrides.add(solve, "--quadrature-order", "solver", "quadrature_order", "Coulomb quadrature order");
  overrides.add(solve, "--k", "solver", "k_levels", "Levels per sector");
  overrides.add(solve, "--Vs", "solver", "V_over_Delta0", "Gate potentials in units of Delta0");
  solve->add_option("--density", density_state, "Write density.csv for S1, S2, S_vert, S_horz, T_vert or T_horz");

  CLI::App* eff = app.add_subcommand("effective", "Reduced-model levels, mixing angle and exchange");
  overrides.add(eff, "--from-solver", "effective", "from_solver", "Extract parameters from the exact solver");
  overrides.add(eff, "--Delta0", "effective", "Delta0", "Delta0 (ueV)");
  overrides.add(eff, "--E0S", "effective", "E0S", "E0S (ueV)");
  overrides.add(eff, "--E0T", "effective", "E0T", "E0T (ueV)");
  overrides.add(eff, "--p-S", "effective", "p_S", "p_S");
  overrides.add(eff, "--p-T", "effective", "p_T", "p_T");
  overrides.add(eff, "--Vs", "effective", "V_over_Delta0", "Gate potentials in units of Delta0");
  overrides.add(eff, "--L", "solver", "L_nm", "Dot size (nm) when extracting");
  overrides.add(eff, "--n-max", "solver", "n_max", "Modes per axis when extracting");

  CLI::App* filter = app.add_subcommand("filter", "Exact singlet-triplet filtering dynamics");
  FilterRequest freq;
  filter->add_option("--initial", freq.initial, "s_vertical, s_horizontal, t_vertical, t_horizontal or prepared");
  filter->add_option("--schedule", freq.schedule, "Segments V_over_Delta0:t_over_tR, comma separated");
  overrides.add(filter, "--L", "solver", "L_nm", "Dot size (nm)");
  overrides.add(filter, "--n-max", "solver", "n_max", "Modes per axis");
  overrides.add(filter, "--cutoff", "solver", "spectrum_cutoff", "Initial eigenstates kept per block");

  CLI::App* gate = app.add_subcommand("gate", "Capacitive two-qubit gate");
  overrides.add(gate, "--L", "gate", "L_nm", "Dot size (nm)");
  overrides.add(gate, "--d", "gate", "d_nm", "Dot spacing (nm)");
  overrides.add(gate, "--u0", "gate", "u0", "u0 override (ueV)");
  overrides.add(gate, "--u1", "gate", "u1", "u1 override (ueV)");
  overrides.add(gate, "--V-freeze", "gate", "V_freeze_over_Delta0", "Hold potential in units of Delta0");
  overrides.add(gate, "--freeze-mode", "gate", "freeze_mode", "frozen or full");
  overrides.add(gate, "--samples", "gate", "samples_per_segment", "Trajectory samples per segment");
  overrides.add(gate, "--Delta0", "effective", "Delta0", "Delta0 (ueV)");
  overrides.add(gate, "--p-S", "effective", "p_S", "p_S");
  overrides.add(gate, "--p-T", "effective", "p_T", "p_T");
  overrides.add(gate, "--from-solver", "effective", "from_solver", "Extract Delta0, p_S, p_T from the exact solver");

  CLI::App* clus = app.add_subcommand("cluster", "Cluster state on a small qubit array");
  overrides.add(clus, "--rows", "cluster", "rows", "Rows");
  overrides.add(clus, "--cols", "cluster", "cols", "Columns");
  overrides.add(clus, "--u0-row", "cluster", "u0_row", "Row-bond u0 (ueV)");
  overrides.add(clus, "--u1-row", "cluster", "u1_row", "Row-bond u1 (ueV)");
  overrides.add(clus, "--u0-col", "cluster", "u0_col", "Column-bond u0 (ueV)");
  overrides.add(clus, "--u1-col", "cluster", "u1_col", "Column-bond u1 (ueV)");

  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep over one config key");
  overrides.add(sweep, "--target", "sweep", "target", "effective, gate, solve or cluster");
  overrides.add(sweep, "--param", "sweep", "parameter", "Key of the target's config section");
  overrides.add(sweep, "--values", "sweep", "values", "List, a,b,...,z or start:step:stop");

  CLI::App* repro = app.add_subcommand("reproduce", "Canned figure reproductions");
  std::string figure;
  repro->add_option("figure", figure, "fig2a, fig2b, fig3, fig4a, fig4b or fig4c")->required();
  overrides.add(repro, "--n-max", "solver", "n_max", "Modes per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Context ctx;
    if (config_path.empty()) {
      if (const char* env = std::getenv("QDOT_CONFIG"); env && *env) config_path = env;
    }
    if (!config_path.empty()) ctx.cfg = RunConfig::load(config_path);
    overrides.apply(ctx.cfg);
    if (!seed.empty()) ctx.cfg.set("", "seed", seed);
    if (!out_dir.empty()) ctx.cfg.set("", "output_dir", out_dir);
    ctx.jobs = jobs;
    ctx.log = &err;

    // Validate shared sections before any computation.
    material_from(ctx.cfg);
    ctx.cfg.seed();

    Artifacts arts;
    if (app.got_subcommand(materials)) arts = cmd_materials(ctx);
    else if (app.got_subcommand(solve)) arts = cmd_solve(ctx, density_state);
    else if (app.got_subcommand(eff)) arts = cmd_effective(ctx);
    else if (app.got_subcommand(filter)) arts = cmd_filter(ctx, freq);
    else if (app.got_subcommand(gate)) arts = cmd_gate(ctx);
    else if (app.got_subcommand(clus)) arts = cmd_cluster(ctx);
    else if (app.got_subcommand(sweep)) arts = cmd_sweep(ctx);
    else arts = cmd_reproduce(ctx, figure);

    const std::filesystem::path dir = ctx.cfg.output_dir();
    for (const auto& [name, content] : arts.files) {
      atomic_write(dir / name, content);
      out << (dir / name).string() << '\n';
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "not converged: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qdca::cli
