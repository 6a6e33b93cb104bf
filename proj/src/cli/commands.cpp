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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <thread>

#include "qdca/cli/output.hpp"
#include "qdca/cluster/array.hpp"
#include "qdca/effective/model.hpp"
#include "qdca/exact/solver.hpp"
#include "qdca/gate/engine.hpp"

namespace qdca::cli {

namespace {

using nlohmann::json;
using cplx = std::complex<double>;
const auto& fmt = format_double;

const std::vector<double> kDefaultGrid = parse_list("-3:0.25:3");

void note(const Context& ctx, const std::string& msg) {
  if (ctx.log) *ctx.log << msg << '\n';
}

struct SolvedDot {
  std::unique_ptr<exact::TwoElectronSolver> solver;
  exact::EffectiveExtraction ex;
};

SolvedDot solve_dot(const RunConfig& cfg) {
  SolvedDot d;
  d.solver = std::make_unique<exact::TwoElectronSolver>(solver_from(cfg), material_from(cfg));
  d.ex = exact::extract_effective(*d.solver);
  return d;
}

EffectiveParams resolve_effective(const RunConfig& cfg) {
  if (cfg.get_bool("effective", "from_solver", false)) return solve_dot(cfg).ex.params;
  return effective_literals(cfg);
}

json effective_json(const EffectiveParams& p) {
  return {{"Delta0_ueV", p.delta0}, {"E0S_ueV", p.e0s}, {"E0T_ueV", p.e0t},
          {"p_S", p.p_s},           {"p_T", p.p_t},     {"a_S", p.a_s}};
}

std::vector<std::string> effective_row(const EffectiveParams& eff, double v) {
  const effective::SingletLevels s = effective::singlet_spectrum(eff, v);
  const effective::TripletLevels t = effective::triplet_energies(eff, v);
  return {fmt(v),        fmt(s.e_s1), fmt(s.e_s2), fmt(t.e_vert), fmt(t.e_horz), fmt(effective::mixing_angle(eff, v)),
          fmt(effective::exchange_J(eff, v))};
}

const std::vector<std::string> kEffectiveHeader = {"V_ueV", "E_S1", "E_S2", "E_Tv", "E_Th", "theta_rad", "J_ueV"};
const std::vector<std::string> kFilterHeader = {"t_ns", "P_ac", "P_bd", "norm"};
const std::vector<std::string> kSpectrumHeader = {"V_ueV", "sector", "level", "energy_ueV"};

std::string density_csv(const exact::DensityGrid& g) {
  CsvTable t({"x_nm", "y_nm", "rho_per_nm2"});
  for (int i = 0; i < g.points; ++i) {
    for (int j = 0; j < g.points; ++j) t.add_row({fmt(g.x(i)), fmt(g.x(j)), fmt(g.rho(i, j))});
  }
  return t.str();
}

std::string trajectory_csv(const exact::Trajectory& tr) {
  CsvTable t(kFilterHeader);
  for (const auto& p : tr.points) t.add_row({fmt(p.t_ns), fmt(p.p_ac), fmt(p.p_bd), fmt(p.norm)});
  return t.str();
}

void add_spectrum_rows(CsvTable& t, const exact::TwoElectronSolver& s, double v, int k) {
  for (exact::SpinSector sec : {exact::SpinSector::kSinglet, exact::SpinSector::kTriplet}) {
    const exact::SpectrumResult r = s.spectrum(sec, v, k);
    for (int i = 0; i < r.size(); ++i) t.add_row({fmt(v), exact::to_string(sec), std::to_string(i), fmt(r.energies(i))});
  }
}

json solver_summary(const RunConfig& cfg, const SolvedDot& d) {
  const exact::SolverConfig sc = solver_from(cfg);
  json j = effective_json(d.ex.params);
  j["L_nm"] = sc.length_nm;
  j["n_max"] = sc.n_max;
  j["quadrature_order"] = sc.quadrature_order;
  j["tensor_convergence_change"] = d.solver->tensor().convergence_change();
  j["triplet_split_ueV"] = d.ex.triplet_split;
  j["E0T_minus_E0S_ueV"] = d.ex.params.e0t - d.ex.params.e0s;
  j["warnings"] = d.ex.warnings;
  return j;
}

struct NamedState {
  exact::SpinSector sector;
  Eigen::VectorXd vec;
};

NamedState named_state(const SolvedDot& d, const std::string& name) {
  using exact::SpinSector;
  if (name == "S1") return {SpinSector::kSinglet, d.ex.singlets.vectors.col(0)};
  if (name == "S2") return {SpinSector::kSinglet, d.ex.singlets.vectors.col(1)};
  if (name == "S_vert" || name == "s_vertical") return {SpinSector::kSinglet, d.ex.states.s_vertical};
  if (name == "S_horz" || name == "s_horizontal") return {SpinSector::kSinglet, d.ex.states.s_horizontal};
  if (name == "T_vert" || name == "t_vertical") return {SpinSector::kTriplet, d.ex.states.t_vertical};
  if (name == "T_horz" || name == "t_horizontal") return {SpinSector::kTriplet, d.ex.states.t_horizontal};
  if (name == "prepared") {
    const exact::SpectrumResult g = d.solver->spectrum(SpinSector::kSinglet, 3.0 * d.ex.params.delta0, 1);
    return {SpinSector::kSinglet, g.vectors.col(0)};
  }
  throw ConfigError("unknown state '" + name +
                    "' (expected S1, S2, S_vert, S_horz, T_vert, T_horz, s_vertical, t_vertical, prepared)");
}

std::vector<exact::Segment> parse_schedule(const std::string& text, double delta0) {
  const double t_r = constants::kPi * constants::kHbar / (2.0 * delta0);
  std::vector<exact::Segment> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const std::string item = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("schedule entry '" + item + "' must be V_over_Delta0:t_over_tR");
    const std::vector<double> v = parse_list(item.substr(0, colon));
    const std::vector<double> t = parse_list(item.substr(colon + 1));
    if (v.size() != 1 || t.size() != 1 || !(t[0] > 0.0)) throw ConfigError("bad schedule entry '" + item + "'");
    out.push_back({v[0] * delta0, t[0] * t_r});
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) throw ConfigError("empty schedule");
  return out;
}

// ---- gate -------------------------------------------------------------------

struct GateRun {
  EffectiveParams eff;
  gate::CouplingParams coupling;
  gate::GateSchedule schedule;
  gate::FreezeMode mode = gate::FreezeMode::kConfigurationFrozen;
  gate::Matrix16c ideal;
  gate::CzCorrection cz;
  double concurrence = 0.0;
  double fidelity = 0.0;
  int samples = 50;
};

gate::FreezeMode parse_mode(const std::string& s) {
  if (s == "frozen") return gate::FreezeMode::kConfigurationFrozen;
  if (s == "full") return gate::FreezeMode::kFullHamiltonian;
  throw ConfigError("[gate] freeze_mode must be 'frozen' or 'full', got '" + s + "'");
}

GateRun run_gate(const RunConfig& cfg) {
  GateRun g;
  g.mode = parse_mode(cfg.get_string("gate", "freeze_mode", "frozen"));
  g.samples = cfg.get_int("gate", "samples_per_segment", 50);
  if (g.samples < 1) throw ConfigError("[gate] samples_per_segment must be positive");
  const MaterialParams mat = material_from(cfg);
  const double length = cfg.get_double("gate", "L_nm", 400.0);
  const double d = cfg.get_double("gate", "d_nm", 3600.0);
  if (!(d > length) || !(length > 0.0)) throw ConfigError("[gate] need 0 < L_nm < d_nm");
  g.eff = resolve_effective(cfg);
  g.coupling = gate::coupling_energies(length, d, mat);
  g.coupling.u0 = cfg.get_double("gate", "u0", g.coupling.u0);
  g.coupling.u1 = cfg.get_double("gate", "u1", g.coupling.u1);
  if (!(g.coupling.u0 + g.coupling.u1 > 0.0)) throw ConfigError("[gate] u0 + u1 must be positive");
  const double vf = cfg.get_double("gate", "V_freeze_over_Delta0", -3.0) * g.eff.delta0;
  g.schedule = gate::make_schedule(g.eff, gate::entangling_time(g.coupling), vf);
  g.ideal = gate::gate_unitary(g.eff, g.coupling, g.schedule.t_i);
  g.cz = gate::cz_correction(g.ideal);
  g.concurrence = gate::concurrence(gate::Vector16c(g.ideal * gate::plus_plus())).value;
  g.fidelity = gate::gate_fidelity(g.ideal, gate::full_unitary(g.eff, g.coupling, g.schedule, g.mode));
  return g;
}

// ---- cluster ----------------------------------------------------------------

struct ClusterRun {
  cluster::QubitArray array;
  cluster::StabilizerReport stabilizers;
  cluster::AsymmetryReport asym;
  double fidelity = 0.0;
  double order_difference = 0.0;
};

ClusterRun run_cluster(const RunConfig& cfg) {
  const int rows = cfg.get_int("cluster", "rows", 2);
  const int cols = cfg.get_int("cluster", "cols", 3);
  if (rows < 1 || cols < 1 || rows * cols > cluster::kMaxQubits) {
    throw ConfigError("[cluster] rows * cols must lie in [1, " + std::to_string(cluster::kMaxQubits) + "]");
  }
  const gate::CouplingParams rc{cfg.get_double("cluster", "u0_row", 3.0), cfg.get_double("cluster", "u1_row", 1.0),
                                0.0, 0.0};
  const gate::CouplingParams cc{cfg.get_double("cluster", "u0_col", 1.0), cfg.get_double("cluster", "u1_col", 1.0),
                                0.0, 0.0};
  if (!(rc.u0 + rc.u1 > 0.0) || !(cc.u0 + cc.u1 > 0.0)) throw ConfigError("[cluster] u0 + u1 must be positive");
  ClusterRun r;
  r.array = cluster::build_cluster(rows, cols, rc, cc, cluster::GateOrder::kRowsFirst);
  const cluster::QubitArray other = cluster::build_cluster(rows, cols, rc, cc, cluster::GateOrder::kColumnsFirst);
  r.order_difference = (r.array.state - other.state).norm();
  r.stabilizers = cluster::stabilizer_report(r.array);
  r.fidelity = cluster::cluster_fidelity(r.array);
  r.asym = cluster::asymmetric_gate_check(rc, cc);
  return r;
}

json bond_json(const cluster::BondGate& b) {
  return {{"u0_ueV", b.coupling.u0},
          {"u1_ueV", b.coupling.u1},
          {"t_I_ns", b.t_i},
          {"phases_rad", b.phases},
          {"z_left_rad", b.correction.z_left},
          {"z_right_rad", b.correction.z_right},
          {"global_rad", b.correction.global},
          {"phase_invariant_rad", b.correction.invariant}};
}

// ---- sweep ------------------------------------------------------------------

const std::map<std::string, std::string>& target_sections() {
  static const std::map<std::string, std::string> m = {
      {"effective", "effective"}, {"gate", "gate"}, {"solve", "solver"}, {"cluster", "cluster"}};
  return m;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::vector<std::string> target_columns(const std::string& target) {
  if (target == "effective") return kEffectiveHeader;
  if (target == "gate") return {"u0_ueV", "u1_ueV", "t_R_ns", "t_I_ns", "total_gate_time_ns", "concurrence",
                                "fidelity_vs_exact"};
  if (target == "solve") return {"Delta0_ueV", "E0S_ueV", "E0T_ueV", "p_S", "p_T"};
  if (target == "cluster") return {"fidelity", "min_stabilizer", "max_stabilizer"};
  throw ConfigError("unknown sweep target '" + target + "' (expected effective, gate, solve or cluster)");
}

std::vector<double> target_scalars(const std::string& target, const RunConfig& cfg) {
  if (target == "effective") {
    const EffectiveParams eff = resolve_effective(cfg);
    const std::vector<double> vs = cfg.get_list("effective", "V_over_Delta0", kDefaultGrid);
    if (vs.size() != 1) throw std::runtime_error("effective target needs exactly one V value per point");
    const double v = vs[0] * eff.delta0;
    const effective::SingletLevels s = effective::singlet_spectrum(eff, v);
    const effective::TripletLevels t = effective::triplet_energies(eff, v);
    return {v, s.e_s1, s.e_s2, t.e_vert, t.e_horz, effective::mixing_angle(eff, v), effective::exchange_J(eff, v)};
  }
  if (target == "gate") {
    const GateRun g = run_gate(cfg);
    return {g.coupling.u0, g.coupling.u1,   g.schedule.t_r, g.schedule.t_i, 2.0 * g.schedule.t_r + g.schedule.t_i,
            g.concurrence, g.fidelity};
  }
  if (target == "solve") {
    const SolvedDot d = solve_dot(cfg);
    const EffectiveParams& p = d.ex.params;
    return {p.delta0, p.e0s, p.e0t, p.p_s, p.p_t};
  }
  if (target == "cluster") {
    const ClusterRun r = run_cluster(cfg);
    const auto [lo, hi] = std::minmax_element(r.stabilizers.values.begin(), r.stabilizers.values.end());
    return {r.fidelity, *lo, *hi};
  }
  throw ConfigError("unknown sweep target '" + target + "'");
}

Artifacts cmd_materials(const Context& ctx) {
  const MaterialParams m = material_from(ctx.cfg);
  const EffectiveParams eff = effective_literals(ctx.cfg);
  json j = {{"m_star", m.m_star},
            {"eps_r", m.eps_r},
            {"g_factor", m.g_factor},
            {"bohr_radius_nm", effective_bohr_radius(m)},
            {"kinetic_prefactor_ueV_nm2", kinetic_prefactor(m)},
            {"screened_coulomb_ueV_nm", screened_coulomb(m)},
            {"hbar_ueV_ns", constants::kHbar},
            {"k_B_ueV_per_mK", constants::kBoltzmann},
            {"mu_B_ueV_per_mT", constants::kBohrMagneton},
            {"Delta0_ueV", eff.delta0},
            {"Delta0_temperature_mK", energy_to_temperature(eff.delta0)}};
  Artifacts a;
  a.add("materials.json", json_text(j));
  return a;
}

Artifacts cmd_solve(const Context& ctx, const std::string& density_state) {
  const SolvedDot d = solve_dot(ctx.cfg);
  note(ctx, "Delta0 = " + fmt(d.ex.params.delta0) + " ueV");
  const int k = solver_from(ctx.cfg).k_levels;
  CsvTable t(kSpectrumHeader);
  for (double v : ctx.cfg.get_list("solver", "V_over_Delta0", {0.0})) {
    add_spectrum_rows(t, *d.solver, v * d.ex.params.delta0, k);
  }
  Artifacts a;
  a.add("spectrum.csv", t.str());
  a.add("solve_summary.json", json_text(solver_summary(ctx.cfg, d)));
  if (!density_state.empty()) {
    const NamedState s = named_state(d, density_state);
    const int pts = ctx.cfg.get_int("solver", "density_points", 81);
    if (pts < 2) throw ConfigError("[solver] density_points must be at least 2");
    a.add("density.csv", density_csv(d.solver->charge_density(s.sector, s.vec, pts)));
  }
  return a;
}

Artifacts cmd_effective(const Context& ctx) {
  const EffectiveParams eff = resolve_effective(ctx.cfg);
  CsvTable t(kEffectiveHeader);
  for (double v : ctx.cfg.get_list("effective", "V_over_Delta0", kDefaultGrid)) t.add_row(effective_row(eff, v * eff.delta0));
  json j = effective_json(eff);
  j["t_R_ns"] = effective::conversion_time(eff);
  Artifacts a;
  a.add("effective.csv", t.str());
  a.add("effective_params.json", json_text(j));
  return a;
}

Artifacts cmd_filter(const Context& ctx, const FilterRequest& req) {
  const SolvedDot d = solve_dot(ctx.cfg);
  const NamedState s = named_state(d, req.initial);
  const std::vector<exact::Segment> sched = parse_schedule(req.schedule, d.ex.params.delta0);
  exact::EvolutionOptions opts;
  opts.spectrum_cutoff = solver_from(ctx.cfg).spectrum_cutoff;
  const exact::Trajectory tr =
      exact::evolve_piecewise(*d.solver, s.sector, s.vec.cast<cplx>(), sched, opts);
  json j = effective_json(d.ex.params);
  j["initial"] = req.initial;
  j["schedule"] = req.schedule;
  j["t_R_ns"] = effective::conversion_time(d.ex.params);
  j["discarded_weight"] = tr.discarded_weight;
  j["max_states_used"] = tr.max_states_used;
  j["final_P_ac"] = tr.points.back().p_ac;
  j["final_norm"] = tr.points.back().norm;
  Artifacts a;
  a.add("filter.csv", trajectory_csv(tr));
  a.add("filter_summary.json", json_text(j));
  return a;
}

Artifacts cmd_gate(const Context& ctx) {
  const GateRun g = run_gate(ctx.cfg);
  const std::array<cplx, 4> p = gate::phase_table(g.ideal);
  const char* names[4] = {"SS", "ST", "TS", "TT"};
  json table = json::array();
  for (std::size_t k = 0; k < 4; ++k) {
    table.push_back({{"state", names[k]}, {"re", p[k].real()}, {"im", p[k].imag()}, {"phase_rad", std::arg(p[k])}});
  }
  json j = {{"u0", g.coupling.u0},
            {"u1", g.coupling.u1},
            {"t_R", g.schedule.t_r},
            {"t_I", g.schedule.t_i},
            {"total_gate_time_ns", 2.0 * g.schedule.t_r + g.schedule.t_i},
            {"V_freeze_ueV", g.schedule.v_freeze},
            {"freeze_mode", g.mode == gate::FreezeMode::kFullHamiltonian ? "full" : "frozen"},
            {"phase_table", table},
            {"cz_correction",
             {{"global_rad", g.cz.global},
              {"z_left_rad", g.cz.z_left},
              {"z_right_rad", g.cz.z_right},
              {"phase_invariant_rad", g.cz.invariant},
              {"cz_equivalent", g.cz.cz_equivalent}}},
            {"concurrence", g.concurrence},
            {"fidelity_vs_exact", g.fidelity},
            {"effective", effective_json(g.eff)},
            {"units", {{"energy", "ueV"}, {"time", "ns"}}}};

  gate::DynamicsOptions opts;
  opts.mode = g.mode;
  opts.samples_per_segment = g.samples;
  const gate::GateTrajectory tr = gate::full_dynamics(g.eff, g.coupling, g.schedule, gate::plus_plus(), opts);
  std::vector<std::string> header{"t_ns"};
  for (int i = 0; i < 16; ++i) header.push_back("re_amp_" + std::to_string(i));
  for (int i = 0; i < 16; ++i) header.push_back("im_amp_" + std::to_string(i));
  CsvTable t(header);
  for (std::size_t s = 0; s < tr.t_ns.size(); ++s) {
    std::vector<std::string> row{fmt(tr.t_ns[s])};
    for (int i = 0; i < 16; ++i) row.push_back(fmt(tr.states[s](i).real()));
    for (int i = 0; i < 16; ++i) row.push_back(fmt(tr.states[s](i).imag()));
    t.add_row(std::move(row));
  }
  Artifacts a;
  a.add("gate.json", json_text(j));
  a.add("gate_trajectory.csv", t.str());
  return a;
}

Artifacts cmd_cluster(const Context& ctx) {
  const ClusterRun r = run_cluster(ctx.cfg);
  json j = {{"rows", r.array.rows},
            {"cols", r.array.cols},
            {"fidelity", r.fidelity},
            {"stabilizers", r.stabilizers.values},
            {"gate_order_difference", r.order_difference},
            {"row_gate", bond_json(r.asym.row)},
            {"column_gate", bond_json(r.asym.col)},
            {"identical_gates", r.asym.identical_gates},
            {"identical_corrections", r.asym.identical_corrections},
            {"both_cz_equivalent", r.asym.both_cz_equivalent},
            {"flagged", r.asym.flagged}};
  Artifacts a;
  a.add("cluster.json", json_text(j));
  return a;
}

Artifacts cmd_sweep(const Context& ctx) {
  const std::string target = ctx.cfg.get_string("sweep", "target", "");
  const std::string param = ctx.cfg.get_string("sweep", "parameter", "");
  if (target.empty()) throw ConfigError("[sweep] target is required");
  if (param.empty()) throw ConfigError("[sweep] parameter is required");
  const auto sec = target_sections().find(target);
  if (sec == target_sections().end()) target_columns(target);  // throws with the valid names
  const auto& keys = config_schema().at(sec->second);
  const auto key = keys.find(param);
  if (key == keys.end() || key->second == ValueType::kString || key->second == ValueType::kBool) {
    throw ConfigError("sweep parameter '" + param + "' is not a numeric key of [" + sec->second + "]");
  }
  if (!ctx.cfg.has("sweep", "values")) throw ConfigError("[sweep] values must be a non-empty list");
  const std::vector<double> values = ctx.cfg.get_list("sweep", "values", {});
  if (values.empty()) throw ConfigError("[sweep] values must be a non-empty list");
  const bool integral = key->second == ValueType::kInt;
  for (double v : values) {
    if (integral && v != std::floor(v)) throw ConfigError("sweep parameter '" + param + "' takes integers");
  }

  const std::vector<std::string> cols = target_columns(target);
  std::vector<std::vector<std::string>> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      const std::string text = integral ? std::to_string(static_cast<long long>(values[i])) : fmt(values[i]);
      std::vector<std::string> row{text, "ok"};
      try {
        RunConfig point = ctx.cfg;
        point.set(sec->second, param, text);
        for (double x : target_scalars(target, point)) row.push_back(fmt(x));
      } catch (const std::exception& e) {
        row = {text, sanitize(std::string("error: ") + e.what())};
        row.resize(2 + cols.size());
      }
      rows[i] = std::move(row);
    }
  };
  const int jobs = std::max(1, std::min<int>(ctx.jobs, static_cast<int>(values.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<std::string> header{param, "status"};
  header.insert(header.end(), cols.begin(), cols.end());
  CsvTable t(header);
  for (auto& r : rows) t.add_row(std::move(r));
  Artifacts a;
  a.add("sweep_" + target + "_" + param + ".csv", t.str());
  return a;
}

Artifacts cmd_reproduce(const Context& ctx, const std::string& figure) {
  RunConfig cfg = ctx.cfg;
  Artifacts a;
  if (figure == "fig2a" || figure == "fig2b") {
    cfg.set("solver", "L_nm", figure == "fig2a" ? "400" : "800");
    const SolvedDot d = solve_dot(cfg);
    CsvTable t(kSpectrumHeader);
    for (double v : cfg.get_list("solver", "V_over_Delta0", kDefaultGrid)) add_spectrum_rows(t, *d.solver, v * d.ex.params.delta0, 6);
    a.add(figure + "_spectrum.csv", t.str());
    a.add(figure + "_summary.json", json_text(solver_summary(cfg, d)));
    note(ctx, figure + ": Delta0 = " + fmt(d.ex.params.delta0) + " ueV");
    return a;
  }
  cfg.set("solver", "L_nm", "400");
  if (figure == "fig3") {
    const SolvedDot d = solve_dot(cfg);
    const int pts = cfg.get_int("solver", "density_points", 81);
    json j = solver_summary(cfg, d);
    const std::pair<const char*, const char*> panels[] = {{"a", "S1"}, {"b", "S_vert"}, {"c", "S_horz"}};
    for (const auto& [tag, name] : panels) {
      const NamedState s = named_state(d, name);
      const exact::DensityGrid g = d.solver->charge_density(s.sector, s.vec, pts);
      a.add(std::string("fig3") + tag + "_density.csv", density_csv(g));
      j[std::string("integral_") + name] = g.integral();
      j[std::string("p_bd_") + name] = d.solver->quadrant_probability(s.sector, s.vec, exact::QuadrantSet::kBD);
    }
    a.add("fig3_summary.json", json_text(j));
    return a;
  }
  if (figure == "fig4a") {
    const SolvedDot d = solve_dot(cfg);
    const double d0 = d.ex.params.delta0;
    std::vector<double> gates;
    for (double v : cfg.get_list("solver", "V_over_Delta0", parse_list("-4:0.25:4"))) gates.push_back(v * d0);
    const auto cmp = exact::compare_spectra(*d.solver, d.ex.params, gates);
    CsvTable t({"V_ueV", "V_over_Delta0", "exact_S1", "exact_S2", "exact_T1", "exact_T2", "model_S1", "model_S2",
                "model_T1", "model_T2"});
    double worst = 0.0;
    for (const auto& c : cmp) {
      t.add_row({fmt(c.gate_ueV), fmt(c.gate_ueV / d0), fmt(c.exact_singlet[0]), fmt(c.exact_singlet[1]),
                 fmt(c.exact_triplet[0]), fmt(c.exact_triplet[1]), fmt(c.model_singlet[0]), fmt(c.model_singlet[1]),
                 fmt(c.model_triplet[0]), fmt(c.model_triplet[1])});
      if (std::abs(c.gate_ueV) <= 2.0 * d0 * (1.0 + 1e-12)) worst = std::max(worst, c.max_abs_deviation());
    }
    json j = solver_summary(cfg, d);
    j["max_deviation_within_2Delta0_over_Delta0"] = worst / d0;
    a.add("fig4a_spectra.csv", t.str());
    a.add("fig4a_summary.json", json_text(j));
    return a;
  }
  if (figure == "fig4b") {
    const SolvedDot d = solve_dot(cfg);
    const double d0 = d.ex.params.delta0;
    const double t_r = effective::conversion_time(d.ex.params);
    const NamedState s = named_state(d, "prepared");
    exact::EvolutionOptions opts;
    opts.spectrum_cutoff = solver_from(cfg).spectrum_cutoff;
    const std::vector<exact::Segment> free_run = {{0.0, 5.0 * t_r}};
    const std::vector<exact::Segment> frozen = {{0.0, t_r}, {3.0 * d0, 2.0 * t_r}, {0.0, 2.0 * t_r}};
    const exact::Trajectory a_free = exact::evolve_piecewise(*d.solver, s.sector, s.vec.cast<cplx>(), free_run, opts);
    const exact::Trajectory a_frz = exact::evolve_piecewise(*d.solver, s.sector, s.vec.cast<cplx>(), frozen, opts);
    double lo = 1.0, hi = 0.0;
    for (const auto& p : a_frz.points) {
      if (p.t_ns >= t_r * (1.0 - 1e-12) && p.t_ns <= 3.0 * t_r * (1.0 + 1e-12)) {
        lo = std::min(lo, p.p_ac);
        hi = std::max(hi, p.p_ac);
      }
    }
    json j = effective_json(d.ex.params);
    j["t_R_ns"] = t_r;
    j["hold_start_ns"] = t_r;
    j["hold_end_ns"] = 3.0 * t_r;
    j["hold_V_ueV"] = 3.0 * d0;
    j["hold_P_ac_min"] = lo;
    j["hold_P_ac_max"] = hi;
    j["discarded_weight"] = a_frz.discarded_weight + a_free.discarded_weight;
    a.add("fig4b_free.csv", trajectory_csv(a_free));
    a.add("fig4b_frozen.csv", trajectory_csv(a_frz));
    a.add("fig4b_summary.json", json_text(j));
    return a;
  }
  if (figure == "fig4c") {
    const SolvedDot d = solve_dot(cfg);
    const EffectiveParams& p = d.ex.params;
    CsvTable t({"V_ueV", "V_over_Delta0", "J_exact_ueV", "J_model_ueV", "J_asymptote_ueV"});
    for (double x : cfg.get_list("solver", "V_over_Delta0", kDefaultGrid)) {
      const double v = x * p.delta0;
      const exact::SpectrumResult es = d.solver->spectrum(exact::SpinSector::kSinglet, v, 1);
      const exact::SpectrumResult et = d.solver->spectrum(exact::SpinSector::kTriplet, v, 2);
      const double t_vert = v >= 0.0 ? et.energies(0) : et.energies(1);
      const double asym = v != 0.0 ? effective::exchange_J_asymptote(p, v) : std::nan("");
      t.add_row({fmt(v), fmt(x), fmt(t_vert - es.energies(0)), fmt(effective::exchange_J(p, v)),
                 std::isnan(asym) ? "" : fmt(asym)});
    }
    a.add("fig4c_exchange.csv", t.str());
    a.add("fig4c_summary.json", json_text(solver_summary(cfg, d)));
    return a;
  }
  throw ConfigError("unknown figure '" + figure + "' (expected fig2a, fig2b, fig3, fig4a, fig4b, fig4c)");
}

}  // namespace qdca::cli
