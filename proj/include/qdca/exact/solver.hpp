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

/// Exact two-electron solver for the gated square dot.

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdca/effective_params.hpp"
#include "qdca/exact/basis.hpp"
#include "qdca/exact/coulomb.hpp"
#include "qdca/exact/eigensolver.hpp"
#include "qdca/exact/pair_space.hpp"
#include "qdca/units.hpp"

namespace qdca::exact {

struct SolverConfig {
  double length_nm = 400.0;
  int n_max = 10;
  int quadrature_order = 32;
  int k_levels = 8;
  int spectrum_cutoff = 30;
  EigenOptions eigen;
};

struct SpectrumResult {
  SpinSector sector = SpinSector::kSinglet;
  double gate_ueV = 0.0;
  Eigen::VectorXd energies;  // ascending, ueV
  Eigen::MatrixXd vectors;   // columns over the PairBasis of `sector`
  std::vector<SymmetryLabel> labels;
  double max_residual = 0.0;

  int size() const { return static_cast<int>(energies.size()); }
};

/// k lowest eigenpairs of an explicit pair-basis Hamiltonian.
SpectrumResult lowest_spectrum(const Eigen::MatrixXd& h, int k, const EigenOptions& opts = {});

enum class QuadrantSet { kBD, kAC };

/// Charge density sampled on a uniform grid including the walls.
struct DensityGrid {
  int points = 0;              // per axis
  double length_nm = 0.0;
  Eigen::MatrixXd rho;         // rho(ix, iy), 1/nm^2

  double x(int i) const { return length_nm * i / (points - 1); }
  /// Trapezoidal integral of rho over the dot.
  double integral() const;
};

/// Owns the basis, Coulomb tensor and the symmetry-blocked operators for one
/// dot size. Immutable after construction; const methods are thread-safe.
class TwoElectronSolver {
 public:
  TwoElectronSolver(const SolverConfig& config, const MaterialParams& mat);

  const SolverConfig& config() const { return config_; }
  const MaterialParams& material() const { return material_; }
  const SinglePartBasis& basis() const { return basis_; }
  const CoulombTensor& tensor() const { return tensor_; }
  const Eigen::MatrixXd& gate_1body() const { return gate_1body_; }
  const PairBasis& pairs(SpinSector s) const { return sector(s).pairs; }
  const std::vector<SymmetryBlock>& blocks(SpinSector s) const { return sector(s).blocks; }
  const BlockOperators& block_operators(SpinSector s, int b) const {
    return sector(s).ops[static_cast<std::size_t>(b)];
  }

  /// k lowest levels of one sector at gate potential v, merged across blocks.
  SpectrumResult spectrum(SpinSector s, double v, int k) const;

  /// k lowest eigenpairs inside one symmetry block (vectors in block space).
  EigenPairs block_spectrum(SpinSector s, int block, double v, int k) const;

  /// Probability that one electron sits in the given quadrant pair (the other anywhere).
  double quadrant_probability(SpinSector s, const Eigen::VectorXcd& state, QuadrantSet q) const;
  double quadrant_probability(SpinSector s, const Eigen::VectorXd& state, QuadrantSet q) const;

  /// rho(r) = 2 int |Psi(r, r2)|^2 dr2 on a grid of `points` x `points`.
  DensityGrid charge_density(SpinSector s, const Eigen::VectorXd& state, int points = 81) const;
  DensityGrid charge_density(const SpectrumResult& result, int which, int points = 81) const;

 private:
  struct Sector {
    PairBasis pairs;
    std::vector<SymmetryBlock> blocks;
    std::vector<BlockOperators> ops;
  };
  const Sector& sector(SpinSector s) const { return s == SpinSector::kSinglet ? singlet_ : triplet_; }
  static Sector build_sector(SpinSector s, const SinglePartBasis& basis, const Eigen::MatrixXd& gate,
                             const CoulombTensor& tensor);

  SolverConfig config_;
  MaterialParams material_;
  SinglePartBasis basis_;
  CoulombTensor tensor_;
  Eigen::MatrixXd gate_1body_;
  Sector singlet_;
  Sector triplet_;
};

/// The V = 0 configuration states: vertical (quadrants a,c) and horizontal
/// (b,d) singlets and triplets, as pair-basis vectors.
struct ConfigurationStates {
  Eigen::VectorXd s_vertical;
  Eigen::VectorXd s_horizontal;
  Eigen::VectorXd t_vertical;
  Eigen::VectorXd t_horizontal;
};

struct EffectiveExtraction {
  EffectiveParams params;
  ConfigurationStates states;
  SpectrumResult singlets;  // V = 0
  SpectrumResult triplets;  // V = 0
  double triplet_split = 0.0;
  std::vector<std::string> warnings;
};

/// Reads the reduced-model constants off the V = 0 spectra. The relative sign
/// of the two lowest singlets is fixed so that S1 = (S_vert + S_horz)/sqrt(2);
/// the degenerate triplet pair is rotated to extremise its b,d occupancy.
EffectiveExtraction extract_effective(const TwoElectronSolver& solver);

struct Segment {
  double gate_ueV = 0.0;
  double duration_ns = 0.0;
};

struct EvolutionOptions {
  int spectrum_cutoff = 30;       // eigenstates kept per symmetry block to start with
  int samples_per_segment = 100;
  double max_discarded = 1e-12;   // weight allowed outside the kept eigenstates per segment
};

struct TrajectoryPoint {
  double t_ns = 0.0;
  double p_ac = 0.0;
  double p_bd = 0.0;
  double norm = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  Eigen::VectorXcd final_state;   // pair basis
  double discarded_weight = 0.0;  // total over segment boundaries
  int max_states_used = 0;
};

/// Piecewise-constant evolution: inside each segment the state is expanded in
/// that segment's eigenbasis and propagated with exact phases exp(-i E t / hbar).
/// The kept eigenbasis grows until the weight left outside it is below
/// `max_discarded`; leakage into states above the lowest multiplet is retained.
Trajectory evolve_piecewise(const TwoElectronSolver& solver, SpinSector s, const Eigen::VectorXcd& initial,
                            std::span<const Segment> schedule, const EvolutionOptions& opts = {});

struct SpectrumComparison {
  double gate_ueV = 0.0;
  std::array<double, 2> exact_singlet{};
  std::array<double, 2> exact_triplet{};
  std::array<double, 2> model_singlet{};
  std::array<double, 2> model_triplet{};  // ascending

  /// Largest |model - exact| over the four levels.
  double max_abs_deviation() const;
};

/// Exact lowest multiplet against the reduced model at each gate potential.
std::vector<SpectrumComparison> compare_spectra(const TwoElectronSolver& solver, const EffectiveParams& eff,
                                                std::span<const double> gates);

}  // namespace qdca::exact
