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

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qdca/effective/model.hpp"
#include "qdca/exact/solver.hpp"

namespace qdca::exact {

namespace {

using cplx = std::complex<double>;

struct BlockPropagator {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // block space
  Eigen::MatrixXd gate;     // vectors^T G vectors
  Eigen::VectorXcd coeffs;  // at segment start
  double discarded = 0.0;
};

// Expands `psi` (block space) in the lowest eigenstates of h, enlarging the set
// until the weight outside it drops below tol.
BlockPropagator expand(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g, const Eigen::VectorXcd& psi, int start,
                       double tol, const EigenOptions& eopts) {
  const int n = static_cast<int>(h.rows());
  const double w = psi.squaredNorm();
  BlockPropagator p;
  int k = std::min(start, n);
  for (;;) {
    EigenPairs ep;
    if (2 * k >= n || n <= eopts.dense_threshold) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      ep.values = es.eigenvalues();
      ep.vectors = es.eigenvectors();
      k = n;
    } else {
      ep = lowest_eigenpairs(h, k, eopts);
    }
    const Eigen::VectorXcd c = ep.vectors.transpose().cast<cplx>() * psi;
    const double kept = c.squaredNorm();
    const double lost = std::max(0.0, w - kept);
    if (lost <= tol || k == n) {
      // Full bases are trimmed back to the states carrying weight.
      int used = k;
      if (k == n) {
        double tail = 0.0;
        while (used > 1 && tail + std::norm(c(used - 1)) <= 0.5 * tol) {
          tail += std::norm(c(used - 1));
          --used;
        }
        used = std::max(used, std::min(start, n));
      }
      p.energies = ep.values.head(used);
      p.vectors = ep.vectors.leftCols(used);
      p.coeffs = c.head(used);
      p.discarded = std::max(0.0, w - p.coeffs.squaredNorm());
      p.gate = p.vectors.transpose() * g * p.vectors;
      return p;
    }
    k = std::min(n, 2 * k);
  }
}

}  // namespace

Trajectory evolve_piecewise(const TwoElectronSolver& solver, SpinSector s, const Eigen::VectorXcd& initial,
                            std::span<const Segment> schedule, const EvolutionOptions& opts) {
  const PairBasis& pairs = solver.pairs(s);
  if (initial.size() != pairs.size()) throw std::invalid_argument("evolve_piecewise: state dimension mismatch");
  if (opts.samples_per_segment < 1) throw std::invalid_argument("evolve_piecewise: need at least one sample");
  if (opts.spectrum_cutoff < 1) throw std::invalid_argument("evolve_piecewise: spectrum cutoff must be positive");
  if (std::abs(initial.norm() - 1.0) > 1e-8) throw std::invalid_argument("evolve_piecewise: initial state not normalised");
  const auto& blocks = solver.blocks(s);
  const int nb = static_cast<int>(blocks.size());

  Trajectory traj;
  std::vector<Eigen::VectorXcd> state(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) state[static_cast<std::size_t>(b)] = blocks[static_cast<std::size_t>(b)].from_pair_basis(initial);

  double t0 = 0.0;
  bool first = true;
  for (const Segment& seg : schedule) {
    if (seg.duration_ns < 0.0) throw std::invalid_argument("evolve_piecewise: negative segment duration");
    std::vector<BlockPropagator> props;
    props.reserve(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
      const auto& psi = state[static_cast<std::size_t>(b)];
      const BlockOperators& ops = solver.block_operators(s, b);
      if (psi.squaredNorm() == 0.0) {
        props.push_back({});
        continue;
      }
      props.push_back(expand(ops.hamiltonian(seg.gate_ueV), ops.gate, psi, opts.spectrum_cutoff, opts.max_discarded,
                             solver.config().eigen));
      traj.discarded_weight += props.back().discarded;
      traj.max_states_used = std::max(traj.max_states_used, static_cast<int>(props.back().energies.size()));
    }

    const int n_samples = opts.samples_per_segment;
    for (int k = first ? 0 : 1; k <= n_samples; ++k) {
      const double dt = seg.duration_ns * k / n_samples;
      TrajectoryPoint pt;
      pt.t_ns = t0 + dt;
      double twice_bd = 0.0;
      for (const BlockPropagator& p : props) {
        if (p.coeffs.size() == 0) continue;
        Eigen::VectorXcd c = p.coeffs;
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -p.energies(i) * dt / constants::kHbar);
        pt.norm += c.squaredNorm();
        twice_bd += (c.adjoint() * p.gate.cast<cplx>() * c)(0).real();
      }
      pt.p_bd = 0.5 * twice_bd;
      pt.p_ac = pt.norm - pt.p_bd;
      pt.norm = std::sqrt(pt.norm);
      traj.points.push_back(pt);
    }
    first = false;

    for (int b = 0; b < nb; ++b) {
      const BlockPropagator& p = props[static_cast<std::size_t>(b)];
      if (p.coeffs.size() == 0) continue;
      Eigen::VectorXcd c = p.coeffs;
      for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) *= std::polar(1.0, -p.energies(i) * seg.duration_ns / constants::kHbar);
      }
      state[static_cast<std::size_t>(b)] = p.vectors.cast<cplx>() * c;
    }
    t0 += seg.duration_ns;
  }

  traj.final_state = Eigen::VectorXcd::Zero(pairs.size());
  for (int b = 0; b < nb; ++b) {
    const auto& blk = blocks[static_cast<std::size_t>(b)];
    const auto& psi = state[static_cast<std::size_t>(b)];
    const Eigen::VectorXd re = blk.to_pair_basis(Eigen::VectorXd(psi.real()), pairs.size());
    const Eigen::VectorXd im = blk.to_pair_basis(Eigen::VectorXd(psi.imag()), pairs.size());
    traj.final_state += re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
  }
  return traj;
}

double SpectrumComparison::max_abs_deviation() const {
  double m = 0.0;
  for (int i = 0; i < 2; ++i) {
    m = std::max(m, std::abs(model_singlet[static_cast<std::size_t>(i)] - exact_singlet[static_cast<std::size_t>(i)]));
    m = std::max(m, std::abs(model_triplet[static_cast<std::size_t>(i)] - exact_triplet[static_cast<std::size_t>(i)]));
  }
  return m;
}

std::vector<SpectrumComparison> compare_spectra(const TwoElectronSolver& solver, const EffectiveParams& eff,
                                                std::span<const double> gates) {
  std::vector<SpectrumComparison> out;
  out.reserve(gates.size());
  for (double v : gates) {
    SpectrumComparison c;
    c.gate_ueV = v;
    const SpectrumResult es = solver.spectrum(SpinSector::kSinglet, v, 2);
    const SpectrumResult et = solver.spectrum(SpinSector::kTriplet, v, 2);
    c.exact_singlet = {es.energies(0), es.energies(1)};
    c.exact_triplet = {et.energies(0), et.energies(1)};
    const effective::SingletLevels ms = effective::singlet_spectrum(eff, v);
    const effective::TripletLevels mt = effective::triplet_energies(eff, v);
    c.model_singlet = {ms.e_s1, ms.e_s2};
    c.model_triplet = {std::min(mt.e_vert, mt.e_horz), std::max(mt.e_vert, mt.e_horz)};
    out.push_back(c);
  }
  return out;
}

}  // namespace qdca::exact
