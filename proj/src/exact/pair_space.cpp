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

#include "qdca/exact/pair_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdca::exact {

const char* to_string(SpinSector s) { return s == SpinSector::kSinglet ? "singlet" : "triplet"; }

PairBasis::PairBasis(const SinglePartBasis& basis, SpinSector sector)
    : sector_(sector), n_orb_(basis.size()) {
  lookup_.assign(static_cast<std::size_t>(n_orb_) * n_orb_, -1);
  const int offset = sector == SpinSector::kSinglet ? 0 : 1;
  for (int i = 0; i < n_orb_; ++i) {
    for (int j = i + offset; j < n_orb_; ++j) {
      lookup_[static_cast<std::size_t>(i) * n_orb_ + j] = static_cast<int>(pairs_.size());
      pairs_.push_back({i, j});
    }
  }
}

int PairBasis::index_of(int i, int j, double* sign) const {
  double s = 1.0;
  if (i > j) {
    std::swap(i, j);
    s = exchange_sign();
  }
  if (sign != nullptr) *sign = s;
  if (i < 0 || j >= n_orb_) return -1;
  return lookup_[static_cast<std::size_t>(i) * n_orb_ + j];
}

Eigen::VectorXd SymmetryBlock::to_pair_basis(const Eigen::VectorXd& v, int pair_dim) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(pair_dim);
  for (int b = 0; b < size(); ++b) {
    const AdaptedState& s = states[static_cast<std::size_t>(b)];
    for (int t = 0; t < s.terms; ++t) out(s.pair[t]) += s.coeff[t] * v(b);
  }
  return out;
}

Eigen::MatrixXd SymmetryBlock::to_pair_basis(const Eigen::MatrixXd& v, int pair_dim) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pair_dim, v.cols());
  for (int b = 0; b < size(); ++b) {
    const AdaptedState& s = states[static_cast<std::size_t>(b)];
    for (int t = 0; t < s.terms; ++t) out.row(s.pair[t]) += s.coeff[t] * v.row(b);
  }
  return out;
}

Eigen::VectorXcd SymmetryBlock::from_pair_basis(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size());
  for (int b = 0; b < size(); ++b) {
    const AdaptedState& s = states[static_cast<std::size_t>(b)];
    for (int t = 0; t < s.terms; ++t) out(b) += s.coeff[t] * v(s.pair[t]);
  }
  return out;
}

std::vector<SymmetryBlock> symmetry_blocks(const SinglePartBasis& basis, const PairBasis& pairs) {
  std::vector<SymmetryBlock> blocks;
  for (int rot : {1, -1}) {
    for (int mir : {1, -1}) blocks.push_back({{rot, mir}, {}});
  }
  auto block_for = [&](int rot, int mir) -> SymmetryBlock& {
    return blocks[static_cast<std::size_t>((rot == 1 ? 0 : 2) + (mir == 1 ? 0 : 1))];
  };
  std::vector<bool> seen(static_cast<std::size_t>(pairs.size()), false);
  const double r2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < pairs.size(); ++p) {
    if (seen[static_cast<std::size_t>(p)]) continue;
    const OrbitalPair& op = pairs.pair(p);
    const int rot = basis.c2_parity(op.i) * basis.c2_parity(op.j);
    double s = 1.0;
    const int q = pairs.index_of(basis.mirror(op.i), basis.mirror(op.j), &s);
    seen[static_cast<std::size_t>(p)] = true;
    if (q == p) {
      block_for(rot, static_cast<int>(s)).states.push_back({{p, p}, {1.0, 0.0}, 1});
      continue;
    }
    seen[static_cast<std::size_t>(q)] = true;
    block_for(rot, 1).states.push_back({{p, q}, {r2, s * r2}, 2});
    block_for(rot, -1).states.push_back({{p, q}, {r2, -s * r2}, 2});
  }
  std::erase_if(blocks, [](const SymmetryBlock& b) { return b.states.empty(); });
  return blocks;
}

namespace {

struct PairElements {
  double kinetic_coulomb;
  double gate;
};

class PairMatrixBuilder {
 public:
  PairMatrixBuilder(const PairBasis& pairs, const SinglePartBasis& basis, const Eigen::MatrixXd& gate,
                    const CoulombTensor* tensor)
      : pairs_(pairs), basis_(basis), gate_(gate), tensor_(tensor) {}

  PairElements operator()(int p, int q) const {
    const OrbitalPair& a = pairs_.pair(p);
    const OrbitalPair& b = pairs_.pair(q);
    const double sgn = pairs_.exchange_sign();
    const double pref = 2.0 * pairs_.norm_factor(p) * pairs_.norm_factor(q);
    const int i = a.i, j = a.j, k = b.i, l = b.j;

    auto kin = [&](int x, int y) { return x == y ? basis_.mode(x).energy_ueV : 0.0; };
    auto one_body = [&](auto&& h, int k1, int l1) {
      double v = 0.0;
      if (j == l1) v += h(i, k1);
      if (i == k1) v += h(j, l1);
      return v;
    };
    auto g = [&](int x, int y) { return gate_(x, y); };

    double kc = one_body(kin, k, l) + sgn * one_body(kin, l, k);
    const double gt = one_body(g, k, l) + sgn * one_body(g, l, k);
    if (tensor_ != nullptr) kc += tensor_->element(i, j, k, l) + sgn * tensor_->element(i, j, l, k);
    return {pref * kc, pref * gt};
  }

 private:
  const PairBasis& pairs_;
  const SinglePartBasis& basis_;
  const Eigen::MatrixXd& gate_;
  const CoulombTensor* tensor_;
};

void check_sizes(const SinglePartBasis& basis, const CoulombTensor& tensor) {
  if (tensor.size() != basis.size()) {
    throw std::invalid_argument("hamiltonian: Coulomb tensor built for " + std::to_string(tensor.size()) +
                                " orbitals, basis has " + std::to_string(basis.size()));
  }
}

}  // namespace

BlockOperators assemble_block(const SymmetryBlock& block, const PairBasis& pairs, const SinglePartBasis& basis,
                              const Eigen::MatrixXd& gate_1body, const CoulombTensor& tensor) {
  check_sizes(basis, tensor);
  const PairMatrixBuilder elem(pairs, basis, gate_1body, &tensor);
  const int n = block.size();
  BlockOperators ops{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
  for (int c = 0; c < n; ++c) {
    const AdaptedState& sc = block.states[static_cast<std::size_t>(c)];
    for (int r = 0; r <= c; ++r) {
      const AdaptedState& sr = block.states[static_cast<std::size_t>(r)];
      double kc = 0.0;
      double gt = 0.0;
      for (int t = 0; t < sr.terms; ++t) {
        for (int u = 0; u < sc.terms; ++u) {
          const PairElements e = elem(sr.pair[t], sc.pair[u]);
          const double w = sr.coeff[t] * sc.coeff[u];
          kc += w * e.kinetic_coulomb;
          gt += w * e.gate;
        }
      }
      ops.kinetic_coulomb(r, c) = ops.kinetic_coulomb(c, r) = kc;
      ops.gate(r, c) = ops.gate(c, r) = gt;
    }
  }
  return ops;
}

Eigen::MatrixXd assemble_hamiltonian(const SquareDot& dot, SpinSector sector, const SinglePartBasis& basis,
                                     const CoulombTensor& tensor) {
  dot.validate();
  check_sizes(basis, tensor);
  const PairBasis pairs(basis, sector);
  const Eigen::MatrixXd g = gate_matrix_elements(basis);
  const PairMatrixBuilder elem(pairs, basis, g, &tensor);
  const int n = pairs.size();
  Eigen::MatrixXd h(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r <= c; ++r) {
      const PairElements e = elem(r, c);
      h(r, c) = h(c, r) = e.kinetic_coulomb + dot.gate_ueV * e.gate;
    }
  }
  return h;
}

Eigen::MatrixXd one_body_pair_matrix(const PairBasis& pairs, const Eigen::MatrixXd& h) {
  const int n = pairs.size();
  const double sgn = pairs.exchange_sign();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const OrbitalPair& b = pairs.pair(c);
    for (int r = 0; r <= c; ++r) {
      const OrbitalPair& a = pairs.pair(r);
      auto term = [&](int k, int l) {
        double v = 0.0;
        if (a.j == l) v += h(a.i, k);
        if (a.i == k) v += h(a.j, l);
        return v;
      };
      const double val = 2.0 * pairs.norm_factor(r) * pairs.norm_factor(c) * (term(b.i, b.j) + sgn * term(b.j, b.i));
      out(r, c) = out(c, r) = val;
    }
  }
  return out;
}

}  // namespace qdca::exact
