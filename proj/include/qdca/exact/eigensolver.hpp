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

#include <Eigen/Dense>

namespace qdca::exact {

struct EigenOptions {
  /// Matrices up to this dimension go to the dense symmetric solver.
  int dense_threshold = 600;
  /// Required residual ||H v - e v|| <= rel_tol * ||H||.
  double rel_tol = 1e-8;
  /// Upper bound on the Krylov dimension before giving up.
  int max_krylov = 2000;
  unsigned seed = 20140613u;
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, orthonormal
  double max_residual = 0.0;
  double norm_estimate = 0.0;
};

/// The k lowest eigenpairs of the symmetric matrix h. Uses a Lanczos iteration
/// with full reorthogonalisation above the dense threshold. Throws
/// ConvergenceError (carrying the residual reached) if the tolerance is missed.
EigenPairs lowest_eigenpairs(const Eigen::MatrixXd& h, int k, const EigenOptions& opts = {});

}  // namespace qdca::exact
