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

namespace qdca {

/// Constants of the reduced four-level model of one dot, in ueV.
///
/// delta0 is the magnitude of the vertical/horizontal co-tunnelling amplitude,
/// p_s and p_t the probabilities of finding one electron in quadrants b or d
/// for the vertical singlet and vertical triplet. a_s vanishes by symmetry.
struct EffectiveParams {
  double e0s = 0.0;
  double e0t = 0.0;
  double delta0 = 20.0;
  double p_s = 0.109;
  double p_t = 0.142;
  double a_s = 0.0;

  /// Throws std::invalid_argument unless delta0 > 0 and p_s, p_t lie in [0, 1/2].
  void validate() const;
};

}  // namespace qdca
