// Copyright 2026 The solvcirc Authors
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

#include <gtest/gtest.h>

#include "solvcirc/solvcirc.hpp"

namespace solvcirc::testing {

// Both-chirality q=2 gate at the SWAP point J3 = pi/4, which is solvable from
// either side for the cluster tensor.
inline TwoSiteGate swap_point_gate(double phi = 0.3, double eps = 0.4, double epsp = 0.7) {
  return gate_both_chirality_q2(phi, eps, epsp, -0.4, -0.7, kPi / 4);
}

inline Vec random_ket(std::size_t dim, Rng& rng) {
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = cplx(rng.normal(), rng.normal());
  return v / v.norm();
}

inline std::vector<Vec> random_kets(std::size_t count, std::size_t dim, Rng& rng) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_ket(dim, rng));
  return out;
}

// Left-canonical but not right-canonical: A^a = |0)(a|.
inline MpsTensor left_only_tensor() {
  Mat a0 = Mat::Zero(2, 2), a1 = Mat::Zero(2, 2);
  a0(0, 0) = 1.0;
  a1(0, 1) = 1.0;
  return {2, 2, {a0, a1}};
}

inline Mat pure(const Vec& v) { return v * v.adjoint(); }

}  // namespace solvcirc::testing
