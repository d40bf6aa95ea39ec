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


#include <cmath>

#include "test_util.hpp"

using namespace solvcirc;

TEST(mps, left_canonical_examples) {
  EXPECT_EQ(check_left_canonical(product_state_mps(2, 0)), 0.0);
  for (double theta : {0.1, kPi / 8, 0.5, kPi / 4})
    for (std::size_t q : {2, 4}) EXPECT_LT(check_left_canonical(ghz_cluster_family(theta, q)), 1e-12);
  MpsTensor scaled = cluster_mps();
  for (auto& m : scaled.mats) m *= 2.0;
  EXPECT_NEAR(check_left_canonical(scaled), 3.0, 1e-12);
}

TEST(mps, right_canonical_examples) {
  EXPECT_EQ(check_right_canonical(product_state_mps(3, 2)), 0.0);
  const MpsTensor c = cluster_mps();
  Mat a0(2, 2), a1(2, 2);
  a0 << 1, 1, 0, 0;
  a1 << 0, 0, -1, 1;
  EXPECT_LT(max_abs(c.mats[0] - a0 / std::sqrt(2.0)), 1e-15);
  EXPECT_LT(max_abs(c.mats[1] - a1 / std::sqrt(2.0)), 1e-15);
  EXPECT_LT(check_right_canonical(c), 1e-12);
  EXPECT_LT(check_right_canonical(ghz_cluster_family(kPi / 8, 4)), 1e-12);
  EXPECT_LT(check_left_canonical(solvcirc::testing::left_only_tensor()), 1e-15);
  EXPECT_GT(check_right_canonical(solvcirc::testing::left_only_tensor()), 0.1);
}

TEST(mps, ghz_cluster_family_entries) {
  const auto t = ghz_cluster_family(kPi / 4, 4);
  const double h = std::sqrt(2.0) / 2.0;
  Mat a0(2, 2);
  a0 << h, h, 0, 0;
  EXPECT_LT(max_abs(t.mats[0] - a0), 1e-15);
  EXPECT_EQ(max_abs(t.mats[2]), 0.0);
  EXPECT_EQ(max_abs(t.mats[3]), 0.0);
  EXPECT_THROW(ghz_cluster_family(0.0, 4), ArgumentError);
  EXPECT_THROW(ghz_cluster_family(1.0, 4), ArgumentError);
  EXPECT_THROW(ghz_cluster_family(0.3, 1), ArgumentError);
}

TEST(mps, subspace_dimension_examples) {
  EXPECT_EQ(subspace_dimension(product_state_mps(2, 0)), 1u);
  for (double theta : {0.05, kPi / 16, kPi / 8, 3 * kPi / 16, kPi / 4})
    EXPECT_EQ(subspace_dimension(ghz_cluster_family(theta, 4)), 2u);
  Rng rng(201);
  MpsTensor full{3, 2, {}};
  for (int a = 0; a < 3; ++a) full.mats.push_back(haar_unitary(2, rng));
  EXPECT_EQ(subspace_dimension(full), 3u);
  MpsTensor zero{2, 2, {Mat::Zero(2, 2), Mat::Zero(2, 2)}};
  EXPECT_THROW(subspace_dimension(zero), DegenerateInputError);
}

TEST(mps, subspace_dimension_rotation_invariant) {
  Rng rng(202);
  for (int rep = 0; rep < 5; ++rep) {
    Mat w = haar_unitary(4, rng);
    const auto a = ghz_cluster_family(rng.uniform(0.05, kPi / 4), 4);
    EXPECT_EQ(subspace_dimension(rotate_physical(a, w)), subspace_dimension(a));
  }
}

TEST(mps, product_state_examples) {
  const auto zero = product_state_mps(2, 0), one = product_state_mps(2, 1);
  EXPECT_EQ(zero.chi, 1u);
  EXPECT_EQ(zero.mats[0](0, 0), cplx(1.0));
  EXPECT_EQ(zero.mats[1](0, 0), cplx(0.0));
  EXPECT_EQ(one.mats[0](0, 0), cplx(0.0));
  EXPECT_EQ(one.mats[1](0, 0), cplx(1.0));
  Vec plus = Vec::Ones(2) / std::sqrt(2.0);
  EXPECT_EQ(subspace_dimension(product_state_mps(plus)), 1u);
  EXPECT_THROW(product_state_mps(Vec::Zero(2)), ArgumentError);
}

TEST(mps, lpdo_canonical) {
  const auto c = cluster_mps();
  EXPECT_NEAR(lpdo_check_canonical(lpdo_from_mps(c)), check_left_canonical(c), 1e-15);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_LT(lpdo_check_canonical(lpdo_from_mps(c, {h, h})), 1e-12);
  EXPECT_GT(lpdo_check_canonical(lpdo_from_mps(c, {1.0, 1.0})), 0.5);
}

TEST(mps, two_site_canonical) {
  const auto t = two_site_from(cluster_mps(), rotate_physical(cluster_mps(), pauli(1)));
  EXPECT_LT(check_canonical(t), 1e-10);
  TwoSiteMps bad = t;
  bad.matsA[0] *= 2.0;
  EXPECT_GT(check_canonical(bad), 1e-3);
}

TEST(mps, validate_shapes) {
  MpsTensor wrong{2, 2, {Mat::Zero(2, 2)}};
  EXPECT_THROW(validate(wrong), ShapeError);
  MpsTensor rect{2, 2, {Mat::Zero(2, 3), Mat::Zero(2, 3)}};
  EXPECT_THROW(validate(rect), ShapeError);
}

TEST(mps, blocking_rank_diagnostic) {
  // cluster blocks two sites into a full-rank map; the product state does not grow
  EXPECT_EQ(blocking_rank(cluster_mps()), 4u);
  EXPECT_EQ(blocking_rank(product_state_mps(2, 0)), 1u);
}
