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
using solvcirc::testing::pure;
using solvcirc::testing::random_kets;

namespace {

ChainSpec dressed_swap_spec(std::uint64_t seed, std::size_t l_left = 10) {
  Rng rng(seed);
  ChainSpec s;
  s.l_left = l_left;
  s.l_r = 3;
  s.gate = sample_q2_qt2(rng);
  s.mps = cluster_mps();
  s.right_kets = random_kets(2, 8, rng);
  s.tmax = 4;
  return s;
}

double max_distance(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) d = std::max(d, trace_distance(a[t], b[t]));
  return d;
}

std::vector<Mat> engine(const ChainSpec& s) {
  return evolve_subsystem(make_evolution_config(s.gate, s.mps, s.right_kets, s.l_r, s.tmax));
}

}  // namespace

TEST(oracle, product_initial_chain) {
  ChainSpec s;
  s.l_left = 3;
  s.l_r = 2;
  s.gate = swap_gate(2);
  s.mps = product_state_mps(2, 0);
  Rng rng(601);
  s.right_kets = random_kets(1, 4, rng);
  Vec expect = kron(kron(kron(basis_vector(2, 0), basis_vector(2, 0)), basis_vector(2, 0)), s.right_kets[0]);
  EXPECT_LT((build_initial_chain(s) - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(oracle, canonical_left_blocks_are_orthonormal) {
  for (const auto& a : {cluster_mps(), ghz_cluster_family(0.3, 2), ghz_cluster_family(0.6, 4)}) {
    ChainSpec s;
    s.l_left = 5;
    s.l_r = 2;
    s.gate = swap_gate(a.q);
    s.mps = a;
    s.right_kets = product_right_kets(a.q, 2, 0, a.chi);
    EXPECT_LT(max_abs(left_block_gram(s) - identity(a.chi)), 1e-12);
    EXPECT_NEAR(build_initial_chain(s).norm(), 1.0, 1e-12);
  }
}

TEST(oracle, initial_density_matches_engine) {
  const auto s = dressed_swap_spec(602);
  EXPECT_LT(trace_distance(evolve_chain(s)[0], engine(s)[0]), 1e-12);
}

TEST(oracle, swap_chain_translates_product_data) {
  // product data on every site; SWAP only permutes it
  Rng rng(603);
  const std::size_t tmax = 3, l_left = 2 * tmax + 2, l_r = 3;
  std::vector<Vec> site_kets;
  Vec right = Vec::Ones(1);
  for (std::size_t i = 0; i < l_r; ++i) {
    site_kets.push_back(solvcirc::testing::random_ket(2, rng));
    right = kron(right, site_kets.back());
  }
  ChainSpec s;
  s.l_left = l_left;
  s.l_r = l_r;
  s.gate = swap_gate(2);
  s.mps = product_state_mps(2, 1);
  s.right_kets = {right};
  s.tmax = tmax;
  const auto rho = evolve_chain(s);
  // content[i] = which initial ket sits at chain position i (-1: the left |1>)
  std::vector<int> content(l_left + l_r, -1);
  for (std::size_t i = 0; i < l_r; ++i) content[l_left + i] = static_cast<int>(i);
  for (std::size_t t = 1; t <= tmax; ++t) {
    for (int parity : {0, 1})
      for (std::size_t i = 0; i + 1 < content.size(); ++i) {
        const long x = static_cast<long>(i) - static_cast<long>(l_left);
        if (((x % 2) + 2) % 2 == parity) std::swap(content[i], content[i + 1]);
      }
    Vec expect = Vec::Ones(1);
    for (std::size_t i = 0; i < l_r; ++i) {
      const int c = content[l_left + i];
      expect = kron(expect, c < 0 ? basis_vector(2, 1) : site_kets[c]);
    }
    EXPECT_LT(trace_distance(rho[t], pure(expect)), 1e-12) << "t=" << t;
  }
}

TEST(oracle, dressed_swap_cluster_matches_engine) {
  const auto s = dressed_swap_spec(604);
  EXPECT_LT(max_distance(evolve_chain(s), engine(s)), 1e-10);
}

TEST(oracle, general_gate_ghz_cluster_matches_engine) {
  Rng rng(605);
  ChainSpec s;
  s.l_left = 6;
  s.l_r = 2;
  s.gate = sample_general(4, 2, rng);
  s.mps = ghz_cluster_family(0.5, 4);
  s.right_kets = random_kets(2, 16, rng);
  s.tmax = 2;
  EXPECT_LT(max_distance(evolve_chain(s), engine(s)), 1e-10);
}

TEST(oracle, lightcone_independence) {
  const auto a = evolve_chain(dressed_swap_spec(606, 10));
  const auto b = evolve_chain(dressed_swap_spec(606, 12));
  EXPECT_LT(max_distance(a, b), 1e-12);
}

TEST(oracle, purification_matches_closure) {
  auto open = dressed_swap_spec(607, 10);
  auto closed = open;
  closed.purify = false;
  EXPECT_LT(max_distance(evolve_chain(open), evolve_chain(closed)), 1e-12);
}

TEST(oracle, wrong_layer_order_is_detected) {
  auto s = dressed_swap_spec(608);
  s.order = LayerOrder::OddFirst;
  EXPECT_GT(max_distance(evolve_chain(s), engine(s)), 1e-3);
}

TEST(oracle, validation) {
  auto s = dressed_swap_spec(609, 6);
  s.purify = false;
  EXPECT_THROW(validate(s), ArgumentError);
  s.purify = true;
  EXPECT_NO_THROW(validate(s));
  auto big = dressed_swap_spec(609, 40);
  EXPECT_THROW(evolve_chain(big), CapacityError);
  auto wrong = dressed_swap_spec(609);
  wrong.right_kets.pop_back();
  EXPECT_THROW(validate(wrong), ArgumentError);
}

TEST(oracle, homogeneous_chain_traces) {
  Rng rng(610);
  const auto g = sample_q2_qt1(rng);
  for (int n : {2, 3}) EXPECT_NEAR(renyi_trace_chain(g, product_state_mps(2, 0), n, 0), 1.0, 1e-14);
  EXPECT_NEAR(renyi_trace_chain(g, product_state_mps(2, 0), 2, 2), 1.0, 1e-12);
  EXPECT_THROW(renyi_trace_chain(g, product_state_mps(2, 0), 1, 1), ArgumentError);
}
