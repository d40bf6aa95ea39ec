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

// Brute-force full chain.  Sites carry global coordinates x = -L_left..L_R-1
// with x = 0 the first site of the right region; a bond (x, x+1) belongs to
// the even layer when x is even, so the boundary bond (-1, 0) is odd.

#include <vector>

#include "solvcirc/evolve.hpp"
#include "solvcirc/gates.hpp"
#include "solvcirc/mps.hpp"

namespace solvcirc {

struct ChainSpec {
  std::size_t l_left = 0;
  std::size_t l_r = 2;
  TwoSiteGate gate;
  MpsTensor mps;
  std::vector<Vec> right_kets;
  std::size_t tmax = 0;
  // keep the leftmost bond index as an explicit leg; otherwise close it with
  // the unit vector |0) and renormalise
  bool purify = true;
  LayerOrder order = LayerOrder::EvenFirst;

  std::size_t q() const { return gate.q; }
  std::size_t chi() const { return mps.chi; }
};

inline std::size_t lightcone_margin(std::size_t tmax) { return 2 * tmax + 2; }

inline void validate(const ChainSpec& s) {
  if (s.gate.q != s.mps.q) throw ArgumentError("chain: gate and tensor have different q");
  validate(s.mps);
  if (s.l_r < 1) throw ArgumentError("chain: need L_R >= 1");
  if (!s.purify && s.l_left < lightcone_margin(s.tmax))
    throw ArgumentError("chain: L_left below the lightcone margin 2T+2 without purification");
  if (s.right_kets.size() != s.mps.chi) throw ArgumentError("chain: need one right ket per bond level");
  const std::size_t dim_r = ipow(s.q(), s.l_r);
  for (const auto& k : s.right_kets)
    if (static_cast<std::size_t>(k.size()) != dim_r) throw ArgumentError("chain: right ket has wrong dimension");
  const std::size_t lead = s.purify ? s.chi() : 1;
  const std::size_t amps = checked_mul(lead, checked_pow(s.q(), s.l_left + s.l_r));
  if (amps > amplitude_cap())
    throw CapacityError("chain: " + std::to_string(amps) + " amplitudes exceed cap " + std::to_string(amplitude_cap()));
}

namespace detail {

// rows (l, a_1..a_n), columns j: (A^{a_1} ... A^{a_n})_{l j}; start picks the
// left boundary (identity for a dangling leg, a row vector for a closure)
inline Mat grow_left_block(const MpsTensor& a, Mat start, std::size_t n) {
  for (std::size_t s = 0; s < n; ++s) {
    Mat next(start.rows() * a.q, a.chi);
    for (Eigen::Index r = 0; r < start.rows(); ++r)
      for (std::size_t b = 0; b < a.q; ++b) next.row(r * a.q + b) = start.row(r) * a.mats[b];
    start = std::move(next);
  }
  return start;
}

// row-major flattening of a matrix
inline Vec flatten(const Mat& m) {
  Mat t = m.transpose();
  return Eigen::Map<const Vec>(t.data(), t.size());
}

inline void apply_brick_layer(Vec& psi, const Mat& u, std::size_t q, std::size_t lead, long x_min, long x_max,
                              std::size_t trail, int parity) {
  const std::size_t n = static_cast<std::size_t>(x_max - x_min + 1);
  for (long x = x_min; x < x_max; ++x) {
    if (((x % 2) + 2) % 2 != parity) continue;
    const std::size_t s = static_cast<std::size_t>(x - x_min);
    apply_local(psi, u, lead * ipow(q, s), q * q, ipow(q, n - s - 2) * trail);
  }
}

inline void apply_period(Vec& psi, const Mat& u, std::size_t q, std::size_t lead, long x_min, long x_max,
                         std::size_t trail, LayerOrder order) {
  const int first = order == LayerOrder::EvenFirst ? 0 : 1;
  apply_brick_layer(psi, u, q, lead, x_min, x_max, trail, first);
  apply_brick_layer(psi, u, q, lead, x_min, x_max, trail, 1 - first);
}

// reduced density on the trailing factor of dimension dim_r
inline Mat reduce_right(const Vec& psi, std::size_t dim_r) {
  Eigen::Map<const Mat> m(psi.data(), dim_r, psi.size() / dim_r);
  return m * m.adjoint();
}

}  // namespace detail

// (bond leg) (x) left sites (x) right sites, normalised
inline Vec build_initial_chain(const ChainSpec& s) {
  validate(s);
  const std::size_t chi = s.chi(), dim_r = ipow(s.q(), s.l_r);
  Mat start = s.purify ? identity(chi) : Mat(basis_vector(chi, 0).transpose());
  Mat left = detail::grow_left_block(s.mps, start, s.l_left);
  Mat right(chi, dim_r);
  for (std::size_t j = 0; j < chi; ++j) right.row(j) = s.right_kets[j].transpose();
  Vec psi = detail::flatten(left * right);
  const double n = psi.norm();
  if (n == 0.0) throw ArgumentError("chain: initial state vanishes");
  return psi / n;
}

// Gram matrix <Psi_L^j | Psi_L^j'> of the left blocks (before normalisation)
inline Mat left_block_gram(const ChainSpec& s) {
  validate(s);
  Mat start = s.purify ? identity(s.chi()) : Mat(basis_vector(s.chi(), 0).transpose());
  Mat left = detail::grow_left_block(s.mps, start, s.l_left);
  return left.adjoint() * left;
}

// rho_R(t) for t = 0..tmax
inline std::vector<Mat> evolve_chain(const ChainSpec& s) {
  Vec psi = build_initial_chain(s);
  const std::size_t q = s.q(), dim_r = ipow(q, s.l_r);
  const std::size_t lead = s.purify ? s.chi() : 1;
  const long x_min = -static_cast<long>(s.l_left), x_max = static_cast<long>(s.l_r) - 1;
  std::vector<Mat> out{detail::reduce_right(psi, dim_r)};
  for (std::size_t t = 0; t < s.tmax; ++t) {
    detail::apply_period(psi, s.gate.matrix, q, lead, x_min, x_max, 1, s.order);
    out.push_back(detail::reduce_right(psi, dim_r));
  }
  return out;
}

// Homogeneous chain  (left leg) L sites | R sites (right leg), normalised by
// 1/sqrt(chi) and evolved t periods.  Returns the reduced density of the R
// sites together with the right leg.  L = R = max(2t, min_sites) suffices by
// the lightcone.
inline Mat homogeneous_chain_density(const TwoSiteGate& gate, const MpsTensor& a, std::size_t t,
                                     std::size_t min_sites = 0) {
  if (gate.q != a.q) throw ArgumentError("homogeneous chain: q mismatch");
  validate(a);
  const std::size_t q = a.q, chi = a.chi;
  const std::size_t half = std::max<std::size_t>({2 * t, min_sites, 1});
  const std::size_t amps = checked_mul(chi * chi, checked_pow(q, 2 * half));
  if (amps > amplitude_cap()) throw CapacityError("homogeneous chain: " + std::to_string(amps) + " amplitudes exceed cap");
  Mat block = detail::grow_left_block(a, identity(chi), 2 * half);  // rows (l, sites), cols r
  Vec psi = detail::flatten(block) / std::sqrt(static_cast<double>(chi));
  const long x_min = -static_cast<long>(half), x_max = static_cast<long>(half) - 1;
  for (std::size_t k = 0; k < t; ++k)
    detail::apply_period(psi, gate.matrix, q, chi, x_min, x_max, chi, LayerOrder::EvenFirst);
  return detail::reduce_right(psi, ipow(q, half) * chi);
}

inline double renyi_trace_chain(const TwoSiteGate& gate, const MpsTensor& a, int n, std::size_t t,
                                std::size_t min_sites = 0) {
  if (n < 2) throw ArgumentError("renyi_trace_chain: n must be >= 2");
  return renyi_trace(homogeneous_chain_density(gate, a, t, min_sites), n);
}

inline double entropy_chain(const TwoSiteGate& gate, const MpsTensor& a, std::size_t t, std::size_t min_sites = 0) {
  return von_neumann_entropy(homogeneous_chain_density(gate, a, t, min_sites));
}

}  // namespace solvcirc
