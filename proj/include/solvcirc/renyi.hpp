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

// Replica transfer matrix for Tr[rho_R^n(t)].  Replica multi-indices are
// ordered (x_1, x'_1, x_2, x'_2, ..., x_n, x'_n), row-major, unprimed = ket.

#include <vector>

#include "solvcirc/mps.hpp"
#include "solvcirc/numerics.hpp"
#include "solvcirc/oracle.hpp"

namespace solvcirc {

enum class Pairing { Dot, Diamond };

struct PairingVector {
  Pairing kind;
  int n;
  std::size_t q;
  Vec vector;
};

namespace detail {
inline bool pairing_holds(Pairing kind, const std::vector<std::size_t>& d, int n) {
  for (int m = 0; m < n; ++m) {
    const std::size_t partner = kind == Pairing::Dot ? d[2 * m] : d[2 * ((m + 1) % n)];
    if (d[2 * m + 1] != partner) return false;
  }
  return true;
}

// enumerate all 2n-digit tuples in base q
template <class F>
void for_each_tuple(std::size_t q, int n, F&& f) {
  std::vector<std::size_t> d(2 * n, 0);
  const std::size_t total = ipow(q, 2 * n);
  for (std::size_t k = 0; k < total; ++k) {
    f(k, d);
    for (int i = 2 * n; i-- > 0;) {
      if (++d[i] < q) break;
      d[i] = 0;
    }
  }
}
}  // namespace detail

// dot: a'_m = a_m;  diamond: a'_m = a_{m+1} (cyclic)
inline PairingVector pairing_vector(Pairing kind, int n, std::size_t q) {
  if (n < 1) throw ArgumentError("pairing_vector: n must be >= 1");
  if (q < 1) throw ArgumentError("pairing_vector: q must be >= 1");
  Vec v = Vec::Zero(ipow(q, 2 * n));
  detail::for_each_tuple(q, n, [&](std::size_t k, const std::vector<std::size_t>& d) {
    if (detail::pairing_holds(kind, d, n)) v(k) = 1.0;
  });
  return {kind, n, q, v};
}

struct ReplicaTransferMatrix {
  int n;
  std::size_t chi;
  std::size_t q;
  Mat matrix;
};

// M_P[(j..), (k..)] = sum over physical tuples obeying P of
//   prod_m A^{a_m}_{j_m k_m} conj(A^{a'_m}_{j'_m k'_m})
inline Mat pairing_dressed_site(const MpsTensor& a, Pairing kind, int n) {
  validate(a);
  const std::size_t dim = ipow(a.chi, 2 * n);
  Mat m = Mat::Zero(dim, dim);
  detail::for_each_tuple(a.q, n, [&](std::size_t, const std::vector<std::size_t>& d) {
    if (!detail::pairing_holds(kind, d, n)) return;
    Mat term = Mat::Identity(1, 1);
    for (int r = 0; r < n; ++r) {
      term = kron(term, a.mats[d[2 * r]]);
      term = kron(term, Mat(a.mats[d[2 * r + 1]].conjugate()));
    }
    m += term;
  });
  return m;
}

inline constexpr double kReplicaCanonicalTol = 1e-10;

inline void require_replica_preconditions(const MpsTensor& a, int n) {
  if (n < 1) throw ArgumentError("transfer_matrix: n must be >= 1");
  const double l = check_left_canonical(a), r = check_right_canonical(a);
  if (l > kReplicaCanonicalTol || r > kReplicaCanonicalTol)
    throw PreconditionError("transfer_matrix: tensor must be left- and right-canonical");
  if (checked_pow(a.chi, 2 * n) > kDefaultReplicaCap)
    throw CapacityError("transfer_matrix: chi^(2n) exceeds " + std::to_string(kDefaultReplicaCap));
}

// T = M_diamond * M_dot
inline ReplicaTransferMatrix transfer_matrix(const MpsTensor& a, int n) {
  require_replica_preconditions(a, n);
  return {n, a.chi, a.q, pairing_dressed_site(a, Pairing::Diamond, n) * pairing_dressed_site(a, Pairing::Dot, n)};
}

// <dot| T^{2t} |diamond> with the unnormalised bond-space pairing vectors.
inline cplx renyi_boundary_overlap(const MpsTensor& a, int n, std::size_t t) {
  const auto tm = transfer_matrix(a, n);
  Vec v = pairing_vector(Pairing::Diamond, n, a.chi).vector;
  for (std::size_t k = 0; k < 2 * t; ++k) v = tm.matrix * v;
  return pairing_vector(Pairing::Dot, n, a.chi).vector.dot(v);  // dot() conjugates the real 0/1 left vector
}

// Tr[rho_R^n(t)] = chi^{-n} <dot| T^{2t} |diamond>.  The chi^{-n} factor
// normalises the semi-infinite left and right blocks (the bare overlap
// equals chi at t = 0, whereas Tr[rho^n] = chi^{1-n} there).
inline double renyi_trace_via_transfer(const MpsTensor& a, int n, std::size_t t) {
  if (n < 2) throw ArgumentError("renyi_trace_via_transfer: n must be >= 2");
  const cplx z = renyi_boundary_overlap(a, n, t) * std::pow(static_cast<double>(a.chi), -n);
  if (std::abs(z.imag()) > 1e-10) throw DriftError("renyi_trace_via_transfer: overlap is not real");
  return z.real();
}

struct VelocityResult {
  double lambda = 0.0;
  double velocity = 0.0;
  std::size_t multiplicity = 1;  // copies of lambda on the spectral circle
};

inline constexpr double kDominanceTol = 1e-8;

// v_E = 2 ln(lambda_n) / ((1 - n) ln q).  Repeated copies of the same real
// positive lambda are accepted (the growth rate is unambiguous); any other
// eigenvalue of the same modulus is a dominance error.
inline VelocityResult entanglement_velocity(const MpsTensor& a, int n) {
  if (n < 2) throw ArgumentError("entanglement_velocity: n must be >= 2");
  const auto tm = transfer_matrix(a, n);
  Eigen::ComplexEigenSolver<Mat> es(tm.matrix, false);
  const Vec& ev = es.eigenvalues();
  double rmax = 0.0;
  for (auto z : ev) rmax = std::max(rmax, std::abs(z));
  if (rmax <= kDominanceTol) throw DominanceError("entanglement_velocity: transfer matrix is nilpotent");
  VelocityResult out;
  out.lambda = rmax;
  out.multiplicity = 0;
  for (auto z : ev) {
    if (std::abs(std::abs(z) - rmax) > kDominanceTol) continue;
    if (std::abs(z - cplx(rmax)) > kDominanceTol)
      throw DominanceError("entanglement_velocity: non-real or competing dominant eigenvalue");
    ++out.multiplicity;
  }
  out.velocity = 2.0 * std::log(out.lambda) / ((1.0 - n) * std::log(static_cast<double>(a.q)));
  // snap roundoff at the two ends of the allowed range [0, 2]
  if (std::abs(out.velocity) < 1e-12) out.velocity = 0.0;
  if (std::abs(out.velocity - 2.0) < 1e-12) out.velocity = 2.0;
  return out;
}

// (1/sqrt chi) sum |l> (A^{a_1}..A^{a_4t})_{lr} |a_1..a_4t> |r>, flattened
// with the left leg first and the right leg last.
inline Vec temporal_state(const MpsTensor& a, std::size_t t) {
  validate(a);
  const std::size_t amps = checked_mul(a.chi * a.chi, checked_pow(a.q, 4 * t));
  if (amps > amplitude_cap()) throw CapacityError("temporal_state: state exceeds amplitude cap");
  Mat block = detail::grow_left_block(a, identity(a.chi), 4 * t);
  return detail::flatten(block) / std::sqrt(static_cast<double>(a.chi));
}

// Reduced density of O = {even-positioned sites of the 4t window (0-based,
// i.e. the 1st, 3rd, ... site)} plus the right bond leg.  E = the other
// sites plus the left leg.
inline Mat temporal_odd_density(const MpsTensor& a, std::size_t t) {
  const Vec phi = temporal_state(a, t);
  std::vector<std::size_t> dims{a.chi};
  for (std::size_t i = 0; i < 4 * t; ++i) dims.push_back(a.q);
  dims.push_back(a.chi);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < 4 * t; i += 2) keep.push_back(1 + i);
  keep.push_back(4 * t + 1);
  // pure state: rho_O from reshaping, never the full projector
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) kept[k] = true;
  std::size_t dk = 1, de = 1;
  for (std::size_t i = 0; i < n; ++i) (kept[i] ? dk : de) *= dims[i];
  Mat m = Mat::Zero(dk, de);
  std::vector<std::size_t> digit(n, 0);
  for (Eigen::Index idx = 0; idx < phi.size(); ++idx) {
    std::size_t ik = 0, ie = 0;
    for (std::size_t i = 0; i < n; ++i) (kept[i] ? ik : ie) = (kept[i] ? ik : ie) * dims[i] + digit[i];
    m(ik, ie) = phi(idx);
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return m * m.adjoint();
}

// n = 1 gives the von Neumann entropy, n >= 2 the Renyi entropy.
inline double temporal_state_entropy(const MpsTensor& a, int n, std::size_t t) {
  if (n < 1) throw ArgumentError("temporal_state_entropy: n must be >= 1");
  if (t == 0) return 0.0;
  const double rl = check_left_canonical(a), rr = check_right_canonical(a);
  if (rl > kReplicaCanonicalTol || rr > kReplicaCanonicalTol)
    throw PreconditionError("temporal_state_entropy: tensor must be left- and right-canonical");
  const Mat rho = temporal_odd_density(a, t);
  return n == 1 ? von_neumann_entropy(rho) : renyi_entropy(rho, n);
}

}  // namespace solvcirc
