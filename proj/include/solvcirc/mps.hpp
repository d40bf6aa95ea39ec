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

#include <vector>

#include "solvcirc/numerics.hpp"

namespace solvcirc {

// Translation-invariant tensor {A^(a)}, a = 0..q-1, each chi x chi.
struct MpsTensor {
  std::size_t q = 0;
  std::size_t chi = 0;
  std::vector<Mat> mats;
};

// Alternating tensors: A^(a) is chi x chip, B^(b) is chip x chi.
struct TwoSiteMps {
  std::size_t q = 0;
  std::size_t chi = 0;
  std::size_t chip = 0;
  std::vector<Mat> matsA;
  std::vector<Mat> matsB;
};

// Locally purified tensor; mats[a * d + gamma] = A^(a, gamma).
struct Lpdo {
  std::size_t q = 0;
  std::size_t chi = 0;
  std::size_t d = 1;
  std::vector<Mat> mats;

  const Mat& at(std::size_t a, std::size_t gamma) const { return mats[a * d + gamma]; }
};

inline constexpr double kCanonicalTol = 1e-10;

inline void validate(const MpsTensor& t) {
  if (t.q == 0 || t.chi == 0) throw ArgumentError("mps: q and chi must be positive");
  if (t.mats.size() != t.q) throw ShapeError("mps: need q matrices");
  for (const auto& m : t.mats) {
    if (static_cast<std::size_t>(m.rows()) != t.chi || static_cast<std::size_t>(m.cols()) != t.chi)
      throw ShapeError("mps: matrices must be chi x chi");
    if (!m.allFinite()) throw ArgumentError("mps: non-finite entry");
  }
}

inline void validate(const TwoSiteMps& t) {
  if (t.q == 0 || t.chi == 0 || t.chip == 0) throw ArgumentError("two-site mps: dimensions must be positive");
  if (t.matsA.size() != t.q || t.matsB.size() != t.q) throw ShapeError("two-site mps: need q matrices each");
  for (std::size_t a = 0; a < t.q; ++a) {
    if (static_cast<std::size_t>(t.matsA[a].rows()) != t.chi || static_cast<std::size_t>(t.matsA[a].cols()) != t.chip)
      throw ShapeError("two-site mps: A must be chi x chi'");
    if (static_cast<std::size_t>(t.matsB[a].rows()) != t.chip || static_cast<std::size_t>(t.matsB[a].cols()) != t.chi)
      throw ShapeError("two-site mps: B must be chi' x chi");
  }
}

inline void validate(const Lpdo& l) {
  if (l.q == 0 || l.chi == 0 || l.d == 0) throw ArgumentError("lpdo: dimensions must be positive");
  if (l.mats.size() != l.q * l.d) throw ShapeError("lpdo: need q*d matrices");
  for (const auto& m : l.mats)
    if (static_cast<std::size_t>(m.rows()) != l.chi || static_cast<std::size_t>(m.cols()) != l.chi)
      throw ShapeError("lpdo: matrices must be chi x chi");
}

inline double check_left_canonical(const MpsTensor& t) {
  validate(t);
  Mat s = Mat::Zero(t.chi, t.chi);
  for (const auto& a : t.mats) s += a.adjoint() * a;
  return max_abs(s - identity(t.chi));
}

inline double check_right_canonical(const MpsTensor& t) {
  validate(t);
  Mat s = Mat::Zero(t.chi, t.chi);
  for (const auto& a : t.mats) s += a * a.adjoint();
  return max_abs(s - identity(t.chi));
}

inline double check_canonical(const TwoSiteMps& t) {
  validate(t);
  Mat s = Mat::Zero(t.chi, t.chi);
  for (const auto& a : t.matsA)
    for (const auto& b : t.matsB) {
      Mat ab = a * b;
      s += ab.adjoint() * ab;
    }
  return max_abs(s - identity(t.chi));
}

inline double lpdo_check_canonical(const Lpdo& l) {
  validate(l);
  Mat s = Mat::Zero(l.chi, l.chi);
  for (const auto& a : l.mats) s += a.adjoint() * a;
  return max_abs(s - identity(l.chi));
}

// The kets |A_jk> = sum_a A^(a)_jk |a>, one column per (j,k).
inline Mat ket_matrix(const MpsTensor& t) {
  validate(t);
  Mat m(t.q, t.chi * t.chi);
  for (std::size_t a = 0; a < t.q; ++a)
    for (std::size_t j = 0; j < t.chi; ++j)
      for (std::size_t k = 0; k < t.chi; ++k) m(a, j * t.chi + k) = t.mats[a](j, k);
  return m;
}

inline Mat ket_matrix(const TwoSiteMps& t) {
  validate(t);
  const std::size_t n = t.chi * t.chip;
  Mat m(t.q, 2 * n);
  for (std::size_t a = 0; a < t.q; ++a) {
    m.row(a).head(n) = Eigen::Map<const Eigen::RowVectorXcd>(Mat(t.matsA[a].transpose()).data(), n);
    m.row(a).tail(n) = Eigen::Map<const Eigen::RowVectorXcd>(Mat(t.matsB[a].transpose()).data(), n);
  }
  return m;
}

inline Mat ket_matrix(const Lpdo& l) {
  validate(l);
  const std::size_t n = l.chi * l.chi;
  Mat m(l.q, n * l.d);
  for (std::size_t a = 0; a < l.q; ++a)
    for (std::size_t g = 0; g < l.d; ++g)
      for (std::size_t j = 0; j < l.chi; ++j)
        for (std::size_t k = 0; k < l.chi; ++k) m(a, g * n + j * l.chi + k) = l.at(a, g)(j, k);
  return m;
}

inline std::size_t numerical_rank(const Mat& m, double rel_tol = 1e-10) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

// dim span{|A_jk>}
inline std::size_t subspace_dimension(const MpsTensor& t) {
  Mat m = ket_matrix(t);
  if (max_abs(m) == 0.0) throw DegenerateInputError("subspace_dimension: all-zero tensor");
  return numerical_rank(m);
}

// Rank of the two-site blocking map (a,b) -> A^(a) A^(b).  Diagnostic only.
inline std::size_t blocking_rank(const MpsTensor& t) {
  validate(t);
  Mat m(t.q * t.q, t.chi * t.chi);
  for (std::size_t a = 0; a < t.q; ++a)
    for (std::size_t b = 0; b < t.q; ++b) {
      Mat p = t.mats[a] * t.mats[b];
      for (std::size_t j = 0; j < t.chi; ++j)
        for (std::size_t k = 0; k < t.chi; ++k) m(a * t.q + b, j * t.chi + k) = p(j, k);
    }
  return numerical_rank(m);
}

// Interpolates between GHZ (theta -> 0) and cluster (theta = pi/4) states.
inline MpsTensor ghz_cluster_family(double theta, std::size_t q) {
  if (q < 2) throw ArgumentError("ghz_cluster_family: q must be >= 2");
  if (!(theta > 0.0) || theta > kPi / 4 + 1e-15) throw ArgumentError("ghz_cluster_family: theta must lie in (0, pi/4]");
  const double c = std::cos(theta), s = std::sin(theta);
  MpsTensor t{q, 2, std::vector<Mat>(q, Mat::Zero(2, 2))};
  t.mats[0] << c, s, 0, 0;
  t.mats[1] << 0, 0, -s, c;
  return t;
}

inline MpsTensor cluster_mps() { return ghz_cluster_family(kPi / 4, 2); }

inline MpsTensor product_state_mps(const Vec& ket) {
  if (ket.size() == 0 || ket.norm() == 0.0) throw ArgumentError("product_state_mps: zero vector");
  if (std::abs(ket.norm() - 1.0) > 1e-10) throw ArgumentError("product_state_mps: ket must be normalized");
  MpsTensor t{static_cast<std::size_t>(ket.size()), 1, {}};
  for (Eigen::Index a = 0; a < ket.size(); ++a) t.mats.push_back(Mat::Constant(1, 1, ket(a)));
  return t;
}

inline MpsTensor product_state_mps(std::size_t q, std::size_t level) {
  return product_state_mps(basis_vector(q, level));
}

// D-fold LPDO with A^(a,gamma) = w_gamma A^(a); sum |w|^2 = 1 keeps it canonical.
inline Lpdo lpdo_from_mps(const MpsTensor& t, const std::vector<double>& weights = {1.0}) {
  validate(t);
  Lpdo l{t.q, t.chi, weights.size(), {}};
  if (weights.empty()) throw ArgumentError("lpdo_from_mps: need at least one weight");
  for (std::size_t a = 0; a < t.q; ++a)
    for (double w : weights) l.mats.push_back(w * t.mats[a]);
  return l;
}

inline TwoSiteMps two_site_from(const MpsTensor& a, const MpsTensor& b) {
  validate(a);
  validate(b);
  if (a.q != b.q) throw ArgumentError("two_site_from: physical dimensions differ");
  if (a.chi != b.chi) throw ArgumentError("two_site_from: square tensors need equal chi");
  return TwoSiteMps{a.q, a.chi, b.chi, a.mats, b.mats};
}

// apply a q x q unitary to the physical leg
inline MpsTensor rotate_physical(const MpsTensor& t, const Mat& w) {
  validate(t);
  MpsTensor out{t.q, t.chi, std::vector<Mat>(t.q, Mat::Zero(t.chi, t.chi))};
  for (std::size_t b = 0; b < t.q; ++b)
    for (std::size_t a = 0; a < t.q; ++a) out.mats[b] += w(b, a) * t.mats[a];
  return out;
}

}  // namespace solvcirc
