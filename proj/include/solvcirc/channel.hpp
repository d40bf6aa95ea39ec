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

#include "solvcirc/mps.hpp"
#include "solvcirc/numerics.hpp"

namespace solvcirc {

// Kraus operators on ancilla (x) boundary site, ancilla factor first.
struct BoundaryChannel {
  std::size_t chi = 1;
  std::size_t q = 2;
  std::vector<Mat> kraus;
};

namespace detail {
inline Mat ket_bra(std::size_t q, std::size_t b, std::size_t a) {
  Mat m = Mat::Zero(q, q);
  m(b, a) = 1.0;
  return m;
}
}  // namespace detail

// K_{a,a'} = sum_b A^(b) A^(a) (x) |b><a'|, ordered (a, a') row-major
inline BoundaryChannel kraus_from_mps(const MpsTensor& t) {
  const double r = check_left_canonical(t);
  if (r > kCanonicalTol) throw PreconditionError("kraus_from_mps: tensor not left-canonical (residual " + std::to_string(r) + ")");
  BoundaryChannel c{t.chi, t.q, {}};
  for (std::size_t a = 0; a < t.q; ++a)
    for (std::size_t ap = 0; ap < t.q; ++ap) {
      Mat k = Mat::Zero(t.chi * t.q, t.chi * t.q);
      for (std::size_t b = 0; b < t.q; ++b) k += kron(t.mats[b] * t.mats[a], detail::ket_bra(t.q, b, ap));
      c.kraus.push_back(std::move(k));
    }
  return c;
}

// K_{a,a'} = sum_b A^(b) B^(a) (x) |b><a'|
inline BoundaryChannel kraus_from_two_site(const TwoSiteMps& t) {
  const double r = check_canonical(t);
  if (r > kCanonicalTol) throw PreconditionError("kraus_from_two_site: tensors not canonical (residual " + std::to_string(r) + ")");
  BoundaryChannel c{t.chi, t.q, {}};
  for (std::size_t a = 0; a < t.q; ++a)
    for (std::size_t ap = 0; ap < t.q; ++ap) {
      Mat k = Mat::Zero(t.chi * t.q, t.chi * t.q);
      for (std::size_t b = 0; b < t.q; ++b) k += kron(t.matsA[b] * t.matsB[a], detail::ket_bra(t.q, b, ap));
      c.kraus.push_back(std::move(k));
    }
  return c;
}

// K_{(a g, a' g')} = sum_b A^(b,g') A^(a,g) (x) |b><a'|, ordered (a, g, a', g')
inline BoundaryChannel kraus_from_lpdo(const Lpdo& l) {
  const double r = lpdo_check_canonical(l);
  if (r > kCanonicalTol) throw PreconditionError("kraus_from_lpdo: tensor not canonical (residual " + std::to_string(r) + ")");
  BoundaryChannel c{l.chi, l.q, {}};
  for (std::size_t a = 0; a < l.q; ++a)
    for (std::size_t g = 0; g < l.d; ++g)
      for (std::size_t ap = 0; ap < l.q; ++ap)
        for (std::size_t gp = 0; gp < l.d; ++gp) {
          Mat k = Mat::Zero(l.chi * l.q, l.chi * l.q);
          for (std::size_t b = 0; b < l.q; ++b) k += kron(l.at(b, gp) * l.at(a, g), detail::ket_bra(l.q, b, ap));
          c.kraus.push_back(std::move(k));
        }
  return c;
}

inline double check_cptp(const BoundaryChannel& c) {
  const std::size_t n = c.chi * c.q;
  Mat s = Mat::Zero(n, n);
  for (const auto& k : c.kraus) {
    if (static_cast<std::size_t>(k.rows()) != n || static_cast<std::size_t>(k.cols()) != n)
      throw ShapeError("check_cptp: Kraus operator has wrong size");
    s += k.adjoint() * k;
  }
  return max_abs(s - identity(n));
}

// Folded (vectorised) superoperator sum_mu K (x) K*, acting on vec(rho)
// with vec index (row, col) -> row * dim + col.
inline Mat superoperator(const BoundaryChannel& c) {
  const std::size_t n = c.chi * c.q;
  Mat s = Mat::Zero(n * n, n * n);
  for (const auto& k : c.kraus) s += kron(k, Mat(k.conjugate()));
  return s;
}

// sum_mu (K_mu (x) I_rest) rho (K_mu (x) I_rest)^+ ; rho lives on ancilla (x) site_0 (x) rest.
inline Mat apply_channel(const BoundaryChannel& c, const Mat& rho) {
  const std::size_t n = c.chi * c.q;
  if (rho.rows() != rho.cols() || rho.rows() == 0 || static_cast<std::size_t>(rho.rows()) % n != 0)
    throw ArgumentError("apply_channel: state dimension is not a multiple of chi*q");
  const std::size_t rest = rho.rows() / n;
  // act with the superoperator on the n x n blocks: X((i,j), (r,r')) = rho((i,r), (j,r'))
  const Mat s = superoperator(c);
  Mat x(n * n, rest * rest);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t rp = 0; rp < rest; ++rp)
        for (std::size_t r = 0; r < rest; ++r) x(i * n + j, r * rest + rp) = rho(i * rest + r, j * rest + rp);
  const Mat y = s * x;
  Mat out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t rp = 0; rp < rest; ++rp)
        for (std::size_t r = 0; r < rest; ++r) out(i * rest + r, j * rest + rp) = y(i * n + j, r * rest + rp);
  return out;
}

}  // namespace solvcirc
