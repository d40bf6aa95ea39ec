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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "solvcirc/errors.hpp"

namespace solvcirc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// ---- capacity caps -------------------------------------------------------

inline constexpr std::size_t kDefaultAmplitudeCap = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultAxisCap = std::size_t{1} << 18;
inline constexpr std::size_t kDefaultInfluenceCap = std::size_t{1} << 24;
inline constexpr std::size_t kDefaultReplicaCap = 4096;

// SOLVCIRC_CAP overrides the amplitude cap; anything unparsable is ignored.
inline std::size_t amplitude_cap() {
  if (const char* env = std::getenv("SOLVCIRC_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultAmplitudeCap;
}

inline std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

// overflow-safe product, saturating at SIZE_MAX
inline std::size_t checked_pow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > SIZE_MAX / base) return SIZE_MAX;
    r *= base;
  }
  return r;
}

inline std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > SIZE_MAX / a) return SIZE_MAX;
  return a * b;
}

// ---- small helpers -------------------------------------------------------

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline double unitarity_residual(const Mat& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

inline double hermiticity_residual(const Mat& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return max_abs(m - m.adjoint());
}

inline Mat identity(std::size_t d) { return Mat::Identity(d, d); }

inline Mat pauli(int k) {
  Mat s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw ArgumentError("pauli index must be 0..3");
  }
  return s;
}

inline Mat projector(std::size_t q, std::size_t k) {
  if (k >= q) throw ArgumentError("projector level out of range");
  Mat p = Mat::Zero(q, q);
  p(k, k) = 1.0;
  return p;
}

inline Vec basis_vector(std::size_t d, std::size_t k) {
  if (k >= d) throw ArgumentError("basis index out of range");
  Vec v = Vec::Zero(d);
  v(k) = 1.0;
  return v;
}

// ---- kron / partial trace / reshuffle -------------------------------------

inline Mat kron(const Mat& a, const Mat& b, std::size_t axis_cap = kDefaultAxisCap) {
  if (!a.allFinite() || !b.allFinite()) throw ArgumentError("kron: non-finite input");
  const std::size_t r = checked_mul(a.rows(), b.rows());
  const std::size_t c = checked_mul(a.cols(), b.cols());
  if (r > axis_cap || c > axis_cap)
    throw DimensionError("kron: result of " + std::to_string(r) + "x" + std::to_string(c) +
                         " exceeds axis cap " + std::to_string(axis_cap));
  Mat out(r, c);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Reduced matrix on the factors listed in `keep` (in their original order).
// Factor 0 is the most significant digit of the row index.
inline Mat partial_trace(const Mat& rho, std::span<const std::size_t> dims,
                         std::span<const std::size_t> keep) {
  if (rho.rows() != rho.cols()) throw ShapeError("partial_trace: matrix not square");
  std::size_t total = 1;
  for (auto d : dims) total = checked_mul(total, d);
  if (total != static_cast<std::size_t>(rho.rows()))
    throw ShapeError("partial_trace: product of dims does not match matrix dimension");
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw ArgumentError("partial_trace: keep index out of range");
    if (kept[k]) throw ArgumentError("partial_trace: duplicate keep index");
    kept[k] = true;
  }
  std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  std::size_t dk = 1, dt = 1;
  for (std::size_t i = 0; i < n; ++i) (kept[i] ? dk : dt) *= dims[i];

  // offsets of kept and traced multi-indices into the flat index
  auto offsets = [&](bool want_kept, std::size_t count) {
    std::vector<std::size_t> off(count, 0);
    std::vector<std::size_t> digit(n, 0);
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t o = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (kept[i] == want_kept) o += digit[i] * stride[i];
      off[c] = o;
      for (std::size_t i = n; i-- > 0;) {
        if (kept[i] != want_kept) continue;
        if (++digit[i] < dims[i]) break;
        digit[i] = 0;
      }
    }
    return off;
  };
  const auto koff = offsets(true, dk);
  const auto toff = offsets(false, dt);

  Mat out = Mat::Zero(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) s += rho(koff[i] + toff[t], koff[j] + toff[t]);
      out(i, j) = s;
    }
  return out;
}

inline Mat partial_trace(const Mat& rho, std::initializer_list<std::size_t> dims,
                         std::initializer_list<std::size_t> keep) {
  std::vector<std::size_t> d(dims), k(keep);
  return partial_trace(rho, std::span<const std::size_t>(d), std::span<const std::size_t>(k));
}

// Realignment reading a two-site gate sideways.  Element convention:
//   R[(x,y),(z,w)] = U[(w,y),(z,x)]
// With this choice the solvable identity R (P (x) I) R^+ = I (x) P holds
// exactly when U maps |alpha, x> to u|x> (x) |alpha> on the left-state span.
// It is an involution, fixes SWAP and sends the identity to a rank-1 matrix.
inline Mat reshuffle(const Mat& u, std::size_t q) {
  if (u.rows() != u.cols()) throw ShapeError("reshuffle: matrix not square");
  if (static_cast<std::size_t>(u.rows()) != q * q)
    throw ShapeError("reshuffle: matrix is not q^2 x q^2");
  Mat r(q * q, q * q);
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y)
      for (std::size_t z = 0; z < q; ++z)
        for (std::size_t w = 0; w < q; ++w) r(x * q + y, z * q + w) = u(w * q + y, z * q + x);
  return r;
}

// ---- Hermitian eigen-backed functions ------------------------------------

inline constexpr double kHermitianTol = 1e-10;

// e^{-i h} for Hermitian h
inline Mat expm_hermitian_generator(const Mat& h) {
  if (h.rows() != h.cols()) throw ShapeError("expm_hermitian_generator: matrix not square");
  if (hermiticity_residual(h) > kHermitianTol)
    throw ArgumentError("expm_hermitian_generator: generator is not Hermitian");
  Mat hh = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(hh);
  Vec phases = (-kI * es.eigenvalues().cast<cplx>().array()).exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline RealVec hermitian_eigenvalues(const Mat& m) {
  Mat hh = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(hh, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double von_neumann_entropy(const Mat& rho) {
  if (rho.rows() != rho.cols()) throw ShapeError("von_neumann_entropy: matrix not square");
  RealVec ev = hermitian_eigenvalues(rho);
  if (ev.size() > 0 && ev.minCoeff() < -1e-6)
    throw PositivityError("von_neumann_entropy: eigenvalue " + std::to_string(ev.minCoeff()));
  double s = 0.0;
  for (double l : ev) {
    l = std::clamp(l, 0.0, 1.0);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

inline double renyi_trace(const Mat& rho, int n) {
  if (n < 2) throw ArgumentError("renyi_trace: n must be >= 2");
  if (rho.rows() != rho.cols()) throw ShapeError("renyi_trace: matrix not square");
  Mat p = rho;
  for (int k = 1; k < n; ++k) p = p * rho;
  return p.trace().real();
}

inline double renyi_entropy(const Mat& rho, int n) {
  return std::log(renyi_trace(rho, n)) / (1.0 - n);
}

inline double trace_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("trace_distance: shape mismatch");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

// ---- random numbers ------------------------------------------------------

// Seed splitting: child stream k of seed s is splitmix64(s + golden*(k+1)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

struct Rng {
  std::uint64_t seed;
  std::string algorithm = "mt19937_64/box-muller";
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t s) : seed(s), engine(s) {}

  // 53-bit uniform in [0,1)
  double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller written out so the stream does not depend on the standard
  // library's normal_distribution.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Mat haar_unitary(std::size_t dim, Rng& rng, bool special = false) {
  if (dim == 0) throw ArgumentError("haar_unitary: dim must be >= 1");
  Mat z(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i)
      z(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(dim, dim);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < dim; ++k) {
    cplx d = r(k, k);
    double a = std::abs(d);
    q.col(k) *= (a > 0.0 ? d / a : cplx(1.0));
  }
  if (special) {
    cplx det = q.determinant();
    q *= std::pow(det, -1.0 / static_cast<double>(dim));
  }
  return q;
}

inline Mat random_hermitian(std::size_t dim, Rng& rng) {
  Mat z(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) z(i, j) = cplx(rng.normal(), rng.normal());
  return 0.5 * (z + z.adjoint());
}

inline Mat random_density_matrix(std::size_t dim, Rng& rng) {
  Mat z(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) z(i, j) = cplx(rng.normal(), rng.normal());
  Mat rho = z * z.adjoint();
  return rho / rho.trace();
}

// ---- local operator application ------------------------------------------

// Rows of x are indexed (l, o, r) with o of size od the operator's factor.
// Replaces x with (I_l (x) op (x) I_r) x in place.
inline void apply_local(Mat& x, const Mat& op, std::size_t ld, std::size_t od, std::size_t rd) {
  if (static_cast<std::size_t>(op.rows()) != od || static_cast<std::size_t>(op.cols()) != od)
    throw ShapeError("apply_local: operator size mismatch");
  if (static_cast<std::size_t>(x.rows()) != ld * od * rd)
    throw ShapeError("apply_local: state size mismatch");
  const Eigen::Index cols = x.cols(), rows = x.rows();
  if (rd == 1) {
    // the od-block is contiguous down each column
    using Outer = Eigen::Map<Mat, 0, Eigen::OuterStride<>>;
    Mat tmp(od, cols);
    for (std::size_t l = 0; l < ld; ++l) {
      Outer blk(x.data() + l * od, od, cols, Eigen::OuterStride<>(rows));
      tmp.noalias() = op * blk;
      blk = tmp;
    }
    return;
  }
  // within one column a (l) slab is an rd x od column-major matrix M(r, i)
  const Mat opt = op.transpose();
  Mat tmp(rd, od);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (std::size_t l = 0; l < ld; ++l) {
      Eigen::Map<Mat> m(x.data() + c * rows + l * od * rd, rd, od);
      tmp.noalias() = m * opt;
      m = tmp;
    }
}

inline void apply_local(Vec& x, const Mat& op, std::size_t ld, std::size_t od, std::size_t rd) {
  Mat m = Eigen::Map<Mat>(x.data(), x.size(), 1);
  apply_local(m, op, ld, od, rd);
  x = Eigen::Map<Vec>(m.data(), m.size());
}

// rho <- A rho A^+ with A = I_l (x) op (x) I_r
inline Mat conjugate_local(const Mat& rho, const Mat& op, std::size_t ld, std::size_t od,
                           std::size_t rd) {
  Mat y = rho;
  apply_local(y, op, ld, od, rd);
  Mat z = y.adjoint();
  apply_local(z, op, ld, od, rd);
  return z.adjoint();
}

}  // namespace solvcirc
