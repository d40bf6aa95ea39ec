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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "solvcirc/numerics.hpp"

namespace solvcirc {

// Two-site basis index is a*q + b for |a>|b>, first factor = left site.

enum class GateFamily { Cartan, Q2Qt1, Q2Qt2, GeneralQQt, BothChiralityQ2, BothChiralityQ4plus, Haar, Custom };

inline std::string family_name(GateFamily f) {
  switch (f) {
    case GateFamily::Cartan: return "cartan";
    case GateFamily::Q2Qt1: return "q2_qt1";
    case GateFamily::Q2Qt2: return "q2_qt2";
    case GateFamily::GeneralQQt: return "general";
    case GateFamily::BothChiralityQ2: return "both_chirality_q2";
    case GateFamily::BothChiralityQ4plus: return "both_chirality_q4plus";
    case GateFamily::Haar: return "haar";
    case GateFamily::Custom: return "custom";
  }
  return "custom";
}

inline GateFamily family_from_name(const std::string& s) {
  for (auto f : {GateFamily::Cartan, GateFamily::Q2Qt1, GateFamily::Q2Qt2, GateFamily::GeneralQQt,
                 GateFamily::BothChiralityQ2, GateFamily::BothChiralityQ4plus, GateFamily::Haar,
                 GateFamily::Custom})
    if (family_name(f) == s) return f;
  throw ArgumentError("unknown gate family '" + s + "'");
}

struct TwoSiteGate {
  std::size_t q = 2;
  Mat matrix;
  GateFamily family = GateFamily::Custom;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
};

inline constexpr double kUnitaryTol = 1e-10;

namespace detail {

inline void require_unitary(const Mat& u, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(u.rows()) != dim || static_cast<std::size_t>(u.cols()) != dim)
    throw ArgumentError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                        std::to_string(dim) + " block");
  if (unitarity_residual(u) > kUnitaryTol) throw ArgumentError(std::string(what) + ": block is not unitary");
}

inline Mat z_rotation(double angle) {  // e^{-i angle sigma3}
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = std::exp(-kI * angle);
  m(1, 1) = std::exp(kI * angle);
  return m;
}

inline Mat direct_sum(const Mat& a, const Mat& b) {
  Mat m = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

// sum_a f[a] (x) |a><a|  (control on the right site)
inline Mat right_controlled(const std::vector<Mat>& f) {
  const std::size_t q = f.size();
  Mat w = Mat::Zero(q * q, q * q);
  for (std::size_t a = 0; a < q; ++a) w += kron(f[a], projector(q, a));
  return w;
}

inline TwoSiteGate finish(std::size_t q, Mat m, GateFamily fam, nlohmann::json params) {
  TwoSiteGate g;
  g.q = q;
  g.matrix = std::move(m);
  g.family = fam;
  g.params = std::move(params);
  return g;
}

}  // namespace detail

inline Mat swap_matrix(std::size_t q) {
  Mat s = Mat::Zero(q * q, q * q);
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t d = 0; d < q; ++d) s(d * q + c, c * q + d) = 1.0;
  return s;
}

inline TwoSiteGate swap_gate(std::size_t q) {
  return detail::finish(q, swap_matrix(q), GateFamily::Custom, {{"name", "swap"}});
}

inline Mat cartan_matrix(double j1, double j2, double j3) {
  Mat h = j1 * kron(pauli(1), pauli(1)) + j2 * kron(pauli(2), pauli(2)) + j3 * kron(pauli(3), pauli(3));
  return expm_hermitian_generator(h);
}

inline TwoSiteGate cartan_gate(double j1, double j2, double j3) {
  return detail::finish(2, cartan_matrix(j1, j2, j3), GateFamily::Cartan, {{"j1", j1}, {"j2", j2}, {"j3", j3}});
}

struct PauliCoefficients {
  std::array<cplx, 4> v;
  double norm_residual() const {
    double s = 0.0;
    for (auto c : v) s += std::norm(c);
    return std::abs(s - 1.0);
  }
};

inline PauliCoefficients pauli_coefficients(double j1, double j2, double j3) {
  const double c1 = std::cos(j1), c2 = std::cos(j2), c3 = std::cos(j3);
  const double s1 = std::sin(j1), s2 = std::sin(j2), s3 = std::sin(j3);
  return {{cplx(c1 * c2 * c3, -s1 * s2 * s3), cplx(c1 * s2 * s3, -s1 * c2 * c3),
           cplx(s1 * c2 * s3, -c1 * s2 * c3), cplx(s1 * s2 * c3, -c1 * c2 * s3)}};
}

// coefficients of a 4x4 matrix on sigma^a (x) sigma^a, by trace inner product
inline PauliCoefficients pauli_expansion(const Mat& u) {
  PauliCoefficients p;
  for (int a = 0; a < 4; ++a) p.v[a] = (kron(pauli(a), pauli(a)).adjoint() * u).trace() / 4.0;
  return p;
}

// U = e^{i phi} (u (x) e^{-i eps s3}) V[pi/4, pi/4, J] (e^{-i eta s3} (x) v)
inline TwoSiteGate gate_q2_qt1(double phi, double eps, double eta, double j, const Mat& u, const Mat& v) {
  detail::require_unitary(u, 2, "gate_q2_qt1 u");
  detail::require_unitary(v, 2, "gate_q2_qt1 v");
  Mat m = std::exp(kI * phi) * kron(u, detail::z_rotation(eps)) * cartan_matrix(kPi / 4, kPi / 4, j) *
          kron(detail::z_rotation(eta), v);
  return detail::finish(2, m, GateFamily::Q2Qt1, {{"phi", phi}, {"eps", eps}, {"eta", eta}, {"j", j}});
}

// dressed SWAP, e^{i phi} (u (x) I) S
inline TwoSiteGate gate_q2_qt2(double phi, const Mat& u) {
  detail::require_unitary(u, 2, "gate_q2_qt2 u");
  Mat m = std::exp(kI * phi) * kron(u, identity(2)) * swap_matrix(2);
  return detail::finish(2, m, GateFamily::Q2Qt2, {{"phi", phi}});
}

inline constexpr double kTiedBlockTol = 1e-10;

// U = e^{i phi} W2 S W1 (I (x) v),  W_k = sum_a f_k^(a) (x) |a><a|,
// f1^(a) = I_qt (+) g^(a).
//
// The f2 blocks attached to control levels a < qt must all be the same
// matrix.  Those levels carry the left-state span through S, and distinct
// blocks there would entangle the span with the outgoing site.
inline TwoSiteGate gate_general(std::size_t q, std::size_t qt, double phi, const Mat& v,
                                const std::vector<Mat>& g, const std::vector<Mat>& f2) {
  if (qt < 1 || qt > q) throw ArgumentError("gate_general: need 1 <= qt <= q");
  detail::require_unitary(v, q, "gate_general v");
  if (f2.size() != q) throw ArgumentError("gate_general: need q blocks f2");
  const bool empty_g = g.empty() && qt == q;
  if (!empty_g && g.size() != q) throw ArgumentError("gate_general: need q blocks g");
  std::vector<Mat> f1(q);
  for (std::size_t a = 0; a < q; ++a) {
    detail::require_unitary(f2[a], q, "gate_general f2");
    if (qt == q) {
      if (!empty_g && g[a].size() != 0) throw ArgumentError("gate_general: g blocks must be empty when qt = q");
      f1[a] = identity(q);
    } else {
      detail::require_unitary(g[a], q - qt, "gate_general g");
      f1[a] = detail::direct_sum(identity(qt), g[a]);
    }
  }
  for (std::size_t a = 1; a < qt; ++a)
    if (max_abs(f2[a] - f2[0]) > kTiedBlockTol)
      throw ArgumentError("gate_general: f2 blocks for control levels below qt must coincide");
  Mat m = std::exp(kI * phi) * detail::right_controlled(f2) * swap_matrix(q) * detail::right_controlled(f1) *
          kron(identity(q), v);
  return detail::finish(q, m, GateFamily::GeneralQQt, {{"qt", qt}, {"phi", phi}});
}

// e^{i phi} (e^{-i eps' s3} (x) e^{-i eps s3}) V[pi/4,pi/4,J3] (e^{-i eta s3} (x) e^{-i eta' s3})
inline TwoSiteGate gate_both_chirality_q2(double phi, double eps, double epsp, double eta, double etap, double j3) {
  Mat m = std::exp(kI * phi) * kron(detail::z_rotation(epsp), detail::z_rotation(eps)) *
          cartan_matrix(kPi / 4, kPi / 4, j3) * kron(detail::z_rotation(eta), detail::z_rotation(etap));
  return detail::finish(2, m, GateFamily::BothChiralityQ2,
                        {{"phi", phi}, {"eps", eps}, {"epsp", epsp}, {"eta", eta}, {"etap", etap}, {"j3", j3}});
}

// exp(-iH) read as the diagonal two-site phase sum_ab e^{-i H_ab} |ab><ab|.
inline Mat two_site_phase(const Mat& h) {
  const std::size_t q = h.rows();
  if (h.rows() != h.cols()) throw ArgumentError("two_site_phase: H must be square");
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      if (std::abs(h(a, b).imag()) > kHermitianTol) throw ArgumentError("two_site_phase: H must be real");
      if (std::abs(h(a, b) - h(b, a)) > kHermitianTol) throw ArgumentError("two_site_phase: H must be symmetric");
      if ((a < 2 || b < 2) && std::abs(h(a, b)) > kHermitianTol)
        throw ArgumentError("two_site_phase: H must vanish on rows and columns 0,1");
    }
  Mat gen = Mat::Zero(q * q, q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) gen(a * q + b, a * q + b) = h(a, b).real();
  return expm_hermitian_generator(gen);
}

namespace detail {
inline void require_block_form(const Mat& u, std::size_t q, const char* what) {
  require_unitary(u, q, what);
  if (max_abs(u.topLeftCorner(2, 2) - identity(2)) > kUnitaryTol || max_abs(u.topRightCorner(2, q - 2)) > kUnitaryTol ||
      max_abs(u.bottomLeftCorner(q - 2, 2)) > kUnitaryTol)
    throw ArgumentError(std::string(what) + ": block must have the form I_2 (+) w");
}
}  // namespace detail

// e^{i phi} (u+ (x) u-) S exp(-iH) (v- (x) v+)
inline TwoSiteGate gate_both_chirality_q4plus(std::size_t q, double phi, const Mat& uplus, const Mat& uminus,
                                              const Mat& vplus, const Mat& vminus, const Mat& h) {
  if (q < 4) throw ArgumentError("gate_both_chirality_q4plus: q must be >= 4");
  detail::require_block_form(uplus, q, "u+");
  detail::require_block_form(uminus, q, "u-");
  detail::require_block_form(vplus, q, "v+");
  detail::require_block_form(vminus, q, "v-");
  if (static_cast<std::size_t>(h.rows()) != q) throw ArgumentError("gate_both_chirality_q4plus: H must be q x q");
  Mat m = std::exp(kI * phi) * kron(uplus, uminus) * swap_matrix(q) * two_site_phase(h) * kron(vminus, vplus);
  return detail::finish(q, m, GateFamily::BothChiralityQ4plus, {{"phi", phi}});
}

inline TwoSiteGate swap_conjugate(const TwoSiteGate& u) {
  Mat s = swap_matrix(u.q);
  TwoSiteGate out = u;
  out.matrix = s * u.matrix * s;
  out.params["swap_conjugated"] = !u.params.value("swap_conjugated", false);
  return out;
}

inline double is_dual_unitary(const TwoSiteGate& u) { return unitarity_residual(reshuffle(u.matrix, u.q)); }

// ---- seeded samplers -----------------------------------------------------
// Phases and z-angles uniform in [0, 2 pi), J uniform in [0, pi/2), blocks Haar.

inline double sample_angle(Rng& rng) { return rng.uniform(0.0, 2.0 * kPi); }

inline TwoSiteGate sample_q2_qt1(Rng& rng) {
  double phi = sample_angle(rng), eps = sample_angle(rng), eta = sample_angle(rng);
  double j = rng.uniform(0.0, kPi / 2);
  Mat u = haar_unitary(2, rng, true), v = haar_unitary(2, rng, true);
  auto g = gate_q2_qt1(phi, eps, eta, j, u, v);
  g.seed = rng.seed;
  return g;
}

inline TwoSiteGate sample_q2_qt2(Rng& rng) {
  double phi = sample_angle(rng);
  auto g = gate_q2_qt2(phi, haar_unitary(2, rng));
  g.seed = rng.seed;
  return g;
}

inline TwoSiteGate sample_general(std::size_t q, std::size_t qt, Rng& rng) {
  double phi = sample_angle(rng);
  Mat v = haar_unitary(q, rng);
  std::vector<Mat> g, f2;
  if (qt < q)
    for (std::size_t a = 0; a < q; ++a) g.push_back(haar_unitary(q - qt, rng));
  Mat shared = haar_unitary(q, rng);
  for (std::size_t a = 0; a < q; ++a) f2.push_back(a < qt ? shared : haar_unitary(q, rng));
  auto out = gate_general(q, qt, phi, v, g, f2);
  out.seed = rng.seed;
  return out;
}

inline TwoSiteGate sample_both_chirality_q2(Rng& rng) {
  double phi = sample_angle(rng), eps = sample_angle(rng), epsp = sample_angle(rng);
  double eta = sample_angle(rng), etap = sample_angle(rng), j3 = rng.uniform(0.0, kPi / 2);
  auto g = gate_both_chirality_q2(phi, eps, epsp, eta, etap, j3);
  g.seed = rng.seed;
  return g;
}

inline TwoSiteGate sample_both_chirality_q4plus(std::size_t q, Rng& rng) {
  double phi = sample_angle(rng);
  auto block = [&] { return detail::direct_sum(identity(2), haar_unitary(q - 2, rng, true)); };
  Mat up = block(), um = block(), vp = block(), vm = block();
  Mat h = Mat::Zero(q, q);
  for (std::size_t a = 2; a < q; ++a)
    for (std::size_t b = a; b < q; ++b) h(a, b) = h(b, a) = rng.uniform(-kPi, kPi);
  auto g = gate_both_chirality_q4plus(q, phi, up, um, vp, vm, h);
  g.seed = rng.seed;
  return g;
}

inline TwoSiteGate sample_haar_gate(std::size_t q, Rng& rng) {
  auto g = detail::finish(q, haar_unitary(q * q, rng), GateFamily::Haar, nlohmann::json::object());
  g.seed = rng.seed;
  return g;
}

}  // namespace solvcirc
