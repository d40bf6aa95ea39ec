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

#include <json.hpp>

#include "solvcirc/channel.hpp"
#include "solvcirc/gates.hpp"
#include "solvcirc/mps.hpp"
#include "solvcirc/tensor.hpp"

namespace solvcirc {

struct SolvableResidual {
  double max_norm = 0.0;
  double frobenius = 0.0;   // of the worst pair
  std::size_t worst_p = 0;  // column indices into the ket matrix
  std::size_t worst_pp = 0;
};

// max over ket pairs of || R (|p><p'| (x) I) R^+ - I (x) |p><p'| ||
inline SolvableResidual solvable_residual_kets(const Mat& u, std::size_t q, const Mat& kets) {
  if (static_cast<std::size_t>(u.rows()) != q * q || static_cast<std::size_t>(kets.rows()) != q)
    throw ArgumentError("solvable check: gate and tensor dimensions differ");
  const Mat r = reshuffle(u, q);
  const Mat rd = r.adjoint();
  const Mat iq = identity(q);
  SolvableResidual out;
  for (Eigen::Index p = 0; p < kets.cols(); ++p)
    for (Eigen::Index pp = 0; pp < kets.cols(); ++pp) {
      Mat op = kets.col(p) * kets.col(pp).adjoint();
      Mat diff = r * kron(op, iq) * rd - kron(iq, op);
      double m = max_abs(diff);
      if (m > out.max_norm || (p == 0 && pp == 0)) {
        out.max_norm = m;
        out.frobenius = diff.norm();
        out.worst_p = p;
        out.worst_pp = pp;
      }
    }
  return out;
}

inline double check_solvable_left(const TwoSiteGate& u, const MpsTensor& a) {
  if (u.q != a.q) throw ArgumentError("check_solvable_left: q mismatch");
  return solvable_residual_kets(u.matrix, u.q, ket_matrix(a)).max_norm;
}

inline double check_solvable_left(const TwoSiteGate& u, const TwoSiteMps& a) {
  if (u.q != a.q) throw ArgumentError("check_solvable_left: q mismatch");
  return solvable_residual_kets(u.matrix, u.q, ket_matrix(a)).max_norm;
}

inline double check_solvable_left(const TwoSiteGate& u, const Lpdo& a) {
  if (u.q != a.q) throw ArgumentError("check_solvable_left: q mismatch");
  return solvable_residual_kets(u.matrix, u.q, ket_matrix(a)).max_norm;
}

template <class Tensorish>
double check_solvable_right(const TwoSiteGate& u, const Tensorish& a) {
  return check_solvable_left(swap_conjugate(u), a);
}

// sigma3 entering on the left leaves on the right: U (s3 (x) I) U^dag = I (x) s3,
// equivalently U^dag (I (x) s3) U = s3 (x) I.  This is the placement of the
// adjoint that the q~=1 family actually satisfies.
inline double check_soliton(const TwoSiteGate& u) {
  if (u.q != 2) throw ArgumentError("check_soliton: only defined for q = 2");
  return max_abs(u.matrix * kron(pauli(3), identity(2)) * u.matrix.adjoint() - kron(identity(2), pauli(3)));
}

struct SolvabilityReport {
  double left_residual = 0.0;
  double right_residual = 0.0;
  std::optional<double> soliton_residual;
  double dual_unitarity_residual = 0.0;
  double left_frobenius = 0.0;
  double right_frobenius = 0.0;
  std::array<std::size_t, 4> left_worst{};  // (j, j', k, k')
  std::array<std::size_t, 4> right_worst{};
};

inline SolvabilityReport solvability_report(const TwoSiteGate& u, const MpsTensor& a) {
  if (u.q != a.q) throw ArgumentError("solvability_report: q mismatch");
  const Mat kets = ket_matrix(a);
  auto unpack = [&](const SolvableResidual& r) {
    return std::array<std::size_t, 4>{r.worst_p / a.chi, r.worst_pp / a.chi, r.worst_p % a.chi, r.worst_pp % a.chi};
  };
  SolvabilityReport rep;
  auto l = solvable_residual_kets(u.matrix, u.q, kets);
  auto r = solvable_residual_kets(swap_conjugate(u).matrix, u.q, kets);
  rep.left_residual = l.max_norm;
  rep.left_frobenius = l.frobenius;
  rep.left_worst = unpack(l);
  rep.right_residual = r.max_norm;
  rep.right_frobenius = r.frobenius;
  rep.right_worst = unpack(r);
  if (u.q == 2) rep.soliton_residual = check_soliton(u);
  rep.dual_unitarity_residual = is_dual_unitary(u);
  return rep;
}

inline nlohmann::json to_json(const SolvabilityReport& r) {
  nlohmann::json j;
  j["left_residual"] = r.left_residual;
  j["right_residual"] = r.right_residual;
  j["soliton_residual"] = r.soliton_residual ? nlohmann::json(*r.soliton_residual) : nlohmann::json(nullptr);
  j["dual_unitarity_residual"] = r.dual_unitarity_residual;
  j["left_frobenius"] = r.left_frobenius;
  j["right_frobenius"] = r.right_frobenius;
  j["left_worst"] = r.left_worst;
  j["right_worst"] = r.right_worst;
  return j;
}

// ---- influence matrix ----------------------------------------------------
//
// Legs of the dense influence matrix, in storage order:
//   bottom ancilla bond (chi^2, folded (j, j')), then for t = 1..T the
//   boundary-site leg entering the channel (in_t) and leaving it (out_t),
//   each folded (a, a') of size q^2.
// The ancilla is traced after the last step.

namespace detail {

inline constexpr int kImBottom = 0;
inline int im_in(int t) { return 100000 + t; }
inline int im_out(int t) { return 200000 + t; }

inline Tensor folded_channel(const BoundaryChannel& c, int anc_out, int site_out, int anc_in, int site_in) {
  const std::size_t chi = c.chi, q = c.q, n = chi * q;
  Vec data = Vec::Zero(n * n * n * n);
  // index order: (jo jo') (ao ao') (ji ji') (ai ai')
  auto idx = [&](std::size_t jo, std::size_t jop, std::size_t ao, std::size_t aop, std::size_t ji, std::size_t jip,
                 std::size_t ai, std::size_t aip) {
    return ((((((jo * chi + jop) * q + ao) * q + aop) * chi + ji) * chi + jip) * q + ai) * q + aip;
  };
  for (const auto& k : c.kraus)
    for (std::size_t jo = 0; jo < chi; ++jo)
      for (std::size_t ao = 0; ao < q; ++ao)
        for (std::size_t ji = 0; ji < chi; ++ji)
          for (std::size_t ai = 0; ai < q; ++ai) {
            const cplx x = k(jo * q + ao, ji * q + ai);
            if (x == cplx(0.0)) continue;
            for (std::size_t jop = 0; jop < chi; ++jop)
              for (std::size_t aop = 0; aop < q; ++aop)
                for (std::size_t jip = 0; jip < chi; ++jip)
                  for (std::size_t aip = 0; aip < q; ++aip)
                    data(idx(jo, jop, ao, aop, ji, jip, ai, aip)) += x * std::conj(k(jop * q + aop, jip * q + aip));
          }
  return make_tensor({chi * chi, q * q, chi * chi, q * q}, {anc_out, site_out, anc_in, site_in}, std::move(data));
}

// folded identity (trace) vector on a d-dimensional leg
inline Tensor trace_vector(std::size_t d, int label, double scale = 1.0) {
  Vec v = Vec::Zero(d * d);
  for (std::size_t i = 0; i < d; ++i) v(i * d + i) = scale;
  return make_tensor({d * d}, {label}, std::move(v));
}

// F[(lo lo'),(ro ro'),(li li'),(ri ri')] = U[(lo ro),(li ri)] U*[(lo' ro'),(li' ri')]
inline Tensor folded_gate(const Mat& u, std::size_t q, int lo, int ro, int li, int ri) {
  const std::size_t q2 = q * q;
  Vec data(q2 * q2 * q2 * q2);
  std::size_t k = 0;
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t ap = 0; ap < q; ++ap)
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t bp = 0; bp < q; ++bp)
          for (std::size_t c = 0; c < q; ++c)
            for (std::size_t cp = 0; cp < q; ++cp)
              for (std::size_t d = 0; d < q; ++d)
                for (std::size_t dp = 0; dp < q; ++dp)
                  data(k++) = u(a * q + b, c * q + d) * std::conj(u(ap * q + bp, cp * q + dp));
  return make_tensor({q2, q2, q2, q2}, {lo, ro, li, ri}, std::move(data));
}

// Af[(l l'),(r r'),(a a')] = A^a_{lr} conj(A^{a'}_{l'r'})
inline Tensor folded_mps(const MpsTensor& t, int left, int right, int phys) {
  const std::size_t chi = t.chi, q = t.q;
  Vec data(chi * chi * chi * chi * q * q);
  std::size_t k = 0;
  for (std::size_t l = 0; l < chi; ++l)
    for (std::size_t lp = 0; lp < chi; ++lp)
      for (std::size_t r = 0; r < chi; ++r)
        for (std::size_t rp = 0; rp < chi; ++rp)
          for (std::size_t a = 0; a < q; ++a)
            for (std::size_t ap = 0; ap < q; ++ap) data(k++) = t.mats[a](l, r) * std::conj(t.mats[ap](lp, rp));
  return make_tensor({chi * chi, chi * chi, q * q}, {left, right, phys}, std::move(data));
}

inline std::vector<int> im_order(std::size_t tsteps, int bottom, int in_base, int out_base) {
  std::vector<int> o{bottom};
  for (std::size_t t = 1; t <= tsteps; ++t) {
    o.push_back(in_base + static_cast<int>(t));
    o.push_back(out_base + static_cast<int>(t));
  }
  return o;
}

inline Tensor influence_tensor(const MpsTensor& a, std::size_t tsteps, bool open_bottom, std::size_t cap) {
  const BoundaryChannel c = kraus_from_mps(a);
  const std::size_t entries = checked_mul(a.chi * a.chi, checked_pow(a.q * a.q, 2 * tsteps));
  if (entries > cap) throw CapacityError("influence matrix: " + std::to_string(entries) + " entries exceed cap");
  auto anc = [](std::size_t t) { return 300000 + static_cast<int>(t); };
  Tensor x = trace_vector(a.chi, anc(tsteps));
  for (std::size_t t = tsteps; t >= 1; --t) {
    const int lower = t == 1 ? kImBottom : anc(t - 1);
    x = contract(folded_channel(c, anc(t), im_out(static_cast<int>(t)), lower, im_in(static_cast<int>(t))), x, cap);
  }
  if (tsteps == 0) x = relabel(x, anc(0), kImBottom);
  x = permute(x, im_order(tsteps, kImBottom, im_in(0), im_out(0)));
  if (!open_bottom) x = contract(trace_vector(a.chi, kImBottom, 1.0 / static_cast<double>(a.chi)), x, cap);
  return x;
}

}  // namespace detail

// Dense influence matrix with the bottom bond closed by the normalised
// maximally correlated ancilla pair.  Legs: (in_1, out_1, ..., in_T, out_T).
inline Vec build_influence_matrix_dense(const MpsTensor& a, std::size_t tsteps, std::size_t cap = kDefaultInfluenceCap) {
  return detail::influence_tensor(a, tsteps, false, cap).data;
}

// Same with the chi^2 bottom bond left open as the leading index.
inline Vec build_influence_matrix_open(const MpsTensor& a, std::size_t tsteps, std::size_t cap = kDefaultInfluenceCap) {
  return detail::influence_tensor(a, tsteps, true, cap).data;
}

struct FixedPointOptions {
  bool check_precondition = true;
  double precondition_tol = 1e-8;
  std::size_t cap = kDefaultInfluenceCap;
};

// Moves the cut two sites to the left: the influence matrix seen at the
// cut (-3|-2) is pushed through the strip {-2,-1} (initial tensors, the
// even-layer gate inside the strip, the odd-layer gate crossing into site
// 0, trace on top) and compared, bond-to-bond, with the influence matrix
// at the cut (-1|0).
inline double verify_im_fixed_point(const TwoSiteGate& u, const MpsTensor& a, std::size_t tsteps,
                                    const FixedPointOptions& opt = {}) {
  if (u.q != a.q) throw ArgumentError("verify_im_fixed_point: q mismatch");
  if (tsteps == 0) throw ArgumentError("verify_im_fixed_point: need T >= 1");
  if (opt.check_precondition) {
    const double r = check_solvable_left(u, a);
    if (r > opt.precondition_tol)
      throw PreconditionError("verify_im_fixed_point: gate is not solvable for this tensor (residual " + std::to_string(r) + ")");
  }
  const std::size_t q = a.q;
  const int T = static_cast<int>(tsteps);
  const Tensor im = detail::influence_tensor(a, tsteps, true, opt.cap);

  // labels: old IM uses bottom 1, in 10000+t, out 20000+t; new IM bottom 2,
  // in 30000+t, out 40000+t.  Strip internals: mid bond 3, site -2 initial 5,
  // site -1 after period t 60000+t, site -1 between layers 70000+t.
  auto old_in = [](int t) { return 10000 + t; };
  auto old_out = [](int t) { return 20000 + t; };
  auto new_in = [](int t) { return 30000 + t; };
  auto new_out = [](int t) { return 40000 + t; };
  auto y = [](int t) { return 60000 + t; };
  auto e = [](int t) { return 70000 + t; };

  Tensor old_im = im;
  old_im.labels = detail::im_order(tsteps, 1, 10000, 20000);

  Tensor x = contract(old_im, detail::folded_mps(a, 1, 3, 5), opt.cap);
  x = contract(x, detail::folded_mps(a, 3, 2, y(0)), opt.cap);
  for (int t = 1; t <= T; ++t) {
    const int site_m2_in = t == 1 ? 5 : old_out(t - 1);
    x = contract(x, detail::folded_gate(u.matrix, q, old_in(t), e(t), site_m2_in, y(t - 1)), opt.cap);
    x = contract(x, detail::folded_gate(u.matrix, q, y(t), new_out(t), e(t), new_in(t)), opt.cap);
  }
  x = contract(x, detail::trace_vector(q, y(T)), opt.cap);
  x = contract(x, detail::trace_vector(q, old_out(T)), opt.cap);
  x = permute(x, detail::im_order(tsteps, 2, 30000, 40000));
  return (x.data - im.data).cwiseAbs().maxCoeff();
}

}  // namespace solvcirc
