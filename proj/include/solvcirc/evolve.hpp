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

#include <variant>
#include <vector>

#include "solvcirc/channel.hpp"
#include "solvcirc/gates.hpp"
#include "solvcirc/mps.hpp"
#include "solvcirc/solvable.hpp"

namespace solvcirc {

// Density matrix on ancilla (x) site_0 (x) ... (x) site_{L_R - 1}.
struct JointState {
  std::size_t chi = 1;
  std::size_t q = 2;
  std::size_t l_r = 2;
  Mat rho;
  std::size_t t = 0;
};

using InitialTensor = std::variant<MpsTensor, TwoSiteMps, Lpdo>;

struct EvolutionConfig {
  TwoSiteGate gate;
  BoundaryChannel channel;
  std::vector<Vec> right_kets;  // |Psi_R^j>, one per ancilla level
  std::size_t tmax = 0;
  std::size_t l_r = 2;
};

inline constexpr double kConfigSolvableTol = 1e-8;

// Builds the channel and refuses gate/tensor pairs that break the solvable
// condition, since the Markov embedding is only exact when it holds.
inline EvolutionConfig make_evolution_config(const TwoSiteGate& gate, const InitialTensor& init,
                                             std::vector<Vec> right_kets, std::size_t l_r, std::size_t tmax) {
  EvolutionConfig cfg;
  cfg.gate = gate;
  cfg.tmax = tmax;
  cfg.l_r = l_r;
  double res = 0.0;
  std::visit(
      [&](const auto& t) {
        if (t.q != gate.q) throw ArgumentError("evolution config: gate and tensor have different q");
        res = check_solvable_left(gate, t);
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, MpsTensor>) cfg.channel = kraus_from_mps(t);
        else if constexpr (std::is_same_v<T, TwoSiteMps>) cfg.channel = kraus_from_two_site(t);
        else cfg.channel = kraus_from_lpdo(t);
      },
      init);
  if (res > kConfigSolvableTol)
    throw PreconditionError("evolution config: gate fails the solvable condition (residual " + std::to_string(res) + ")");
  if (l_r < 2) throw ArgumentError("evolution config: need L_R >= 2");
  const std::size_t dim_r = ipow(gate.q, l_r);
  if (checked_mul(cfg.channel.chi, dim_r) > amplitude_cap())
    throw CapacityError("evolution config: joint dimension exceeds cap");
  if (right_kets.size() != cfg.channel.chi) throw ArgumentError("evolution config: need one right ket per ancilla level");
  for (const auto& k : right_kets)
    if (static_cast<std::size_t>(k.size()) != dim_r) throw ArgumentError("evolution config: right ket has wrong dimension");
  cfg.right_kets = std::move(right_kets);
  return cfg;
}

// Same product ket |level>^{L_R} for every ancilla level.
inline std::vector<Vec> product_right_kets(std::size_t q, std::size_t l_r, std::size_t level, std::size_t chi) {
  Vec k = basis_vector(q, level);
  Vec full = k;
  for (std::size_t i = 1; i < l_r; ++i) full = kron(full, k);
  return std::vector<Vec>(chi, full);
}

inline JointState initial_joint_state(const EvolutionConfig& cfg) {
  const std::size_t chi = cfg.channel.chi;
  const std::size_t dim_r = ipow(cfg.gate.q, cfg.l_r);
  Vec psi = Vec::Zero(chi * dim_r);
  for (std::size_t j = 0; j < chi; ++j) psi.segment(j * dim_r, dim_r) = cfg.right_kets[j];
  const double n = psi.norm();
  if (n == 0.0) throw ArgumentError("initial_joint_state: all right kets vanish");
  psi /= n;
  return JointState{chi, cfg.gate.q, cfg.l_r, psi * psi.adjoint(), 0};
}

enum class LayerOrder { EvenFirst, OddFirst };

// Gates on bonds (x, x+1) of an n-site register with parity p = x mod 2.
inline void apply_layer(Mat& x, const Mat& u, std::size_t q, std::size_t n_sites, std::size_t parity,
                        std::size_t lead = 1) {
  for (std::size_t s = parity; s + 1 < n_sites; s += 2)
    apply_local(x, u, lead * ipow(q, s), q * q, ipow(q, n_sites - s - 2));
}

// U_R = U_odd U_even restricted to R, open right edge.
inline Mat brickwork_unitary(const TwoSiteGate& gate, std::size_t l_r) {
  if (l_r < 2) throw ArgumentError("brickwork_unitary: need L_R >= 2");
  Mat m = identity(ipow(gate.q, l_r));
  apply_layer(m, gate.matrix, gate.q, l_r, 0);
  apply_layer(m, gate.matrix, gate.q, l_r, 1);
  return m;
}

inline constexpr double kDriftTol = 1e-8;

inline void check_invariants(const JointState& s) {
  if (hermiticity_residual(s.rho) > 1e-10) throw DriftError("joint state lost Hermiticity");
  if (std::abs(s.rho.trace() - cplx(1.0)) > kDriftTol) throw DriftError("joint state trace drifted");
}

// One period: even layer, odd layer, then the boundary channel.
inline JointState step(const JointState& s, const EvolutionConfig& cfg) {
  check_invariants(s);
  const std::size_t q = s.q;
  Mat rho = s.rho;
  for (std::size_t parity : {0u, 1u})
    for (std::size_t x = parity; x + 1 < s.l_r; x += 2)
      rho = conjugate_local(rho, cfg.gate.matrix, s.chi * ipow(q, x), q * q, ipow(q, s.l_r - x - 2));
  rho = apply_channel(cfg.channel, rho);
  if (hermiticity_residual(rho) > 1e-10) throw DriftError("step: Hermiticity drift");
  rho = 0.5 * (rho + rho.adjoint());
  JointState out{s.chi, s.q, s.l_r, std::move(rho), s.t + 1};
  check_invariants(out);
  return out;
}

inline Mat subsystem_density(const JointState& s) {
  const std::size_t dim_r = ipow(s.q, s.l_r);
  Mat r = Mat::Zero(dim_r, dim_r);
  for (std::size_t j = 0; j < s.chi; ++j) r += s.rho.block(j * dim_r, j * dim_r, dim_r, dim_r);
  return r;
}

inline double entanglement_entropy(const JointState& s) { return von_neumann_entropy(subsystem_density(s)); }

inline double local_expectation(const JointState& s, std::size_t site, const Mat& op) {
  if (site >= s.l_r) throw ArgumentError("local_expectation: site out of range");
  if (static_cast<std::size_t>(op.rows()) != s.q || static_cast<std::size_t>(op.cols()) != s.q)
    throw ArgumentError("local_expectation: operator must be q x q");
  Mat r = subsystem_density(s);
  Mat x = r;
  apply_local(x, op, ipow(s.q, site), s.q, ipow(s.q, s.l_r - site - 1));
  return x.trace().real();
}

inline double min_eigenvalue(const Mat& rho) { return hermitian_eigenvalues(rho).minCoeff(); }

// Calls visit(state) for t = 0..tmax without keeping the history.
template <class Visitor>
void evolve(const EvolutionConfig& cfg, Visitor&& visit) {
  JointState s = initial_joint_state(cfg);
  visit(static_cast<const JointState&>(s));
  for (std::size_t t = 0; t < cfg.tmax; ++t) {
    s = step(s, cfg);
    visit(static_cast<const JointState&>(s));
  }
}

// Subsystem densities rho_R(t), t = 0..tmax.
inline std::vector<Mat> evolve_subsystem(const EvolutionConfig& cfg) {
  std::vector<Mat> out;
  evolve(cfg, [&](const JointState& s) { out.push_back(subsystem_density(s)); });
  return out;
}

}  // namespace solvcirc
