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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli.hpp"
#include "solvcirc/solvcirc.hpp"

using namespace solvcirc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Vec random_ket(std::size_t dim, Rng& rng) {
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = cplx(rng.normal(), rng.normal());
  return v / v.norm();
}

std::vector<Vec> random_kets(std::size_t count, std::size_t dim, Rng& rng) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_ket(dim, rng));
  return out;
}

double max_distance(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) d = std::max(d, trace_distance(a[t], b[t]));
  return d;
}

Outcome gate_families() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(1001, 0));
  const auto product0 = product_state_mps(2, 0);
  const auto cluster = cluster_mps();
  const auto ghz4 = ghz_cluster_family(0.5, 4);
  const auto ghz4_sym = ghz_cluster_family(kPi / 4, 4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    worst = std::max(worst, check_solvable_left(sample_q2_qt1(rng), product0));
    worst = std::max(worst, check_solvable_left(sample_q2_qt2(rng), cluster));
    worst = std::max(worst, check_solvable_left(sample_general(4, 2, rng), ghz4));
    const auto r2 = solvability_report(sample_both_chirality_q2(rng), product0);
    worst = std::max({worst, r2.left_residual, r2.right_residual});
    const auto r4 = solvability_report(sample_both_chirality_q4plus(4, rng), ghz4_sym);
    worst = std::max({worst, r4.left_residual, r4.right_residual});
  }
  int haar_fail = 0;
  for (int i = 0; i < 100; ++i)
    if (check_solvable_left(sample_haar_gate(2, rng), product0) > 1e-3) ++haar_fail;
  const double secs = seconds_since(t0);
  return {worst < 1e-10 && haar_fail >= 99 && secs < 10.0,
          fmt("max residual %.2e, Haar above 1e-3: %.0f/100, %.2f s", worst, haar_fail, secs)};
}

Outcome cptp() {
  double worst = 0.0, lpdo_gap = 0.0;
  std::vector<MpsTensor> families{cluster_mps(), product_state_mps(2, 0), product_state_mps(4, 2)};
  for (double theta : {kPi / 16, kPi / 8, 3 * kPi / 16, kPi / 4, 0.5}) {
    families.push_back(ghz_cluster_family(theta, 2));
    families.push_back(ghz_cluster_family(theta, 4));
  }
  for (const auto& a : families) {
    const auto pure_channel = kraus_from_mps(a);
    worst = std::max(worst, check_cptp(pure_channel));
    worst = std::max(worst, check_cptp(kraus_from_two_site(two_site_from(a, a))));
    const auto d1 = kraus_from_lpdo(lpdo_from_mps(a));
    worst = std::max(worst, check_cptp(d1));
    for (std::size_t k = 0; k < pure_channel.kraus.size(); ++k)
      lpdo_gap = std::max(lpdo_gap, max_abs(d1.kraus[k] - pure_channel.kraus[k]));
    const double h = 1.0 / std::sqrt(2.0);
    worst = std::max(worst, check_cptp(kraus_from_lpdo(lpdo_from_mps(a, {h, h}))));
  }
  worst = std::max(worst, check_cptp(kraus_from_two_site(two_site_from(cluster_mps(), rotate_physical(cluster_mps(), pauli(1))))));
  return {worst < 1e-12 && lpdo_gap < 1e-12, fmt("max CPTP residual %.2e, LPDO D=1 gap %.2e", worst, lpdo_gap)};
}

Outcome oracle() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(1003, 0));
  ChainSpec a;
  a.l_left = 10;
  a.l_r = 3;
  a.gate = sample_q2_qt2(rng);
  a.mps = cluster_mps();
  a.right_kets = random_kets(2, 8, rng);
  a.tmax = 4;
  ChainSpec b;
  b.l_left = 6;
  b.l_r = 2;
  b.gate = sample_general(4, 2, rng);
  b.mps = ghz_cluster_family(0.5, 4);
  b.right_kets = random_kets(2, 16, rng);
  b.tmax = 2;
  auto engine = [](const ChainSpec& s) {
    return evolve_subsystem(make_evolution_config(s.gate, s.mps, s.right_kets, s.l_r, s.tmax));
  };
  const double da = max_distance(evolve_chain(a), engine(a));
  const double db = max_distance(evolve_chain(b), engine(b));
  const double secs = seconds_since(t0);
  return {da < 1e-10 && db < 1e-10 && secs < 60.0, fmt("(a) %.2e, (b) %.2e, %.2f s", da, db, secs)};
}

std::vector<double> saturation_curve(std::uint64_t seed, double theta) {
  const std::size_t q = 4, l_r = 4;
  Rng rng(derive_seed(seed, 0));
  const TwoSiteGate gate = sample_general(q, 2, rng);
  const MpsTensor a = ghz_cluster_family(theta, q);
  const auto cfg = make_evolution_config(gate, a, product_right_kets(q, l_r, 2, a.chi), l_r, 40);
  std::vector<double> s;
  evolve(cfg, [&](const JointState& st) { s.push_back(entanglement_entropy(st)); });
  return s;
}

double late_average(const std::vector<double>& s) {
  double sum = 0.0;
  for (std::size_t t = 20; t <= 40; ++t) sum += s[t];
  return sum / 21.0;
}

Outcome saturation() {
  const double target = 4 * std::log(2.0), ceiling = 4 * std::log(4.0);
  bool ok = true;
  double worst_sym = 0.0, highest = 0.0;
  std::vector<double> plateaus;
  for (int k = 1; k <= 4; ++k) {
    const auto s = saturation_curve(7, k * kPi / 16);
    for (std::size_t t = 20; t <= 40; ++t) highest = std::max(highest, s[t]);
    plateaus.push_back(late_average(s));
  }
  worst_sym = std::abs(plateaus.back() - target);
  for (std::uint64_t seed : {11, 23}) worst_sym = std::max(worst_sym, std::abs(late_average(saturation_curve(seed, kPi / 4)) - target));
  ok = worst_sym < 1e-3 && highest <= target + 1e-3 && highest < ceiling;
  double min_gap = 1e300;
  for (std::size_t i = 0; i + 1 < plateaus.size(); ++i) min_gap = std::min(min_gap, plateaus[i + 1] - plateaus[i]);
  ok = ok && min_gap > 1e-3;
  return {ok, fmt("pi/4 plateau error %.2e over 3 seeds, max late S %.6f, plateaus %.4f..%.4f", worst_sym, highest,
                  plateaus.front(), plateaus.back()) +
                  fmt(", min gap %.4f", min_gap)};
}

Outcome renyi() {
  const auto a = cluster_mps();
  const auto g1 = gate_both_chirality_q2(0.3, 0.4, 0.7, -0.4, -0.7, kPi / 4);
  const auto g2 = gate_both_chirality_q2(1.1, -0.2, 0.9, 0.5, 0.25, kPi / 4);
  double chain_gap = 0.0, gate_gap = 0.0;
  bool v_ok = true;
  for (int n : {2, 3}) {
    for (std::size_t t = 1; t <= 3; ++t) {
      const double tr = renyi_trace_via_transfer(a, n, t);
      const double c1 = renyi_trace_chain(g1, a, n, t), c2 = renyi_trace_chain(g2, a, n, t);
      chain_gap = std::max(chain_gap, std::abs(tr - c1));
      gate_gap = std::max(gate_gap, std::abs(c1 - c2));
    }
    const double v = entanglement_velocity(a, n).velocity;
    v_ok = v_ok && v >= 0.0 && v <= 2.0;
  }
  return {chain_gap < 1e-8 && gate_gap < 1e-8 && v_ok,
          fmt("transfer vs chain %.2e, gate independence %.2e, velocities in [0,2]: %.0f", chain_gap, gate_gap, v_ok)};
}

Outcome duality() {
  const auto a = cluster_mps();
  const auto gate = gate_both_chirality_q2(0.3, 0.4, 0.7, -0.4, -0.7, kPi / 4);
  double worst = 0.0;
  for (std::size_t t = 1; t <= 3; ++t) {
    const std::size_t l_r = 2 * t + 1;
    const auto cfg = make_evolution_config(gate, a, cli::continuation_kets(a, l_r), l_r, t);
    double s_engine = 0.0;
    evolve(cfg, [&](const JointState& st) { s_engine = entanglement_entropy(st); });
    worst = std::max(worst, std::abs(s_engine - temporal_state_entropy(a, 1, t)));
  }
  return {worst < 1e-8, fmt("max |S_engine - S_temporal| %.2e", worst)};
}

Outcome fixed_point() {
  Rng rng(derive_seed(1007, 0));
  const double r1 = verify_im_fixed_point(sample_q2_qt2(rng), cluster_mps(), 2);
  const double r2 = verify_im_fixed_point(sample_q2_qt1(rng), product_state_mps(2, 0), 2);
  FixedPointOptions loose;
  loose.check_precondition = false;
  const double rh = verify_im_fixed_point(sample_haar_gate(2, rng), product_state_mps(2, 0), 2, loose);
  return {r1 < 1e-10 && r2 < 1e-10 && rh > 1e-3, fmt("cluster %.2e, product %.2e, Haar control %.2e", r1, r2, rh)};
}

Outcome cartan() {
  const Mat expect = std::exp(cplx(0.0, -kPi / 4)) * swap_matrix(2);
  const double anchor = max_abs(cartan_matrix(kPi / 4, kPi / 4, kPi / 4) - expect);
  double norm_gap = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 4; ++k)
        norm_gap = std::max(norm_gap, pauli_coefficients(-1.0 + 0.55 * i, 0.37 * j, 2.1 - 0.9 * k).norm_residual());
  Rng rng(derive_seed(1008, 0));
  double soliton = 0.0;
  for (int i = 0; i < 100; ++i) soliton = std::max(soliton, check_soliton(sample_q2_qt1(rng)));
  return {anchor < 1e-12 && norm_gap < 1e-12 && soliton < 1e-10,
          fmt("anchor %.2e, Pauli norm %.2e, soliton %.2e", anchor, norm_gap, soliton)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gate families", gate_families}, {"CPTP", cptp},          {"oracle equivalence", oracle},
      {"entanglement saturation", saturation}, {"Renyi transfer", renyi}, {"temporal duality", duality},
      {"fixed point", fixed_point},     {"Cartan anchor", cartan}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
