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

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "solvcirc/solvcirc.hpp"

namespace solvcirc::cli {

// Exit codes are a stable contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Observable {
  std::size_t site;
  std::string name;
  Mat op;
};

// Parsed experiment configuration.  Randomness: the single config seed is
// split with derive_seed(seed, k); stream 0 draws the gate, stream 1 the
// right-region kets.
struct ExperimentConfig {
  std::string version = "1";
  std::uint64_t seed = 0;
  TwoSiteGate gate;
  InitialTensor tensor;
  json right_state;
  std::size_t l_r = 2;
  std::size_t tmax = 0;
  std::size_t l_left = 0;
  bool purify = true;
  LayerOrder order = LayerOrder::EvenFirst;
  std::vector<int> n_list{2};
  std::vector<Observable> observables;
  std::vector<std::string> checks{"left"};
  bool oracle = false;
  bool require_solvable = true;
  std::optional<std::string> output;
};

TwoSiteGate gate_from_spec(const json& j, std::uint64_t seed, const std::string& base_dir = "");
InitialTensor tensor_from_spec(const json& j, const std::string& base_dir = "");
std::vector<Vec> right_kets_from_spec(const json& j, std::size_t q, std::size_t l_r, std::size_t chi,
                                      std::uint64_t seed);
// Continuation of the tensor into R; the last slot is the open right bond leg.
std::vector<Vec> continuation_kets(const MpsTensor& a, std::size_t l_r);
Mat named_operator(const std::string& name, std::size_t q);
ExperimentConfig parse_config(const json& j, std::optional<std::uint64_t> seed_override,
                              const std::string& base_dir = "");

std::size_t tensor_chi(const InitialTensor& t);
std::size_t tensor_q(const InitialTensor& t);
const MpsTensor& require_mps(const InitialTensor& t, const char* what);

struct Options {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool oracle = false;
};

int cmd_check(const ExperimentConfig& cfg, const Options& opt, std::ostream& out);
int cmd_gen_gate(const ExperimentConfig& cfg, const Options& opt, std::ostream& out);
int cmd_evolve(const ExperimentConfig& cfg, const Options& opt, std::ostream& out);
int cmd_oracle(const ExperimentConfig& cfg, const Options& opt, std::ostream& out);
int cmd_renyi(const ExperimentConfig& cfg, const Options& opt, std::ostream& out);
int cmd_fixed_point(const ExperimentConfig& cfg, const Options& opt, std::ostream& out);

// Full command-line entry point; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solvcirc::cli
