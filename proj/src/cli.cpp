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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace solvcirc::cli {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (base_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (std::filesystem::path(base_dir) / p).string();
}

double num(const json& p, const char* key, double fallback = 0.0) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

Mat mat_or(const json& p, const char* key, const Mat& fallback) {
  return p.contains(key) ? matrix_from_json(p.at(key)) : fallback;
}

std::vector<Mat> mats_or(const json& p, const char* key, std::size_t count, const Mat& fallback) {
  if (!p.contains(key)) return std::vector<Mat>(count, fallback);
  return mats_from_json(p.at(key));
}

std::size_t get_size(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  return j.at(key).get<std::size_t>();
}

// Writes to --out, then the config's output path, then the given stream.
class Sink {
 public:
  Sink(const Options& opt, const ExperimentConfig& cfg, std::ostream& fallback) : os_(&fallback) {
    std::optional<std::string> path = opt.out ? opt.out : cfg.output;
    if (path) {
      file_.open(*path);
      if (!file_) throw ConfigError("cannot write '" + *path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

}  // namespace

std::size_t tensor_chi(const InitialTensor& t) {
  return std::visit([](const auto& x) { return x.chi; }, t);
}

std::size_t tensor_q(const InitialTensor& t) {
  return std::visit([](const auto& x) { return x.q; }, t);
}

const MpsTensor& require_mps(const InitialTensor& t, const char* what) {
  if (!std::holds_alternative<MpsTensor>(t))
    throw ConfigError(std::string(what) + " needs a single-site MPS tensor");
  return std::get<MpsTensor>(t);
}

TwoSiteGate gate_from_spec(const json& j, std::uint64_t seed, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("'gate' must be an object");
  if (j.contains("file")) return gate_from_spec(read_json_file(resolve(base_dir, j.at("file").get<std::string>())), seed);
  if (j.contains("matrix")) return gate_from_json(j);
  const std::string family = j.value("family", std::string());
  if (family.empty()) throw ConfigError("gate needs 'family', 'matrix' or 'file'");
  const bool sampled = !j.contains("params");
  const json p = j.value("params", json::object());
  std::size_t q = get_size(j, "q", 0);
  Rng rng(seed);

  if (family == "swap") return swap_gate(q ? q : 2);
  if (family == "haar") return sample_haar_gate(q ? q : 2, rng);
  if (family == "cartan") return cartan_gate(num(p, "j1"), num(p, "j2"), num(p, "j3"));
  if (family == "q2_qt1") {
    if (sampled) return sample_q2_qt1(rng);
    return gate_q2_qt1(num(p, "phi"), num(p, "eps"), num(p, "eta"), num(p, "j"), mat_or(p, "u", identity(2)),
                       mat_or(p, "v", identity(2)));
  }
  if (family == "q2_qt2") {
    if (sampled) return sample_q2_qt2(rng);
    return gate_q2_qt2(num(p, "phi"), mat_or(p, "u", identity(2)));
  }
  if (family == "general") {
    if (!q) q = 4;
    const std::size_t qt = get_size(j, "qt", get_size(p, "qt", 2));
    if (sampled) return sample_general(q, qt, rng);
    std::vector<Mat> g = p.contains("g") ? mats_from_json(p.at("g"))
                                         : std::vector<Mat>(qt < q ? q : 0, identity(q - qt));
    return gate_general(q, qt, num(p, "phi"), mat_or(p, "v", identity(q)), g, mats_or(p, "f2", q, identity(q)));
  }
  if (family == "both_chirality_q2") {
    if (sampled) return sample_both_chirality_q2(rng);
    return gate_both_chirality_q2(num(p, "phi"), num(p, "eps"), num(p, "epsp"), num(p, "eta"), num(p, "etap"),
                                  num(p, "j3"));
  }
  if (family == "both_chirality_q4plus") {
    if (!q) q = 4;
    if (sampled) return sample_both_chirality_q4plus(q, rng);
    const Mat id = identity(q);
    return gate_both_chirality_q4plus(q, num(p, "phi"), mat_or(p, "uplus", id), mat_or(p, "uminus", id),
                                      mat_or(p, "vplus", id), mat_or(p, "vminus", id),
                                      mat_or(p, "h", Mat::Zero(q, q)));
  }
  throw ConfigError("unknown gate family '" + family + "'");
}

InitialTensor tensor_from_spec(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("'mps' must be an object");
  if (j.contains("file")) return tensor_from_spec(read_json_file(resolve(base_dir, j.at("file").get<std::string>())));
  if (j.contains("matsA")) return two_site_from_json(j);
  if (j.contains("mats") && j.contains("d")) return lpdo_from_json(j);
  if (j.contains("mats")) return mps_from_json(j);
  const std::string family = j.value("family", std::string());
  if (family == "ghz_cluster") return ghz_cluster_family(num(j, "theta", kPi / 4), get_size(j, "q", 4));
  if (family == "cluster") return cluster_mps();
  if (family == "product") {
    if (j.contains("ket")) return product_state_mps(vector_from_json(j.at("ket")));
    return product_state_mps(get_size(j, "q", 2), get_size(j, "level", 0));
  }
  throw ConfigError("mps needs 'family', 'mats' or 'file'");
}

std::vector<Vec> right_kets_from_spec(const json& j, std::size_t q, std::size_t l_r, std::size_t chi,
                                      std::uint64_t seed) {
  if (!j.is_object()) throw ConfigError("'right_state' must be an object");
  const std::size_t dim = ipow(q, l_r);
  if (j.contains("product")) return product_right_kets(q, l_r, get_size(j, "product", 0), chi);
  if (j.contains("kets")) {
    std::vector<Vec> out;
    for (const auto& k : j.at("kets")) out.push_back(vector_from_json(k));
    if (out.size() != chi) throw ConfigError("right_state: need one ket per bond level");
    for (const auto& k : out)
      if (static_cast<std::size_t>(k.size()) != dim) throw ConfigError("right_state: ket has wrong length");
    return out;
  }
  if (j.value("random", false)) {
    Rng rng(seed);
    std::vector<Vec> out;
    for (std::size_t c = 0; c < chi; ++c) {
      Vec v(dim);
      for (std::size_t i = 0; i < dim; ++i) v(i) = cplx(rng.normal(), rng.normal());
      out.push_back(v / v.norm());
    }
    return out;
  }
  throw ConfigError("right_state needs 'product', 'kets' or 'random'");
}

// Continuation of a single-site MPS into R: sites 0..L_R-2 carry A, the last
// slot is the open right bond leg (so chi must equal q).
std::vector<Vec> continuation_kets(const MpsTensor& a, std::size_t l_r) {
  if (a.chi != a.q) throw ConfigError("right_state continuation needs chi == q");
  if (l_r < 2) throw ConfigError("right_state continuation needs L_R >= 2");
  Mat block = detail::grow_left_block(a, identity(a.chi), l_r - 1);
  const std::size_t rows = ipow(a.q, l_r - 1);
  std::vector<Vec> out;
  for (std::size_t j = 0; j < a.chi; ++j) out.push_back(detail::flatten(block.block(j * rows, 0, rows, a.chi)));
  return out;
}

Mat named_operator(const std::string& name, std::size_t q) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw ConfigError("observable '" + name + "' needs kind:argument");
  const std::string kind = name.substr(0, colon), arg = name.substr(colon + 1);
  try {
    if (kind == "proj") return projector(q, std::stoul(arg));
    if (kind == "pauli") {
      if (q != 2) throw ConfigError("pauli observables need q = 2");
      const int k = std::stoi(arg);
      if (k < 1 || k > 3) throw ConfigError("pauli index must be 1, 2 or 3");
      return pauli(k);
    }
    if (kind == "diag") {
      Mat d = Mat::Zero(q, q);
      std::stringstream ss(arg);
      std::string item;
      std::size_t i = 0;
      while (std::getline(ss, item, ',')) {
        if (i >= q) throw ConfigError("diag observable has more than q entries");
        d(i, i) = std::stod(item);
        ++i;
      }
      if (i != q) throw ConfigError("diag observable needs exactly q entries");
      return d;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse observable '" + name + "'");
  }
  throw ConfigError("unknown observable kind '" + kind + "'");
}

ExperimentConfig parse_config(const json& j, std::optional<std::uint64_t> seed_override, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  c.version = j.value("version", std::string("1"));
  if (c.version != "1") throw ConfigError("unsupported config version '" + c.version + "'");
  c.seed = seed_override ? *seed_override : j.value("seed", std::uint64_t{0});
  if (!j.contains("gate")) throw ConfigError("config needs 'gate'");
  c.gate = gate_from_spec(j.at("gate"), derive_seed(c.seed, 0), base_dir);
  c.tensor = j.contains("mps") ? tensor_from_spec(j.at("mps"), base_dir) : InitialTensor(product_state_mps(c.gate.q, 0));
  if (tensor_q(c.tensor) != c.gate.q) throw ConfigError("gate and mps have different local dimension");
  c.l_r = get_size(j, "l_r", 2);
  c.tmax = get_size(j, "tmax", 0);
  c.l_left = get_size(j, "l_left", lightcone_margin(c.tmax));
  c.purify = j.value("purify", true);
  const std::string order = j.value("layer_order", std::string("even_first"));
  if (order == "even_first") c.order = LayerOrder::EvenFirst;
  else if (order == "odd_first") c.order = LayerOrder::OddFirst;
  else throw ConfigError("layer_order must be even_first or odd_first");
  if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
  if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
  c.oracle = j.value("oracle", false);
  c.require_solvable = j.value("require_solvable", true);
  if (j.contains("output")) c.output = resolve(base_dir, j.at("output").get<std::string>());
  c.right_state = j.value("right_state", json{{"product", 0}});
  if (j.contains("observables"))
    for (const auto& o : j.at("observables")) {
      const std::size_t site = get_size(o, "site", 0);
      if (site >= c.l_r) throw ConfigError("observable site out of range");
      const std::string name = o.at("op").get<std::string>();
      c.observables.push_back({site, name, named_operator(name, c.gate.q)});
    }
  return c;
}

namespace {

std::vector<Vec> right_kets(const ExperimentConfig& c) {
  if (c.right_state.value("continuation", false)) return continuation_kets(require_mps(c.tensor, "continuation"), c.l_r);
  return right_kets_from_spec(c.right_state, c.gate.q, c.l_r, tensor_chi(c.tensor), derive_seed(c.seed, 1));
}

bool below(double v, double tol) { return std::isfinite(v) && v < tol; }

}  // namespace

int cmd_check(const ExperimentConfig& cfg, const Options& opt, std::ostream& out) {
  const double tol = opt.tol.value_or(1e-8);
  const MpsTensor& a = require_mps(cfg.tensor, "check");
  const SolvabilityReport rep = solvability_report(cfg.gate, a);
  json j = to_json(rep);
  j["tol"] = tol;
  bool ok = true;
  for (const auto& name : cfg.checks) {
    double v;
    if (name == "left") v = rep.left_residual;
    else if (name == "right") v = rep.right_residual;
    else if (name == "dual_unitary") v = rep.dual_unitarity_residual;
    else if (name == "soliton") {
      if (!rep.soliton_residual) throw ConfigError("soliton check needs q = 2");
      v = *rep.soliton_residual;
    } else {
      throw ConfigError("unknown check '" + name + "'");
    }
    ok = ok && below(v, tol);
  }
  j["checks"] = cfg.checks;
  j["pass"] = ok;
  Sink sink(opt, cfg, out);
  *sink << j.dump(2) << "\n";
  return ok ? kExitOk : kExitFailure;
}

int cmd_gen_gate(const ExperimentConfig& cfg, const Options& opt, std::ostream& out) {
  Sink sink(opt, cfg, out);
  *sink << to_json(cfg.gate).dump(2) << "\n";
  return kExitOk;
}

int cmd_evolve(const ExperimentConfig& cfg, const Options& opt, std::ostream& out) {
  EvolutionConfig ec;
  try {
    ec = make_evolution_config(cfg.gate, cfg.tensor, right_kets(cfg), cfg.l_r, cfg.tmax);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream csv;
  csv << "t,S_ent,trace_residual,min_eig";
  for (const auto& o : cfg.observables) csv << "," << o.name << "@" << o.site;
  csv << "\n";
  int code = kExitOk;
  try {
    evolve(ec, [&](const JointState& s) {
      const double tr = std::abs(s.rho.trace() - cplx(1.0));
      const double me = min_eigenvalue(s.rho);
      if (me < -1e-8) throw DriftError("joint state lost positivity");
      csv << s.t << "," << fmt(entanglement_entropy(s)) << "," << fmt(tr) << "," << fmt(me);
      for (const auto& o : cfg.observables) csv << "," << fmt(local_expectation(s, o.site, o.op));
      csv << "\n";
    });
  } catch (const DriftError& e) {
    std::cerr << "evolve: " << e.what() << "\n";
    code = kExitFailure;
  }
  Sink sink(opt, cfg, out);
  *sink << csv.str();
  return code;
}

int cmd_oracle(const ExperimentConfig& cfg, const Options& opt, std::ostream& out) {
  const double tol = opt.tol.value_or(1e-9);
  const MpsTensor& a = require_mps(cfg.tensor, "oracle");
  ChainSpec spec;
  spec.l_left = cfg.l_left;
  spec.l_r = cfg.l_r;
  spec.gate = cfg.gate;
  spec.mps = a;
  spec.right_kets = right_kets(cfg);
  spec.tmax = cfg.tmax;
  spec.purify = cfg.purify;
  spec.order = cfg.order;
  if (!spec.purify && spec.l_left < lightcone_margin(spec.tmax))
    throw ConfigError("l_left is below the lightcone margin 2T+2 and purification is off");
  validate(spec);
  EvolutionConfig ec;
  try {
    ec = make_evolution_config(cfg.gate, a, spec.right_kets, cfg.l_r, cfg.tmax);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  const auto oracle = evolve_chain(spec);
  const auto engine = evolve_subsystem(ec);
  Sink sink(opt, cfg, out);
  *sink << "t,trace_distance,oracle_entropy,engine_entropy\n";
  double worst = 0.0;
  for (std::size_t t = 0; t < oracle.size(); ++t) {
    const double d = trace_distance(oracle[t], engine[t]);
    worst = std::max(worst, d);
    *sink << t << "," << fmt(d) << "," << fmt(von_neumann_entropy(oracle[t])) << ","
          << fmt(von_neumann_entropy(engine[t])) << "\n";
  }
  return below(worst, tol) ? kExitOk : kExitFailure;
}

int cmd_renyi(const ExperimentConfig& cfg, const Options& opt, std::ostream& out) {
  const double tol = opt.tol.value_or(1e-8);
  const MpsTensor& a = require_mps(cfg.tensor, "renyi");
  const bool with_oracle = opt.oracle || cfg.oracle;
  std::ostringstream csv;
  csv << "n,t,trace_via_transfer,trace_via_oracle,lambda_n,v_E\n";
  int code = kExitOk;
  for (int n : cfg.n_list) {
    if (n < 2) throw ConfigError("n_list entries must be >= 2");
    std::string lam, vel;
    try {
      const auto v = entanglement_velocity(a, n);
      lam = fmt(v.lambda);
      vel = fmt(v.velocity);
    } catch (const DominanceError&) {
      lam = vel = "dominance_error";
      code = kExitFailure;
    }
    for (std::size_t t = 0; t <= cfg.tmax; ++t) {
      const double tr = renyi_trace_via_transfer(a, n, t);
      std::string orc;
      if (with_oracle) {
        const double o = renyi_trace_chain(cfg.gate, a, n, t);
        orc = fmt(o);
        if (!below(std::abs(o - tr), tol)) code = kExitFailure;
      }
      csv << n << "," << t << "," << fmt(tr) << "," << orc << "," << lam << "," << vel << "\n";
    }
  }
  Sink sink(opt, cfg, out);
  *sink << csv.str();
  return code;
}

int cmd_fixed_point(const ExperimentConfig& cfg, const Options& opt, std::ostream& out) {
  const double tol = opt.tol.value_or(1e-10);
  const MpsTensor& a = require_mps(cfg.tensor, "fixed-point");
  FixedPointOptions fo;
  fo.check_precondition = cfg.require_solvable;
  double r;
  try {
    r = verify_im_fixed_point(cfg.gate, a, cfg.tmax, fo);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  json j{{"tsteps", cfg.tmax}, {"residual", r}, {"tol", tol}, {"pass", below(r, tol)}};
  Sink sink(opt, cfg, out);
  *sink << j.dump(2) << "\n";
  return below(r, tol) ? kExitOk : kExitFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"solvcirc: solvable brickwork circuits, boundary channels and oracles"};
  app.set_version_flag("--version", "solvcirc 1.0");
  std::string command, config_path;
  Options opt;
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "check | gen-gate | evolve | oracle | renyi | fixed-point")
      ->required()
      ->check(CLI::IsMember({"check", "gen-gate", "evolve", "oracle", "renyi", "fixed-point"}));
  app.add_option("--config", config_path, "experiment configuration (JSON)")->required();
  app.add_option("--tol", opt.tol, "threshold for pass/fail");
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--out", opt.out, "output path (default: stdout)");
  app.add_flag("--oracle", opt.oracle, "renyi: add the brute-force chain column");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }
  opt.seed = seed;

  try {
    const json j = read_json_file(config_path);
    const std::string base = std::filesystem::path(config_path).parent_path().string();
    const ExperimentConfig cfg = parse_config(j, seed, base);
    if (command == "check") return cmd_check(cfg, opt, out);
    if (command == "gen-gate") return cmd_gen_gate(cfg, opt, out);
    if (command == "evolve") return cmd_evolve(cfg, opt, out);
    if (command == "oracle") return cmd_oracle(cfg, opt, out);
    if (command == "renyi") return cmd_renyi(cfg, opt, out);
    return cmd_fixed_point(cfg, opt, out);
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DriftError& e) {
    err << "numerical: " << e.what() << "\n";
    return kExitFailure;
  } catch (const DominanceError& e) {
    err << "numerical: " << e.what() << "\n";
    return kExitFailure;
  } catch (const PositivityError& e) {
    err << "numerical: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace solvcirc::cli
