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

// JSON schemas.  No file access here; callers own the streams.
//   matrix:  {"rows": r, "cols": c, "data": [[re, im], ...]}   row-major
//   gate:    {"q", "family", "params", "seed", "matrix"}
//   mps:     {"q", "chi", "mats": [matrix, ...]}
//   two-site {"q", "chi", "chip", "matsA": [...], "matsB": [...]}
//   lpdo:    {"q", "chi", "d", "mats": [...]}  entry a*d + gamma
//   channel: {"chi", "q", "kraus": [matrix, ...]}

#include <json.hpp>

#include "solvcirc/channel.hpp"
#include "solvcirc/gates.hpp"
#include "solvcirc/mps.hpp"

namespace solvcirc {

using json = nlohmann::json;

inline json matrix_to_json(const Mat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline cplx complex_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ArgumentError("complex entry must be a number or [re, im]");
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ArgumentError("matrix: need rows, cols and data");
  const auto r = j.at("rows").get<long long>(), c = j.at("cols").get<long long>();
  if (r < 0 || c < 0) throw ArgumentError("matrix: negative shape");
  const auto& d = j.at("data");
  if (!d.is_array() || static_cast<long long>(d.size()) != r * c)
    throw ShapeError("matrix: data length does not equal rows*cols");
  Mat m(r, c);
  for (long long i = 0; i < r; ++i)
    for (long long k = 0; k < c; ++k) m(i, k) = complex_from_json(d[i * c + k]);
  if (!m.allFinite()) throw ArgumentError("matrix: non-finite entry");
  return m;
}

inline json vector_to_json(const Vec& v) {
  json a = json::array();
  for (auto z : v) a.push_back({z.real(), z.imag()});
  return a;
}

inline Vec vector_from_json(const json& j) {
  if (!j.is_array()) throw ArgumentError("vector must be an array");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  if (!v.allFinite()) throw ArgumentError("vector: non-finite entry");
  return v;
}

inline json to_json(const TwoSiteGate& g) {
  return {{"q", g.q},
          {"family", family_name(g.family)},
          {"params", g.params},
          {"seed", g.seed ? json(*g.seed) : json(nullptr)},
          {"matrix", matrix_to_json(g.matrix)}};
}

inline TwoSiteGate gate_from_json(const json& j) {
  TwoSiteGate g;
  g.q = j.at("q").get<std::size_t>();
  g.family = family_from_name(j.value("family", std::string("custom")));
  g.params = j.value("params", json::object());
  if (j.contains("seed") && !j.at("seed").is_null()) g.seed = j.at("seed").get<std::uint64_t>();
  g.matrix = matrix_from_json(j.at("matrix"));
  if (static_cast<std::size_t>(g.matrix.rows()) != g.q * g.q || g.matrix.rows() != g.matrix.cols())
    throw ShapeError("gate: matrix must be q^2 x q^2");
  if (unitarity_residual(g.matrix) > kUnitaryTol) throw ArgumentError("gate: matrix is not unitary");
  return g;
}

inline json mats_to_json(const std::vector<Mat>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(matrix_to_json(m));
  return a;
}

inline std::vector<Mat> mats_from_json(const json& j) {
  if (!j.is_array()) throw ArgumentError("expected an array of matrices");
  std::vector<Mat> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

inline json to_json(const MpsTensor& t) { return {{"q", t.q}, {"chi", t.chi}, {"mats", mats_to_json(t.mats)}}; }

inline MpsTensor mps_from_json(const json& j) {
  MpsTensor t{j.at("q").get<std::size_t>(), j.at("chi").get<std::size_t>(), mats_from_json(j.at("mats"))};
  validate(t);
  return t;
}

inline json to_json(const TwoSiteMps& t) {
  return {{"q", t.q}, {"chi", t.chi}, {"chip", t.chip}, {"matsA", mats_to_json(t.matsA)}, {"matsB", mats_to_json(t.matsB)}};
}

inline TwoSiteMps two_site_from_json(const json& j) {
  TwoSiteMps t;
  t.q = j.at("q").get<std::size_t>();
  t.chi = j.at("chi").get<std::size_t>();
  t.matsA = mats_from_json(j.at("matsA"));
  t.matsB = mats_from_json(j.at("matsB"));
  t.chip = j.contains("chip") ? j.at("chip").get<std::size_t>() : (t.matsA.empty() ? 0 : t.matsA[0].cols());
  validate(t);
  return t;
}

inline json to_json(const Lpdo& l) {
  return {{"q", l.q}, {"chi", l.chi}, {"d", l.d}, {"mats", mats_to_json(l.mats)}};
}

inline Lpdo lpdo_from_json(const json& j) {
  Lpdo l{j.at("q").get<std::size_t>(), j.at("chi").get<std::size_t>(), j.at("d").get<std::size_t>(),
         mats_from_json(j.at("mats"))};
  validate(l);
  return l;
}

inline json to_json(const BoundaryChannel& c) {
  return {{"chi", c.chi}, {"q", c.q}, {"kraus", mats_to_json(c.kraus)}};
}

inline BoundaryChannel channel_from_json(const json& j) {
  return {j.at("chi").get<std::size_t>(), j.at("q").get<std::size_t>(), mats_from_json(j.at("kraus"))};
}

}  // namespace solvcirc
