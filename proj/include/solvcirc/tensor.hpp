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

// Minimal labelled dense tensors.  Only what the influence-matrix checks
// need: permutation and pairwise contraction over shared labels, done as a
// single matrix product.  No contraction-order optimisation.

#include <algorithm>
#include <vector>

#include "solvcirc/numerics.hpp"

namespace solvcirc {

struct Tensor {
  std::vector<std::size_t> dims;  // row-major, first label most significant
  std::vector<int> labels;
  Vec data;

  std::size_t size() const {
    std::size_t s = 1;
    for (auto d : dims) s *= d;
    return s;
  }

  std::size_t dim_of(int label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return dims[i];
    throw ArgumentError("tensor: unknown label " + std::to_string(label));
  }

  std::ptrdiff_t position(int label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : it - labels.begin();
  }
};

inline Tensor make_tensor(std::vector<std::size_t> dims, std::vector<int> labels, Vec data) {
  if (dims.size() != labels.size()) throw ShapeError("tensor: dims/labels length mismatch");
  Tensor t{std::move(dims), std::move(labels), std::move(data)};
  if (static_cast<std::size_t>(t.data.size()) != t.size())
    throw ShapeError("tensor: data length does not match dims");
  return t;
}

inline Tensor permute(const Tensor& t, const std::vector<int>& order) {
  const std::size_t n = t.labels.size();
  if (order.size() != n) throw ArgumentError("permute: label count mismatch");
  std::vector<std::size_t> src(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = t.position(order[i]);
    if (p < 0) throw ArgumentError("permute: unknown label");
    src[i] = static_cast<std::size_t>(p);
  }
  std::vector<std::size_t> old_stride(n, 1);
  for (std::size_t i = n; i-- > 1;) old_stride[i - 1] = old_stride[i] * t.dims[i];

  Tensor out;
  out.labels = order;
  out.dims.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.dims[i] = t.dims[src[i]];
  const std::size_t total = t.size();
  out.data.resize(total);
  std::vector<std::size_t> digit(n, 0);
  std::size_t off = 0;
  for (std::size_t k = 0; k < total; ++k) {
    out.data(k) = t.data(off);
    for (std::size_t i = n; i-- > 0;) {
      off += old_stride[src[i]];
      if (++digit[i] < out.dims[i]) break;
      off -= old_stride[src[i]] * out.dims[i];
      digit[i] = 0;
    }
  }
  return out;
}

// Sum over every label the two tensors share; result labels are a's free
// labels followed by b's free labels.
inline Tensor contract(const Tensor& a, const Tensor& b, std::size_t entry_cap = kDefaultInfluenceCap) {
  std::vector<int> shared, free_a, free_b;
  for (int l : a.labels) (b.position(l) >= 0 ? shared : free_a).push_back(l);
  for (int l : b.labels)
    if (a.position(l) < 0) free_b.push_back(l);

  std::size_t ds = 1, dfa = 1, dfb = 1;
  for (int l : shared) {
    if (a.dim_of(l) != b.dim_of(l)) throw ShapeError("contract: dimension mismatch on shared label");
    ds *= a.dim_of(l);
  }
  for (int l : free_a) dfa *= a.dim_of(l);
  for (int l : free_b) dfb *= b.dim_of(l);
  if (checked_mul(dfa, dfb) > entry_cap) throw CapacityError("contract: intermediate tensor exceeds cap");

  std::vector<int> oa = free_a, ob = shared;
  oa.insert(oa.end(), shared.begin(), shared.end());
  ob.insert(ob.end(), free_b.begin(), free_b.end());
  Tensor pa = permute(a, oa), pb = permute(b, ob);

  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> ma(pa.data.data(), dfa, ds);
  Eigen::Map<const RowMat> mb(pb.data.data(), ds, dfb);
  RowMat prod = ma * mb;

  Tensor out;
  out.labels = free_a;
  out.labels.insert(out.labels.end(), free_b.begin(), free_b.end());
  for (int l : free_a) out.dims.push_back(a.dim_of(l));
  for (int l : free_b) out.dims.push_back(b.dim_of(l));
  out.data = Eigen::Map<const Vec>(prod.data(), prod.size());
  return out;
}

inline Tensor relabel(Tensor t, int from, int to) {
  for (auto& l : t.labels)
    if (l == from) l = to;
  return t;
}

}  // namespace solvcirc
