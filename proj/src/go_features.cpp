// Copyright 2026 The ontopred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ontopred/go_features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ontopred {

VectorXd compute_freq(const Eigen::VectorXi& counts, const OntologyGraph& g) {
  if (counts.size() != g.size())
    throw ValidationError("count table size does not match ontology");
  VectorXd freq = counts.cast<double>();
  const auto& order = g.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (Index c : g.children(*it)) freq(*it) += freq(c);
  return freq;
}

ICTable compute_ic(const VectorXd& freq, const OntologyGraph& g, Namespace ns) {
  if (freq.size() != g.size())
    throw ValidationError("frequency table size does not match ontology");
  ICTable t;
  t.freq = freq;
  t.p = VectorXd::Ones(g.size());
  t.ic = VectorXd::Zero(g.size());
  for (Index r : g.roots(ns)) t.root_freq = std::max(t.root_freq, freq(r));
  if (!(t.root_freq > 0.0))
    throw ValidationError("namespace " + std::string(to_string(ns)) +
                          " has no annotations");
  t.zero_freq_floor = 1.0 / (t.root_freq + 1.0);
  for (Index k = 0; k < g.size(); ++k) {
    if (g.ns(k) != ns) continue;
    if (freq(k) > 0.0) {
      t.p(k) = freq(k) / t.root_freq;
    } else {
      t.p(k) = t.zero_freq_floor;
      ++t.floored_terms;
    }
    t.ic(k) = -std::log(t.p(k));
  }
  return t;
}

double compute_prior(const Eigen::VectorXi& counts, Index parent, Index child) {
  if (counts(parent) == 0) return 0.0;
  return static_cast<double>(counts(child)) /
         static_cast<double>(counts(parent));
}

WeightedAdjacency build_adjacency(const Eigen::VectorXi& counts,
                                  const ICTable& ic, const OntologyGraph& g) {
  if (counts.size() != g.size() || ic.ic.size() != g.size())
    throw ValidationError("adjacency inputs do not match ontology size");
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(g.edge_count());
  for (Index t = 0; t < g.size(); ++t) {
    const auto& kids = g.children(t);
    if (kids.empty()) continue;
    double denom = 0.0;
    for (Index s : kids) denom += ic.ic(s);
    for (Index s : kids) {
      const double share = denom > 0.0
                               ? ic.ic(s) / denom
                               : 1.0 / static_cast<double>(kids.size());
      triplets.emplace_back(t, s, compute_prior(counts, t, s) + share);
    }
  }
  WeightedAdjacency a;
  a.n = g.size();
  a.raw.resize(a.n, a.n);
  a.raw.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

SparseMatrixXd normalize_adjacency(const WeightedAdjacency& a) {
  std::vector<Eigen::Triplet<double, Index>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * a.raw.nonZeros() + a.n));
  for (Index r = 0; r < a.raw.outerSize(); ++r)
    for (SparseMatrixXd::InnerIterator it(a.raw, r); it; ++it) {
      triplets.emplace_back(it.row(), it.col(), it.value());
      triplets.emplace_back(it.col(), it.row(), it.value());
    }
  for (Index i = 0; i < a.n; ++i) triplets.emplace_back(i, i, 1.0);
  // Duplicate (i, j) pairs come from the transpose copy; keep the larger.
  // The diagonal of a DAG adjacency is empty, so it only ever holds the 1.
  SparseMatrixXd s(a.n, a.n);
  s.setFromTriplets(triplets.begin(), triplets.end(),
                    [](double x, double y) { return std::max(x, y); });
  for (Index r = 0; r < s.outerSize(); ++r) {
    double sum = 0.0;
    for (SparseMatrixXd::InnerIterator it(s, r); it; ++it) sum += it.value();
    for (SparseMatrixXd::InnerIterator it(s, r); it; ++it)
      it.valueRef() /= sum;
  }
  return s;
}

std::vector<Index> NodeFeatureMatrix::row_terms(Index i) const {
  std::vector<Index> out;
  for (SparseMatrixXd::InnerIterator it(matrix, i); it; ++it)
    out.push_back(it.col());
  return out;
}

NodeFeatureMatrix build_onehot_features(const OntologyGraph& g) {
  return build_onehot_features(ancestor_closure(g));
}

NodeFeatureMatrix build_onehot_features(
    const std::vector<std::vector<Index>>& closure) {
  const auto n = static_cast<Index>(closure.size());
  std::vector<Eigen::Triplet<double, Index>> triplets;
  std::size_t nnz = 0;
  for (const auto& row : closure) nnz += row.size() + 1;
  triplets.reserve(nnz);
  for (Index i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, 1.0);
    for (Index j : closure[static_cast<std::size_t>(i)])
      triplets.emplace_back(i, j, 1.0);
  }
  NodeFeatureMatrix f;
  f.matrix.resize(n, n);
  f.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return f;
}

}  // namespace ontopred
