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

#pragma once

// Graph-side numerical inputs: annotation frequencies, information content,
// conditional priors, the weighted `is_a` adjacency and its normalization,
// and the ancestor indicator features.

#include <vector>

#include "ontopred/ontology.hpp"
#include "ontopred/types.hpp"

namespace ontopred {

struct ICTable {
  VectorXd freq;
  VectorXd p;
  VectorXd ic;
  /// freq of the namespace root used as the normalizer.
  double root_freq = 0.0;
  /// Probability substituted for terms with freq 0: 1 / (root_freq + 1).
  double zero_freq_floor = 0.0;
  std::size_t floored_terms = 0;
};

/// freq(k) = U[k] + sum of freq over the direct children of k. A descendant
/// reachable through several paths is counted once per path.
VectorXd compute_freq(const Eigen::VectorXi& counts, const OntologyGraph& g);

/// p(k) = freq(k) / freq(root), ic(k) = -ln p(k), for the terms of `ns`.
/// With several roots the largest root frequency is the normalizer. Terms of
/// other namespaces get p = 1, ic = 0. Throws ValidationError when the root
/// frequency is zero.
ICTable compute_ic(const VectorXd& freq, const OntologyGraph& g, Namespace ns);

/// U[child] / U[parent], or 0 when U[parent] is 0.
double compute_prior(const Eigen::VectorXi& counts, Index parent, Index child);

/// Raw edge weights keyed (parent, child), one entry per `is_a` edge.
struct WeightedAdjacency {
  Index n = 0;
  SparseMatrixXd raw;
};

/// weight(t, s) = prior(s | t) + ic(s) / sum_{i in children(t)} ic(i). A zero
/// denominator splits the IC share uniformly over the children.
WeightedAdjacency build_adjacency(const Eigen::VectorXi& counts,
                                  const ICTable& ic, const OntologyGraph& g);

/// D^-1 (max(A, A^T) + I): row-stochastic, self-loops on the diagonal.
SparseMatrixXd normalize_adjacency(const WeightedAdjacency& a);

/// Row i has ones at i and at every ancestor of i.
struct NodeFeatureMatrix {
  SparseMatrixXd matrix;

  Index size() const { return matrix.rows(); }
  std::vector<Index> row_terms(Index i) const;
};

NodeFeatureMatrix build_onehot_features(const OntologyGraph& g);
NodeFeatureMatrix build_onehot_features(
    const std::vector<std::vector<Index>>& closure);

}  // namespace ontopred
