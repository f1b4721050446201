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

// End-to-end preparation shared by build-graph, train and predict: namespace
// restriction, true-path propagation, isolated-term removal and the graph
// features the model consumes.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontopred/annotations.hpp"
#include "ontopred/go_features.hpp"
#include "ontopred/metrics.hpp"
#include "ontopred/training.hpp"

namespace ontopred {

inline constexpr int kDefaultDepthCap = 80;

struct PreparedGraph {
  Namespace ns = Namespace::MFO;
  OntologyGraph graph;        // namespace terms minus isolated ones
  AnnotationSet annotations;  // propagated, indexed by `graph`
  Eigen::VectorXi counts;     // U, taken after isolated-term removal
  ICTable ic;
  WeightedAdjacency adjacency;
  GraphInputs inputs;
  int max_depth = 0;
  Index d0 = 0;  // min(max_depth, depth cap)

  std::size_t namespace_terms = 0;     // before isolation filtering
  std::size_t isolated_removed = 0;
  std::size_t records_outside = 0;     // records for terms of other namespaces
};

/// `records` should already be evidence-filtered.
PreparedGraph prepare_graph(const OntologyGraph& ontology,
                            const std::vector<AnnotationRecord>& records,
                            Namespace ns, int depth_cap = kDefaultDepthCap);

/// `protein \t accession \t score` with 6 decimals, rows ordered like
/// pred.proteins then by term index. Scores below `floor` are omitted.
std::string format_predictions(const PredictionMatrix& pred,
                               const OntologyGraph& g, double floor);

/// Reads a prediction TSV into rows for `proteins` (missing pairs score 0).
/// Lines for other proteins or for terms absent from `g` are ignored.
PredictionMatrix parse_predictions(std::string_view text,
                                   const OntologyGraph& g,
                                   const std::vector<std::string>& proteins);

/// Ordered key/value record written next to every primary output.
class RunManifest {
 public:
  void set(std::string key, std::string value);
  const std::string* get(std::string_view key) const;
  std::string render() const;  // key \t value lines

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace ontopred
