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

// Protein-centric Fmax over a 0.01 threshold grid, and area under the
// precision-recall curve pooled over (protein, term) pairs or per term.
//
// A protein counts toward the benchmark when it has at least one true term.
// At threshold t a protein predicts {i : score_i >= t}. Precision is averaged
// over benchmark proteins that predict something; recall over all benchmark
// proteins.

#include <string>
#include <vector>

#include "ontopred/ontology.hpp"
#include "ontopred/types.hpp"

namespace ontopred {

struct PredictionMatrix {
  std::vector<std::string> proteins;
  MatrixXd scores;  // proteins x terms, entries in [0, 1]
};

/// True term sets, aligned with PredictionMatrix rows.
using TruthSets = std::vector<std::vector<Index>>;

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t covered = 0;  // benchmark proteins with a non-empty prediction
};

struct EvalReport {
  double fmax = 0.0;
  double best_threshold = 0.0;
  double aupr_micro = 0.0;
  double aupr_macro = 0.0;
  std::vector<PRPoint> curve;  // 101 points, t = 0.00 .. 1.00
};

inline constexpr int kThresholdSteps = 100;

/// k-th grid threshold, k / 100.
inline double grid_threshold(int k) {
  return static_cast<double>(k) / kThresholdSteps;
}

PRPoint pr_at_threshold(const PredictionMatrix& pred, const TruthSets& truth,
                        double t);

/// 2 pr rc / (pr + rc), 0 when both are 0.
double f_measure(double precision, double recall);

/// Sweeps the grid; ties go to the smaller threshold. Fills fmax,
/// best_threshold and curve. Throws ValidationError without benchmark
/// proteins.
EvalReport fmax(const PredictionMatrix& pred, const TruthSets& truth);

enum class AuprMode { Micro, Macro };

/// Average-precision style area: sum over distinct score cut-offs of
/// (recall gain) x (precision at that cut-off). Only benchmark proteins
/// contribute pairs. Macro averages over terms with at least one positive.
double aupr(const PredictionMatrix& pred, const TruthSets& truth,
            AuprMode mode);

/// fmax() plus both AUPR variants.
EvalReport evaluate(const PredictionMatrix& pred, const TruthSets& truth);

/// Replaces each score with the max over the term and its descendants.
PredictionMatrix propagate_scores(PredictionMatrix pred, const OntologyGraph& g);

}  // namespace ontopred
