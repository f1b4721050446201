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

#include <functional>
#include <stdexcept>
#include <vector>

#include "ontopred/go_features.hpp"
#include "ontopred/model.hpp"

namespace ontopred {

/// Adjacency and node features shared by every protein.
struct GraphInputs {
  SparseMatrixXd adjacency;  // row-stochastic A_hat
  SparseMatrixXd features;   // ancestor indicator rows
};

struct TrainingData {
  MatrixXd embeddings;                     // proteins x seq_dim
  std::vector<std::vector<Index>> labels;  // per protein, term indices
};

struct EpochLog {
  int epoch = 0;
  double mean_batch_loss = 0.0;  // size-weighted mean over the epoch's batches
  double full_loss = 0.0;        // whole training set, after the epoch
};

struct TrainResult {
  ModelParams<double> params;
  double initial_loss = 0.0;  // whole training set, before any update
  std::vector<EpochLog> log;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense 0/1 rows for a subset of proteins.
MatrixXd batch_targets(const std::vector<std::vector<Index>>& labels,
                       const std::vector<std::size_t>& rows, Index n_terms);

/// Mean BCE of `params` over the whole data set.
double dataset_loss(const ModelConfig& cfg, const ModelParams<double>& params,
                    const TrainingData& data, const GraphInputs& graph);

/// Mini-batch Adam. Each epoch reshuffles with make_stream(seed, 1000 + epoch);
/// the final short batch is kept. The graph branch is evaluated once per
/// batch and shared by every protein in it. `on_epoch` runs after each epoch.
TrainResult train(
    const ModelConfig& cfg, const TrainingData& data, const GraphInputs& graph,
    const std::function<void(const EpochLog&, const ModelParams<double>&)>&
        on_epoch = {});

/// Scores for every protein (rows) and term (columns).
MatrixXd predict_batch(const ModelConfig& cfg,
                       const ModelParams<double>& params,
                       const GraphInputs& graph, const MatrixXd& embeddings);

}  // namespace ontopred
