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

#include "ontopred/training.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ontopred/random.hpp"

namespace ontopred {

namespace {

constexpr std::size_t kEvalChunk = 256;
constexpr std::uint64_t kShuffleStreamBase = 1000;

void check_inputs(const ModelConfig& cfg, const TrainingData& data,
                  const GraphInputs& graph) {
  validate(cfg);
  if (data.embeddings.rows() != static_cast<Index>(data.labels.size()))
    throw ValidationError("embedding rows != label rows");
  if (data.embeddings.cols() != cfg.seq_dim)
    throw ValidationError("embedding width " +
                          std::to_string(data.embeddings.cols()) +
                          " != seq_dim " + std::to_string(cfg.seq_dim));
  if (graph.adjacency.rows() != cfg.n_terms ||
      graph.features.rows() != cfg.n_terms)
    throw ValidationError("graph inputs do not have n_terms rows");
}

MatrixXd gather_rows(const MatrixXd& m, const std::vector<std::size_t>& rows) {
  MatrixXd out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
    out.row(static_cast<Index>(k)) = m.row(static_cast<Index>(rows[k]));
  return out;
}

}  // namespace

MatrixXd batch_targets(const std::vector<std::vector<Index>>& labels,
                       const std::vector<std::size_t>& rows, Index n_terms) {
  MatrixXd t = MatrixXd::Zero(static_cast<Index>(rows.size()), n_terms);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (Index term : labels.at(rows[k])) t(static_cast<Index>(k), term) = 1.0;
  return t;
}

double dataset_loss(const ModelConfig& cfg, const ModelParams<double>& params,
                    const TrainingData& data, const GraphInputs& graph) {
  check_inputs(cfg, data, graph);
  const auto cache = graph_forward(params, graph.adjacency, graph.features);
  const MatrixXd& h = cache.output();
  const std::size_t n = data.labels.size();
  double total = 0.0;
  for (std::size_t lo = 0; lo < n; lo += kEvalChunk) {
    std::vector<std::size_t> rows(std::min(kEvalChunk, n - lo));
    std::iota(rows.begin(), rows.end(), lo);
    const MatrixXd p =
        project_sequences(gather_rows(data.embeddings, rows), params.proj,
                          params.bias, cfg.projection_relu);
    const MatrixXd logits = p * h.transpose();
    total += bce_with_logits(logits, batch_targets(data.labels, rows, cfg.n_terms)) *
             static_cast<double>(rows.size());
  }
  return n ? total / static_cast<double>(n) : 0.0;
}

TrainResult train(
    const ModelConfig& cfg, const TrainingData& data, const GraphInputs& graph,
    const std::function<void(const EpochLog&, const ModelParams<double>&)>&
        on_epoch) {
  check_inputs(cfg, data, graph);
  if (data.labels.empty()) throw ValidationError("no training proteins");

  TrainResult result;
  result.params = init_params<double>(cfg);
  result.initial_loss = dataset_loss(cfg, result.params, data, graph);
  auto state = AdamState<double>::zeros_like(result.params);
  const AdamOptions adam{cfg.lr};

  std::vector<std::size_t> order(data.labels.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto rng = make_stream(cfg.seed, kShuffleStreamBase +
                                         static_cast<std::uint64_t>(epoch));
    shuffle(order, rng);
    double weighted = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t lo = 0; lo < order.size(); lo += batch, ++batch_index) {
      const std::vector<std::size_t> rows(
          order.begin() + static_cast<std::ptrdiff_t>(lo),
          order.begin() +
              static_cast<std::ptrdiff_t>(std::min(order.size(), lo + batch)));
      const MatrixXd e = gather_rows(data.embeddings, rows);
      const MatrixXd t = batch_targets(data.labels, rows, cfg.n_terms);
      ForwardCache<double> cache;
      try {
        cache = forward(result.params, graph.adjacency, graph.features, e,
                        cfg.projection_relu);
      } catch (const std::runtime_error& err) {
        throw TrainingError("epoch " + std::to_string(epoch) + " batch " +
                            std::to_string(batch_index) + ": " + err.what());
      }
      const double loss = bce_with_logits(cache.logits, t);
      if (!std::isfinite(loss))
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                            " batch " + std::to_string(batch_index));
      weighted += loss * static_cast<double>(rows.size());
      const auto grads = backward(result.params, cache, e, t, graph.adjacency,
                                  graph.features, cfg.projection_relu);
      adam_step(result.params, grads, state, adam);
    }
    EpochLog entry{epoch, weighted / static_cast<double>(order.size()),
                   dataset_loss(cfg, result.params, data, graph)};
    result.log.push_back(entry);
    if (on_epoch) on_epoch(entry, result.params);
  }
  return result;
}

MatrixXd predict_batch(const ModelConfig& cfg,
                       const ModelParams<double>& params,
                       const GraphInputs& graph, const MatrixXd& embeddings) {
  if (embeddings.cols() != params.proj.rows())
    throw ValidationError("embedding width " +
                          std::to_string(embeddings.cols()) +
                          " does not match the model's " +
                          std::to_string(params.proj.rows()));
  const auto cache = graph_forward(params, graph.adjacency, graph.features);
  const MatrixXd p = project_sequences(embeddings, params.proj, params.bias,
                                       cfg.projection_relu);
  return sigmoid(MatrixXd(p * cache.output().transpose()));
}

}  // namespace ontopred
