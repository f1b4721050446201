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

// Learnable part of the predictor.
//
//   H0      = F * W_embed                      (F: ancestor indicator rows)
//   H(l+1)  = relu(A_hat * H(l) * W_gcn[l])    l = 0..M-1
//   P       = E * W_proj + b                   (E: batch of sequence vectors)
//   Y       = sigmoid(P * H(M)^T)              batch x N
//
// Everything is templated on the scalar type; training and I/O use double.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontopred/random.hpp"
#include "ontopred/types.hpp"

namespace ontopred {

struct ModelConfig {
  Index n_terms = 0;
  Index d0 = 1;  // term embedding width
  Index d = 1;   // hidden width
  int n_layers = 2;
  Index seq_dim = 1024;
  double lr = 1e-3;
  int epochs = 10;
  int batch_size = 32;
  std::uint64_t seed = 0;
  bool projection_relu = false;
};

inline void validate(const ModelConfig& cfg) {
  if (cfg.n_terms < 1 || cfg.d0 < 1 || cfg.d < 1 || cfg.seq_dim < 1)
    throw ValidationError("model dimensions must be positive");
  if (cfg.n_layers < 1 || cfg.n_layers > 4)
    throw ValidationError("n_layers must be in 1..4");
  if (cfg.epochs < 0 || cfg.batch_size < 1 || !(cfg.lr > 0.0))
    throw ValidationError("bad training schedule");
}

template <typename Scalar>
struct ModelParams {
  Matrix<Scalar> embed;             // N x d0
  std::vector<Matrix<Scalar>> gcn;  // d0 x d, then d x d
  Matrix<Scalar> proj;              // seq_dim x d
  Matrix<Scalar> bias;              // 1 x d

  /// Stable order: embed, gcn0.., proj, bias.
  std::vector<Matrix<Scalar>*> tensors() {
    std::vector<Matrix<Scalar>*> out{&embed};
    for (auto& w : gcn) out.push_back(&w);
    out.push_back(&proj);
    out.push_back(&bias);
    return out;
  }
  std::vector<const Matrix<Scalar>*> tensors() const {
    std::vector<const Matrix<Scalar>*> out{&embed};
    for (const auto& w : gcn) out.push_back(&w);
    out.push_back(&proj);
    out.push_back(&bias);
    return out;
  }
  std::vector<std::string> tensor_names() const {
    std::vector<std::string> out{"embed"};
    for (std::size_t l = 0; l < gcn.size(); ++l)
      out.push_back("gcn" + std::to_string(l));
    out.push_back("proj");
    out.push_back("bias");
    return out;
  }

  ModelParams zeros_like() const {
    ModelParams z;
    z.embed = Matrix<Scalar>::Zero(embed.rows(), embed.cols());
    for (const auto& w : gcn) z.gcn.push_back(Matrix<Scalar>::Zero(w.rows(), w.cols()));
    z.proj = Matrix<Scalar>::Zero(proj.rows(), proj.cols());
    z.bias = Matrix<Scalar>::Zero(bias.rows(), bias.cols());
    return z;
  }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    if (a.gcn.size() != b.gcn.size()) return false;
    const auto ta = a.tensors();
    const auto tb = b.tensors();
    for (std::size_t k = 0; k < ta.size(); ++k)
      if (ta[k]->rows() != tb[k]->rows() || ta[k]->cols() != tb[k]->cols() ||
          *ta[k] != *tb[k])
        return false;
    return true;
  }
};

/// Glorot-uniform weights, zero bias. Tensor k draws from make_stream(seed, k)
/// in row-major order, so its values do not depend on the other shapes.
template <typename Scalar = double>
ModelParams<Scalar> init_params(const ModelConfig& cfg) {
  validate(cfg);
  std::uint64_t stream = 0;
  auto glorot = [&](Index rows, Index cols) {
    auto rng = make_stream(cfg.seed, stream++);
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix<Scalar> w(rows, cols);
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c)
        w(r, c) = static_cast<Scalar>((2.0 * rng.uniform() - 1.0) * bound);
    return w;
  };
  ModelParams<Scalar> p;
  p.embed = glorot(cfg.n_terms, cfg.d0);
  for (int l = 0; l < cfg.n_layers; ++l)
    p.gcn.push_back(l == 0 ? glorot(cfg.d0, cfg.d) : glorot(cfg.d, cfg.d));
  p.proj = glorot(cfg.seq_dim, cfg.d);
  p.bias = Matrix<Scalar>::Zero(1, cfg.d);
  return p;
}

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite())
    throw std::runtime_error(std::string("non-finite values in ") + what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("shape mismatch: " + what);
}

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-z));
  const Scalar e = std::exp(z);
  return e / (Scalar(1) + e);
}

}  // namespace detail

/// Row i is the sum of W_embed rows over the nonzeros of features row i.
template <typename Scalar>
Matrix<Scalar> embed_terms(const SparseRowMatrix<Scalar>& features,
                           const Matrix<Scalar>& w_embed) {
  detail::require(features.cols() == w_embed.rows(),
                  "features cols != embed rows");
  return features * w_embed;
}

template <typename Scalar>
struct GraphCache {
  std::vector<Matrix<Scalar>> h;   // h[0] = H0, h[l+1] = relu(z[l])
  std::vector<Matrix<Scalar>> ah;  // A_hat * h[l]
  std::vector<Matrix<Scalar>> z;   // ah[l] * W_gcn[l]

  const Matrix<Scalar>& output() const { return h.back(); }
};

template <typename Scalar>
GraphCache<Scalar> gcn_forward(Matrix<Scalar> h0,
                               const SparseRowMatrix<Scalar>& adjacency,
                               const std::vector<Matrix<Scalar>>& weights) {
  detail::require(adjacency.rows() == h0.rows() &&
                      adjacency.cols() == h0.rows(),
                  "adjacency is not N x N");
  GraphCache<Scalar> cache;
  cache.h.push_back(std::move(h0));
  for (std::size_t l = 0; l < weights.size(); ++l) {
    detail::require(weights[l].rows() == cache.h[l].cols(),
                    "gcn layer " + std::to_string(l) + " input width");
    cache.ah.push_back(adjacency * cache.h[l]);
    cache.z.push_back(cache.ah[l] * weights[l]);
    cache.h.push_back(cache.z[l].cwiseMax(Scalar(0)));
    detail::require_finite(cache.h.back(), "gcn activations");
  }
  return cache;
}

template <typename Scalar>
GraphCache<Scalar> graph_forward(const ModelParams<Scalar>& params,
                                 const SparseRowMatrix<Scalar>& adjacency,
                                 const SparseRowMatrix<Scalar>& features) {
  return gcn_forward(embed_terms(features, params.embed), adjacency,
                     params.gcn);
}

/// P = E * W_proj + b, one row per sequence. `pre` receives the value before
/// the optional ReLU.
template <typename Scalar>
Matrix<Scalar> project_sequences(const Matrix<Scalar>& embeddings,
                                 const Matrix<Scalar>& w_proj,
                                 const Matrix<Scalar>& bias, bool relu = false,
                                 Matrix<Scalar>* pre = nullptr) {
  detail::require(embeddings.cols() == w_proj.rows(),
                  "embedding width " + std::to_string(embeddings.cols()) +
                      " != " + std::to_string(w_proj.rows()));
  Matrix<Scalar> p = embeddings * w_proj;
  p.rowwise() += bias.row(0);
  if (pre) *pre = p;
  if (relu) p = p.cwiseMax(Scalar(0));
  return p;
}

template <typename Scalar>
Vector<Scalar> project_sequence(const Vector<Scalar>& embedding,
                                const Matrix<Scalar>& w_proj,
                                const Matrix<Scalar>& bias, bool relu = false) {
  detail::require_finite(embedding, "sequence embedding");
  const Matrix<Scalar> row = embedding.transpose();
  return project_sequences(row, w_proj, bias, relu).row(0).transpose();
}

/// Y[i] = sigmoid(<H row i, P>).
template <typename Scalar>
Vector<Scalar> predict(const Matrix<Scalar>& h_final,
                       const Vector<Scalar>& projected) {
  detail::require(h_final.cols() == projected.size(), "hidden width");
  return (h_final * projected).unaryExpr(
      [](Scalar z) { return detail::sigmoid(z); });
}

template <typename Scalar>
Matrix<Scalar> sigmoid(const Matrix<Scalar>& logits) {
  return logits.unaryExpr([](Scalar z) { return detail::sigmoid(z); });
}

/// Mean binary cross entropy over all entries, from logits:
/// max(z, 0) - z t + log(1 + exp(-|z|)).
template <typename Scalar>
Scalar bce_with_logits(const Matrix<Scalar>& logits,
                       const Matrix<Scalar>& targets) {
  detail::require(logits.rows() == targets.rows() &&
                      logits.cols() == targets.cols(),
                  "loss operands");
  Scalar sum(0);
  for (Index c = 0; c < logits.cols(); ++c)
    for (Index r = 0; r < logits.rows(); ++r) {
      const Scalar z = logits(r, c);
      sum += std::max(z, Scalar(0)) - z * targets(r, c) +
             std::log1p(std::exp(-std::abs(z)));
    }
  return sum / static_cast<Scalar>(logits.size());
}

/// Same loss from probabilities; converts to logits first.
template <typename Scalar>
Scalar bce_loss(const Matrix<Scalar>& probs, const Matrix<Scalar>& targets) {
  const Matrix<Scalar> logits = probs.unaryExpr(
      [](Scalar y) { return std::log(y) - std::log1p(-y); });
  return bce_with_logits(logits, targets);
}

template <typename Scalar>
struct ForwardCache {
  GraphCache<Scalar> graph;
  Matrix<Scalar> p_pre;   // batch x d before the optional projection ReLU
  Matrix<Scalar> p;       // batch x d
  Matrix<Scalar> logits;  // batch x N
  Matrix<Scalar> y;       // batch x N
};

template <typename Scalar>
ForwardCache<Scalar> forward(const ModelParams<Scalar>& params,
                             const SparseRowMatrix<Scalar>& adjacency,
                             const SparseRowMatrix<Scalar>& features,
                             const Matrix<Scalar>& embeddings,
                             bool projection_relu = false) {
  ForwardCache<Scalar> c;
  c.graph = graph_forward(params, adjacency, features);
  c.p = project_sequences(embeddings, params.proj, params.bias,
                          projection_relu, &c.p_pre);
  c.logits = c.p * c.graph.output().transpose();
  c.y = sigmoid(c.logits);
  return c;
}

/// Exact gradients of bce_with_logits(cache.logits, targets) with respect to
/// every parameter. The ReLU derivative at 0 is taken as 0.
template <typename Scalar>
ModelParams<Scalar> backward(const ModelParams<Scalar>& params,
                             const ForwardCache<Scalar>& cache,
                             const Matrix<Scalar>& embeddings,
                             const Matrix<Scalar>& targets,
                             const SparseRowMatrix<Scalar>& adjacency,
                             const SparseRowMatrix<Scalar>& features,
                             bool projection_relu = false) {
  detail::require(targets.rows() == cache.y.rows() &&
                      targets.cols() == cache.y.cols(),
                  "targets vs predictions");
  ModelParams<Scalar> g;
  const Matrix<Scalar> d_logits =
      (cache.y - targets) / static_cast<Scalar>(cache.y.size());
  const Matrix<Scalar>& h_final = cache.graph.output();

  Matrix<Scalar> d_p = d_logits * h_final;
  if (projection_relu)
    d_p = d_p.cwiseProduct(
        (cache.p_pre.array() > Scalar(0)).matrix().template cast<Scalar>());
  g.proj = embeddings.transpose() * d_p;
  g.bias = d_p.colwise().sum();

  Matrix<Scalar> d_h = d_logits.transpose() * cache.p;
  g.gcn.resize(params.gcn.size());
  for (std::size_t l = params.gcn.size(); l-- > 0;) {
    const Matrix<Scalar> d_z = d_h.cwiseProduct(
        (cache.graph.z[l].array() > Scalar(0)).matrix().template cast<Scalar>());
    g.gcn[l] = cache.graph.ah[l].transpose() * d_z;
    const Matrix<Scalar> d_ah = d_z * params.gcn[l].transpose();
    d_h = adjacency.transpose() * d_ah;
  }
  g.embed = features.transpose() * d_h;
  return g;
}

struct AdamOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename Scalar>
struct AdamState {
  ModelParams<Scalar> m;
  ModelParams<Scalar> v;
  long step = 0;

  static AdamState zeros_like(const ModelParams<Scalar>& p) {
    return {p.zeros_like(), p.zeros_like(), 0};
  }
};

/// One bias-corrected Adam update in place.
template <typename Scalar>
void adam_step(ModelParams<Scalar>& params, const ModelParams<Scalar>& grads,
               AdamState<Scalar>& state, const AdamOptions& opt = {}) {
  ++state.step;
  const Scalar b1(opt.beta1), b2(opt.beta2);
  const Scalar c1 = Scalar(1) - std::pow(b1, static_cast<Scalar>(state.step));
  const Scalar c2 = Scalar(1) - std::pow(b2, static_cast<Scalar>(state.step));
  auto p = params.tensors();
  const auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  for (std::size_t k = 0; k < p.size(); ++k) {
    detail::require(g[k]->rows() == p[k]->rows() && g[k]->cols() == p[k]->cols(),
                    "gradient shape");
    *m[k] = b1 * *m[k] + (Scalar(1) - b1) * *g[k];
    *v[k] = b2 * *v[k] + (Scalar(1) - b2) * g[k]->cwiseAbs2();
    p[k]->array() -= Scalar(opt.lr) * (m[k]->array() / c1) /
                     ((v[k]->array() / c2).sqrt() + Scalar(opt.eps));
  }
}

}  // namespace ontopred
