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

#include <doctest.h>

#include <cmath>

#include "ontopred/annotations.hpp"
#include "ontopred/go_features.hpp"
#include "ontopred/model.hpp"
#include "support/fixtures.hpp"
#include "support/model_instance.hpp"
#include "support/oracles.hpp"

using namespace ontopred;
using namespace ontopred::testing;

TEST_CASE("init_params is seeded and bounded") {
  ModelConfig cfg;
  cfg.n_terms = 12;
  cfg.d0 = 4;
  cfg.d = 5;
  cfg.seq_dim = 7;
  cfg.seed = 42;
  const auto a = init_params<double>(cfg);
  const auto b = init_params<double>(cfg);
  CHECK(a == b);
  const double bound = std::sqrt(6.0 / (4 + 5));
  CHECK(a.gcn[0].cwiseAbs().maxCoeff() <= bound);
  CHECK(a.bias.isZero());
  CHECK(a.gcn.size() == 2);
  CHECK(a.gcn[1].rows() == 5);

  cfg.seed = 43;
  CHECK_FALSE(init_params<double>(cfg) == a);

  // A tensor's values do not depend on the sizes of the others.
  ModelConfig wider = cfg;
  wider.seed = 42;
  wider.seq_dim = 30;
  wider.n_terms = 3;
  CHECK(init_params<double>(wider).gcn[0] == a.gcn[0]);

  cfg.n_layers = 0;
  CHECK_THROWS_AS(init_params<double>(cfg), ValidationError);
}

TEST_CASE("embed_terms sums ancestor rows") {
  const auto g = t1();
  const auto f = build_onehot_features(g);
  MatrixXd w(4, 2);
  w << 1, 2, 3, 4, 5, 6, 7, 8;
  const auto h0 = embed_terms(f.matrix, w);
  CHECK(h0.row(0) == w.row(0));
  CHECK(h0.row(3) == w.colwise().sum());
  CHECK(embed_terms(f.matrix, MatrixXd::Zero(4, 2).eval()).isZero());
  CHECK_THROWS_AS(embed_terms(f.matrix, MatrixXd::Zero(3, 2).eval()), ValidationError);
}

TEST_CASE("gcn_forward") {
  SUBCASE("identity layer") {
    SparseMatrixXd eye(3, 3);
    eye.setIdentity();
    MatrixXd h0(3, 2);
    h0 << 1, 0, 2, 3, 0.5, 4;
    const auto cache = gcn_forward<double>(h0, eye, {MatrixXd::Identity(2, 2)});
    CHECK(cache.output() == h0);
  }
  SUBCASE("zero input") {
    SparseMatrixXd eye(3, 3);
    eye.setIdentity();
    const auto cache = gcn_forward<double>(MatrixXd::Zero(3, 2), eye,
                                           {MatrixXd::Random(2, 4), MatrixXd::Random(4, 4)});
    CHECK(cache.output().isZero());
  }
  SUBCASE("two-node hand computation") {
    SparseMatrixXd a(2, 2);
    a.insert(0, 0) = 0.6;
    a.insert(0, 1) = 0.4;
    a.insert(1, 0) = 0.25;
    a.insert(1, 1) = 0.75;
    MatrixXd h0(2, 1);
    h0 << 1, 2;
    MatrixXd w1(1, 1), w2(1, 1);
    w1 << 2;
    w2 << 0.5;
    const auto out = gcn_forward<double>(h0, a, {w1, w2}).output();
    CHECK(out(0, 0) == doctest::Approx(1.54).epsilon(1e-14));
    CHECK(out(1, 0) == doctest::Approx(1.6625).epsilon(1e-14));
    w1 << -1;
    CHECK(gcn_forward<double>(h0, a, {w1, w2}).output().isZero());
  }
  SUBCASE("non-finite activations abort") {
    SparseMatrixXd eye(1, 1);
    eye.setIdentity();
    MatrixXd h0(1, 1);
    h0 << std::numeric_limits<double>::infinity();
    CHECK_THROWS(gcn_forward<double>(h0, eye, {MatrixXd::Ones(1, 1)}));
  }
}

TEST_CASE("project_sequence") {
  MatrixXd w = MatrixXd::Zero(5, 3);
  w.topRows(3).setIdentity();
  VectorXd e(5);
  e << 1, -2, 3, 4, 5;
  CHECK(project_sequence<double>(VectorXd::Zero(5), w, MatrixXd::Zero(1, 3)).isZero());
  CHECK(project_sequence<double>(e, w, MatrixXd::Zero(1, 3)) == e.head(3));

  SplitMix64 rng(3);
  MatrixXd wr(5, 3), bias(1, 3);
  for (Index r = 0; r < 5; ++r)
    for (Index c = 0; c < 3; ++c) wr(r, c) = gaussian(rng);
  for (Index c = 0; c < 3; ++c) bias(0, c) = gaussian(rng);
  const VectorXd p = project_sequence<double>(e, wr, bias);
  for (Index c = 0; c < 3; ++c) {
    double dot = bias(0, c);
    for (Index r = 0; r < 5; ++r) dot += e(r) * wr(r, c);
    CHECK(std::abs(p(c) - dot) <= 1e-12);
  }
  CHECK_THROWS_AS(project_sequence<double>(VectorXd::Zero(4), w, MatrixXd::Zero(1, 3)),
                  ValidationError);
  const VectorXd relu = project_sequence<double>(e, w, MatrixXd::Zero(1, 3), true);
  CHECK(relu(1) == 0.0);
}

TEST_CASE("predict") {
  MatrixXd h(2, 2);
  h << 1, -1, 0, 0;
  VectorXd p(2);
  p << 2, 0.5;
  const auto y = predict<double>(h, p);
  CHECK(y(0) == doctest::Approx(1.0 / (1.0 + std::exp(-1.5))));
  CHECK(y(0) == doctest::Approx(0.81757).epsilon(1e-5));
  CHECK(y(1) == 0.5);
  CHECK((predict<double>(h, VectorXd::Zero(2)).array() == 0.5).all());
}

TEST_CASE("bce_loss") {
  const MatrixXd half = MatrixXd::Constant(3, 4, 0.5);
  const MatrixXd t = MatrixXd::Zero(3, 4);
  CHECK(bce_loss(half, t) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  MatrixXd y(2, 2), tt(2, 2);
  y << 1e-12, 1 - 1e-12, 1 - 1e-12, 1e-12;
  tt << 0, 1, 1, 0;
  CHECK(bce_loss(y, tt) < 1e-10);

  y << 0.9, 0.2, 0.4, 0.7;
  tt << 1, 0, 0, 1;
  const double hand =
      -(std::log(0.9) + std::log(0.8) + std::log(0.6) + std::log(0.7)) / 4.0;
  CHECK(bce_loss(y, tt) == doctest::Approx(hand).epsilon(1e-12));
  CHECK(bce_loss(y, tt) == doctest::Approx(0.299001159).epsilon(1e-9));

  // Logit form stays finite where probabilities would round to 0 or 1.
  MatrixXd z(1, 2), target(1, 2);
  z << 800, -800;
  target << 0, 1;
  CHECK(bce_with_logits(z, target) == doctest::Approx(800.0));
}

TEST_CASE("backward matches central differences") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = tiny_instance(seed, seed % 2 ? 2 : 1);
    CHECK(max_gradient_error(inst) < 1e-5);
  }
}

TEST_CASE("gradient vanishes at a saturated optimum") {
  auto inst = tiny_instance(17, 2);
  inst.params.proj *= 1e4;
  const auto fwd = forward(inst.params, inst.adjacency, inst.features, inst.embeddings);
  inst.targets = (fwd.logits.array() > 0).cast<double>().matrix();
  const auto again = forward(inst.params, inst.adjacency, inst.features, inst.embeddings);
  const auto g = backward(inst.params, again, inst.embeddings, inst.targets,
                          inst.adjacency, inst.features);
  double norm = 0;
  for (const auto* t : g.tensors()) norm += t->squaredNorm();
  CHECK(std::sqrt(norm) < 1e-6);
}

TEST_CASE("duplicating the batch leaves mean-loss gradients unchanged") {
  const auto inst = tiny_instance(5, 2);
  MatrixXd e2(4, inst.embeddings.cols()), t2(4, inst.targets.cols());
  e2 << inst.embeddings, inst.embeddings;
  t2 << inst.targets, inst.targets;
  const auto f1 = forward(inst.params, inst.adjacency, inst.features, inst.embeddings);
  const auto f2 = forward(inst.params, inst.adjacency, inst.features, e2);
  CHECK(bce_with_logits(f1.logits, inst.targets) ==
        doctest::Approx(bce_with_logits(f2.logits, t2)).epsilon(1e-14));
  const auto g1 = backward(inst.params, f1, inst.embeddings, inst.targets,
                           inst.adjacency, inst.features);
  const auto g2 = backward(inst.params, f2, e2, t2, inst.adjacency, inst.features);
  const auto a = g1.tensors();
  const auto b = g2.tensors();
  for (std::size_t k = 0; k < a.size(); ++k)
    CHECK((*a[k] - *b[k]).cwiseAbs().maxCoeff() <= 1e-14 * (1 + a[k]->cwiseAbs().maxCoeff()));
}

TEST_CASE("adam_step") {
  ModelParams<double> p;
  p.embed = MatrixXd::Zero(1, 1);
  p.proj = MatrixXd::Zero(1, 1);
  p.bias = MatrixXd::Zero(1, 1);
  auto g = p.zeros_like();
  g.embed(0, 0) = 1.0;
  auto state = AdamState<double>::zeros_like(p);
  adam_step(p, g, state);
  CHECK(p.embed(0, 0) == doctest::Approx(-1e-3).epsilon(1e-7));
  CHECK(p.proj(0, 0) == 0.0);  // zero gradient, no movement
  CHECK(state.step == 1);

  // Constant unit gradient: every bias-corrected step has size lr.
  for (int k = 0; k < 9; ++k) adam_step(p, g, state);
  CHECK(p.embed(0, 0) == doctest::Approx(-1e-2).epsilon(1e-6));

  auto q1 = tiny_instance(2, 2).params;
  auto q2 = q1;
  const auto grads = tiny_instance(3, 2).params;
  auto s1 = AdamState<double>::zeros_like(q1);
  auto s2 = AdamState<double>::zeros_like(q2);
  for (int k = 0; k < 3; ++k) {
    adam_step(q1, grads, s1);
    adam_step(q2, grads, s2);
  }
  CHECK(q1 == q2);
}
