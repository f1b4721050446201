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
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ontopred;
using namespace ontopred::testing;

namespace {

constexpr Index R = 0, A = 1, B = 2, C = 3;

Eigen::VectorXi t1_counts() {
  Eigen::VectorXi u(4);
  u << 3, 2, 2, 1;
  return u;
}

}  // namespace

TEST_CASE("compute_freq follows the recursion literally") {
  const auto g = t1();
  const auto freq = compute_freq(t1_counts(), g);
  CHECK(freq(C) == 1.0);
  CHECK(freq(A) == 3.0);
  CHECK(freq(B) == 3.0);
  CHECK(freq(R) == 9.0);  // C counted under both A and B
  CHECK(compute_freq(Eigen::VectorXi::Zero(4), g).sum() == 0.0);
}

TEST_CASE("compute_ic on the diamond") {
  const auto g = t1();
  const auto ic = compute_ic(compute_freq(t1_counts(), g), g, Namespace::BPO);
  CHECK(ic.p(A) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(ic.ic(A) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(ic.ic(A) == doctest::Approx(1.09861).epsilon(1e-5));
  CHECK(ic.ic(C) == doctest::Approx(std::log(9.0)).epsilon(1e-15));
  CHECK(ic.ic(C) >= ic.ic(A));
  CHECK(ic.p(R) == 1.0);
  CHECK(ic.ic(R) == 0.0);
  CHECK_THROWS_AS(compute_ic(VectorXd::Zero(4), g, Namespace::BPO), ValidationError);
}

TEST_CASE("zero-frequency terms use the floor") {
  const auto g = t1();
  Eigen::VectorXi u(4);
  u << 2, 2, 0, 0;  // only A annotated (propagated)
  const auto ic = compute_ic(compute_freq(u, g), g, Namespace::BPO);
  CHECK(ic.root_freq == 4.0);  // R: 2 + A(2) + B(0)
  CHECK(ic.zero_freq_floor == doctest::Approx(0.2));
  CHECK(ic.ic(B) == doctest::Approx(std::log(5.0)));
  CHECK(ic.floored_terms == 2);
  CHECK(std::isfinite(ic.ic(C)));
}

TEST_CASE("compute_prior") {
  const auto u = t1_counts();
  CHECK(compute_prior(u, A, C) == 0.5);
  Eigen::VectorXi same(4);
  same << 2, 2, 0, 0;
  CHECK(compute_prior(same, R, A) == 1.0);
  CHECK(compute_prior(same, B, C) == 0.0);
}

TEST_CASE("build_adjacency on the diamond") {
  const auto g = t1();
  const auto u = t1_counts();
  const auto ic = compute_ic(compute_freq(u, g), g, Namespace::BPO);
  const auto adj = build_adjacency(u, ic, g);
  CHECK(adj.raw.nonZeros() == 4);
  CHECK(adj.raw.coeff(A, C) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(adj.raw.coeff(R, A) == doctest::Approx(2.0 / 3.0 + 0.5).epsilon(1e-15));
  CHECK(adj.raw.coeff(R, A) == doctest::Approx(1.16667).epsilon(1e-5));
  CHECK(adj.raw.coeff(C, A) == 0.0);  // stored parent -> child only
}

TEST_CASE("adjacency with no information splits uniformly") {
  // R with three children; nothing annotated below R.
  const auto g = parse_obo(
      "[Term]\nid: GO:0000001\nname: r\nnamespace: biological_process\n"
      "[Term]\nid: GO:0000002\nname: a\nnamespace: biological_process\nis_a: GO:0000001\n"
      "[Term]\nid: GO:0000003\nname: b\nnamespace: biological_process\nis_a: GO:0000001\n"
      "[Term]\nid: GO:0000004\nname: c\nnamespace: biological_process\nis_a: GO:0000001\n");
  Eigen::VectorXi u(4);
  u << 1, 0, 0, 0;
  auto ic = compute_ic(compute_freq(u, g), g, Namespace::BPO);
  // Zero ic on every child forces the uniform rule.
  ic.ic.setZero();
  const auto adj = build_adjacency(u, ic, g);
  for (Index s = 1; s < 4; ++s) CHECK(adj.raw.coeff(0, s) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("normalize_adjacency") {
  SUBCASE("single term") {
    WeightedAdjacency a{1, SparseMatrixXd(1, 1)};
    const auto norm = normalize_adjacency(a);
    CHECK(norm.coeff(0, 0) == 1.0);
  }
  SUBCASE("two-term chain") {
    const double w = 1.7;
    WeightedAdjacency a{2, SparseMatrixXd(2, 2)};
    a.raw.insert(0, 1) = w;  // parent 0 -> child 1
    const auto norm = normalize_adjacency(a);
    CHECK(norm.coeff(1, 0) == doctest::Approx(w / (1 + w)));
    CHECK(norm.coeff(1, 1) == doctest::Approx(1 / (1 + w)));
    CHECK(norm.coeff(0, 1) == doctest::Approx(w / (1 + w)));
  }
  SUBCASE("diamond rows sum to one") {
    const auto g = t1();
    const auto u = t1_counts();
    const auto norm = normalize_adjacency(
        build_adjacency(u, compute_ic(compute_freq(u, g), g, Namespace::BPO), g));
    const MatrixXd dense(norm);
    for (Index r = 0; r < 4; ++r) CHECK(dense.row(r).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dense.minCoeff() >= 0.0);
  }
}

TEST_CASE("one-hot ancestor features") {
  const auto g = t1();
  const auto f = build_onehot_features(g);
  CHECK(f.row_terms(C) == std::vector<Index>{R, A, B, C});
  CHECK(f.row_terms(R) == std::vector<Index>{R});
  std::size_t expected = 0;
  for (Index i = 0; i < g.size(); ++i) expected += 1 + ancestors(g, i).size();
  CHECK(static_cast<std::size_t>(f.matrix.nonZeros()) == expected);
}

TEST_CASE("graph feature properties on random corpora") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_dag(rng, 2 + static_cast<int>(rng.below(150)), 3, 0.05);
    auto set = random_annotations(rng, g, 60, 4);
    set.labels[0].push_back(0);  // at least one annotation
    set = propagate_true_path(set, g);
    const auto u = count_annotations(set, g.size());
    const auto ic = compute_ic(compute_freq(u, g), g, Namespace::BPO);
    for (Index i = 0; i < g.size(); ++i) {
      CHECK(ic.ic(i) >= 0.0);
      for (Index p : g.parents(i)) {
        CHECK(ic.ic(i) >= ic.ic(p));
        const double prior = compute_prior(u, p, i);
        CHECK(prior >= 0.0);
        CHECK(prior <= 1.0);
      }
    }
    const auto adj = build_adjacency(u, ic, g);
    CHECK(static_cast<std::size_t>(adj.raw.nonZeros()) == g.edge_count());
    for (Index r = 0; r < adj.raw.outerSize(); ++r)
      for (SparseMatrixXd::InnerIterator it(adj.raw, r); it; ++it) {
        CHECK(it.value() > 0.0);
        CHECK(it.value() <= 2.0);
      }
    const auto norm = normalize_adjacency(adj);
    for (Index r = 0; r < norm.outerSize(); ++r) {
      double sum = 0;
      for (SparseMatrixXd::InnerIterator it(norm, r); it; ++it) {
        CHECK(it.value() >= 0.0);
        sum += it.value();
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
    const auto f = build_onehot_features(g);
    for (Index i = 0; i < g.size(); ++i) {
      auto expected = ancestors(g, i);
      expected.push_back(i);
      std::sort(expected.begin(), expected.end());
      CHECK(f.row_terms(i) == expected);
    }
  }
}
