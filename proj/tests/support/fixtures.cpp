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

#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace ontopred::testing {

std::string t1_obo() {
  return "format-version: 1.2\n"
         "\n[Term]\nid: GO:0000004\nname: C\nnamespace: biological_process\n"
         "is_a: GO:0000002 ! A\nis_a: GO:0000003 ! B\n"
         "\n[Term]\nid: GO:0000001\nname: R\nnamespace: biological_process\n"
         "\n[Term]\nid: GO:0000002\nname: A\nnamespace: biological_process\n"
         "is_a: GO:0000001 ! R\n"
         "\n[Term]\nid: GO:0000003\nname: B\nnamespace: biological_process\n"
         "is_a: GO:0000001 ! R\n";
}

OntologyGraph t1() { return parse_obo(t1_obo()); }

std::string t1_annotations_tsv() {
  return "! protein\tterm\tevidence\n"
         "p1\tGO:0000004\tIDA\n"
         "p2\tGO:0000002\tIDA\n"
         "p3\tGO:0000003\tIDA\n";
}

std::string accession(std::uint64_t number) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "GO:%07llu",
                static_cast<unsigned long long>(number));
  return buf;
}

namespace {

std::vector<std::uint64_t> shuffled_numbers(SplitMix64& rng, int n) {
  std::vector<std::uint64_t> numbers(static_cast<std::size_t>(n));
  std::iota(numbers.begin(), numbers.end(), 1);
  shuffle(numbers, rng);
  return numbers;
}

}  // namespace

OntologyGraph random_dag(SplitMix64& rng, int n, int max_parents,
                         double extra_root_rate, Namespace ns) {
  const auto numbers = shuffled_numbers(rng, n);
  std::vector<TermSpec> specs;
  for (int k = 0; k < n; ++k) {
    TermSpec spec{TermId::from_string(accession(numbers[static_cast<std::size_t>(k)])),
                  "t" + std::to_string(k), ns, {}};
    if (k > 0 && rng.uniform() >= extra_root_rate) {
      const int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_parents)));
      for (int j = 0; j < want; ++j) {
        const auto p = rng.below(static_cast<std::uint64_t>(k));
        spec.is_a.push_back(TermId::from_string(accession(numbers[p])));
      }
    }
    specs.push_back(std::move(spec));
  }
  return OntologyGraph(std::move(specs));
}

OntologyGraph layered_dag(SplitMix64& rng, int n, int depth, int window) {
  // Most terms sit a few levels below the root; a one-term-wide spine
  // carries the graph down to `depth` levels.
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(depth));
  levels[0].push_back(0);
  for (int k = 1; k < n; ++k) {
    int level = static_cast<int>(1 + rng.below(6) + rng.below(6));
    level = std::min(level, depth - 1);
    if (k < depth) level = k;
    levels[static_cast<std::size_t>(level)].push_back(k);
  }
  std::vector<TermSpec> specs;
  specs.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    specs.push_back({TermId::from_string(accession(static_cast<std::uint64_t>(k) + 1)),
                     "t" + std::to_string(k), Namespace::BPO, {}});
  for (int l = 1; l < depth; ++l) {
    const auto& above = levels[static_cast<std::size_t>(l - 1)];
    const auto& here = levels[static_cast<std::size_t>(l)];
    for (std::size_t j = 0; j < here.size(); ++j) {
      // Parents come from a window around the proportional position.
      const double pos = here.size() > 1
                             ? static_cast<double>(j) / static_cast<double>(here.size() - 1)
                             : 0.0;
      const auto centre = static_cast<std::int64_t>(pos * static_cast<double>(above.size() - 1));
      const int n_parents = 1 + static_cast<int>(rng.below(3));
      for (int q = 0; q < n_parents; ++q) {
        std::int64_t idx = centre + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(window))) -
                           window / 2;
        idx = std::clamp<std::int64_t>(idx, 0, static_cast<std::int64_t>(above.size()) - 1);
        specs[static_cast<std::size_t>(here[j])].is_a.push_back(
            specs[static_cast<std::size_t>(above[static_cast<std::size_t>(idx)])].id);
      }
    }
  }
  return OntologyGraph(std::move(specs));
}

AnnotationSet random_annotations(SplitMix64& rng, const OntologyGraph& g,
                                 int proteins, int max_labels) {
  AnnotationSet a;
  for (int p = 0; p < proteins; ++p) {
    char id[16];
    std::snprintf(id, sizeof id, "P%05d", p);
    a.proteins.emplace_back(id);
    std::vector<Index> labels;
    const auto count = rng.below(static_cast<std::uint64_t>(max_labels) + 1);
    for (std::uint64_t k = 0; k < count; ++k)
      labels.push_back(static_cast<Index>(rng.below(static_cast<std::uint64_t>(g.size()))));
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    a.labels.push_back(std::move(labels));
  }
  return a;
}

double gaussian(SplitMix64& rng) {
  const double u1 = 1.0 - rng.uniform();  // (0, 1]
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

SyntheticCorpus synthetic_corpus(std::uint64_t seed, int n_terms, int proteins,
                                 int seq_dim, double noise) {
  SyntheticCorpus corpus;
  auto dag_rng = make_stream(seed, 0);
  corpus.graph = random_dag(dag_rng, n_terms, 2, 0.0, Namespace::MFO);
  const auto closure = ancestor_closure(corpus.graph);

  auto mix_rng = make_stream(seed, 1);
  MatrixXd mixing(seq_dim, n_terms);
  for (Index r = 0; r < mixing.rows(); ++r)
    for (Index c = 0; c < mixing.cols(); ++c) mixing(r, c) = gaussian(mix_rng) / std::sqrt(double(n_terms));

  auto label_rng = make_stream(seed, 2);
  auto noise_rng = make_stream(seed, 3);
  corpus.embeddings.values.resize(proteins, seq_dim);
  for (int p = 0; p < proteins; ++p) {
    char id[16];
    std::snprintf(id, sizeof id, "SYN%04d", p);
    corpus.embeddings.ids.emplace_back(id);
    const int n_direct = 1 + static_cast<int>(label_rng.below(2));
    VectorXd y = VectorXd::Zero(n_terms);
    for (int k = 0; k < n_direct; ++k) {
      const auto t = static_cast<Index>(label_rng.below(static_cast<std::uint64_t>(n_terms)));
      corpus.records.push_back({id, corpus.graph.id(t), "IDA"});
      y(t) = 1.0;
      for (Index a : closure[static_cast<std::size_t>(t)]) y(a) = 1.0;
    }
    VectorXd e = mixing * y;
    for (Index c = 0; c < e.size(); ++c) e(c) += noise * gaussian(noise_rng);
    corpus.embeddings.values.row(p) = e.transpose();
  }
  corpus.embeddings.index();
  return corpus;
}

std::string records_tsv(const std::vector<AnnotationRecord>& records) {
  std::string out;
  for (const auto& r : records)
    out += r.protein + '\t' + r.term.str() + '\t' + r.evidence + '\n';
  return out;
}

TrainingProblem training_problem(const SyntheticCorpus& corpus, std::uint64_t seed) {
  TrainingProblem tp;
  tp.prepared = prepare_graph(corpus.graph, corpus.records, Namespace::MFO);
  tp.config.n_terms = tp.prepared.graph.size();
  tp.config.d0 = tp.prepared.d0;
  tp.config.d = tp.prepared.d0;
  tp.config.seq_dim = corpus.embeddings.dim();
  tp.config.seed = seed;
  const auto& proteins = tp.prepared.annotations.proteins;
  tp.data.embeddings.resize(static_cast<Index>(proteins.size()), corpus.embeddings.dim());
  for (std::size_t i = 0; i < proteins.size(); ++i)
    tp.data.embeddings.row(static_cast<Index>(i)) =
        corpus.embeddings.values.row(*corpus.embeddings.find(proteins[i]));
  tp.data.labels = tp.prepared.annotations.labels;
  return tp;
}

}  // namespace ontopred::testing
