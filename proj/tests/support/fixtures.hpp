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

// Deterministic fixtures shared by the unit and acceptance suites.

#include <cstdint>
#include <string>
#include <vector>

#include "ontopred/annotations.hpp"
#include "ontopred/embeddings.hpp"
#include "ontopred/ontology.hpp"
#include "ontopred/pipeline.hpp"
#include "ontopred/random.hpp"

namespace ontopred::testing {

// Diamond: R <- A, R <- B, A <- C, B <- C (child <- parent).
inline constexpr const char* kT1R = "GO:0000001";
inline constexpr const char* kT1A = "GO:0000002";
inline constexpr const char* kT1B = "GO:0000003";
inline constexpr const char* kT1C = "GO:0000004";

std::string t1_obo();
OntologyGraph t1();
/// p1 = {C}, p2 = {A}, p3 = {B}, all with IDA evidence.
std::string t1_annotations_tsv();

std::string accession(std::uint64_t number);

/// Random DAG on `n` terms of one namespace. Term k (in generation order)
/// takes 1..max_parents parents among earlier terms; the first term and
/// roughly `extra_root_rate` of the rest are roots. Accession numbers are
/// shuffled so index order differs from generation order.
OntologyGraph random_dag(SplitMix64& rng, int n, int max_parents,
                         double extra_root_rate = 0.0,
                         Namespace ns = Namespace::BPO);

/// Layered DAG shaped like a GO namespace: one root, `depth` levels with most
/// terms in the first dozen, each term picking 1-3 parents from a window of
/// the previous level.
OntologyGraph layered_dag(SplitMix64& rng, int n, int depth, int window);

/// Random unpropagated annotation set with 0..max_labels labels each.
AnnotationSet random_annotations(SplitMix64& rng, const OntologyGraph& g,
                                 int proteins, int max_labels);

double gaussian(SplitMix64& rng);

/// Separable toy corpus: 20-term DAG, proteins annotated with 1-2 terms
/// (propagated), and 32-dim embeddings e = M y + noise for label vector y.
struct SyntheticCorpus {
  OntologyGraph graph;
  std::vector<AnnotationRecord> records;  // direct annotations, IDA
  EmbeddingTable embeddings;
};

SyntheticCorpus synthetic_corpus(std::uint64_t seed, int n_terms = 20,
                                 int proteins = 200, int seq_dim = 32,
                                 double noise = 0.1);

std::string records_tsv(const std::vector<AnnotationRecord>& records);

/// Graph, default model config and embedding rows aligned with the
/// propagated annotation set of a corpus.
struct TrainingProblem {
  PreparedGraph prepared;
  ModelConfig config;
  TrainingData data;
};

TrainingProblem training_problem(const SyntheticCorpus& corpus, std::uint64_t seed);

}  // namespace ontopred::testing
