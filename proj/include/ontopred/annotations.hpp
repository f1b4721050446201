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

#include <string>
#include <string_view>
#include <vector>

#include "ontopred/ontology.hpp"

namespace ontopred {

struct AnnotationRecord {
  std::string protein;
  TermId term;
  std::string evidence;

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

/// Evidence code written by the propagation tool for inferred rows.
inline constexpr std::string_view kPropagatedEvidence = "PROP";

/// The eight experimental evidence codes used for training and benchmarks.
inline constexpr std::string_view kExperimentalCodes[] = {
    "EXP", "IDA", "IPI", "IMP", "IGI", "IEP", "TAS", "IC"};

bool is_experimental(std::string_view evidence);

struct ParsedAnnotations {
  std::vector<AnnotationRecord> records;
  /// Records whose term is missing from the ontology passed to the parser.
  std::size_t unknown_terms = 0;
};

/// Parses `protein \t GO:xxxxxxx \t EVIDENCE` lines. Lines starting with '!'
/// or '#' and blank lines are skipped. When `known` is given, records whose
/// term it does not contain are dropped and counted.
ParsedAnnotations parse_annotations(std::string_view text,
                                    const OntologyGraph* known = nullptr);

std::vector<AnnotationRecord> filter_experimental(
    std::vector<AnnotationRecord> records);

/// Per-protein term sets over a fixed OntologyGraph indexing.
struct AnnotationSet {
  std::vector<std::string> proteins;       // ascending
  std::vector<std::vector<Index>> labels;  // sorted, unique
  bool propagated = false;

  std::size_t size() const { return proteins.size(); }
};

/// Groups records by protein (duplicates collapse). Records whose term is
/// not in `g` are skipped and counted in `skipped` when non-null.
AnnotationSet make_annotation_set(const std::vector<AnnotationRecord>& records,
                                  const OntologyGraph& g,
                                  std::size_t* skipped = nullptr);

/// Adds every `is_a` ancestor of every label. Idempotent.
[[nodiscard]] AnnotationSet propagate_true_path(AnnotationSet a, const OntologyGraph& g);

/// Same as propagate_true_path with a precomputed ancestor_closure(g).
[[nodiscard]] AnnotationSet propagate_true_path(
    AnnotationSet a, const std::vector<std::vector<Index>>& closure);

/// Reindexes labels through remap (old -> new, -1 dropped). Proteins left
/// with no labels are removed when `drop_empty` is set.
AnnotationSet remap_annotations(const AnnotationSet& a,
                                const std::vector<Index>& remap,
                                bool drop_empty);

/// U[k]: number of proteins whose label set contains k. Requires a
/// propagated set; throws std::logic_error otherwise.
Eigen::VectorXi count_annotations(const AnnotationSet& a, Index n_terms);

/// Dense proteins x terms 0/1 matrix; row order follows a.proteins.
MatrixXd build_targets(const AnnotationSet& a, Index n_terms);

}  // namespace ontopred
