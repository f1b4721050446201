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

#include "ontopred/annotations.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ontopred/parallel.hpp"
#include "ontopred/text.hpp"

namespace ontopred {

namespace {

bool valid_evidence(std::string_view code) {
  if (code == kPropagatedEvidence) return true;
  if (code.empty() || code.size() > 3) return false;
  return std::all_of(code.begin(), code.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  });
}

void sort_unique(std::vector<Index>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool is_experimental(std::string_view evidence) {
  return std::find(std::begin(kExperimentalCodes), std::end(kExperimentalCodes),
                   evidence) != std::end(kExperimentalCodes);
}

ParsedAnnotations parse_annotations(std::string_view document,
                                    const OntologyGraph* known) {
  ParsedAnnotations out;
  const auto all = text::lines(document);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const std::size_t lineno = k + 1;
    const auto line = all[k];
    if (text::trim(line).empty() || line.front() == '!' || line.front() == '#')
      continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3)
      throw ParseError("expected 3 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    const auto protein = text::trim(fields[0]);
    if (protein.empty()) throw ParseError("empty protein id", lineno);
    const auto term = TermId::parse(text::trim(fields[1]));
    if (!term)
      throw ParseError("bad GO accession '" + std::string(fields[1]) + "'",
                       lineno);
    const auto evidence = text::trim(fields[2]);
    if (!valid_evidence(evidence))
      throw ParseError("bad evidence code '" + std::string(evidence) + "'",
                       lineno);
    if (known && !known->find(*term)) {
      ++out.unknown_terms;
      continue;
    }
    out.records.push_back(
        {std::string(protein), *term, std::string(evidence)});
  }
  return out;
}

std::vector<AnnotationRecord> filter_experimental(
    std::vector<AnnotationRecord> records) {
  std::erase_if(records, [](const AnnotationRecord& r) {
    return !is_experimental(r.evidence);
  });
  return records;
}

AnnotationSet make_annotation_set(const std::vector<AnnotationRecord>& records,
                                  const OntologyGraph& g,
                                  std::size_t* skipped) {
  std::map<std::string, std::vector<Index>> grouped;
  std::size_t missing = 0;
  for (const auto& r : records) {
    const auto idx = g.find(r.term);
    if (!idx) {
      ++missing;
      continue;
    }
    grouped[r.protein].push_back(*idx);
  }
  if (skipped) *skipped = missing;
  AnnotationSet a;
  for (auto& [protein, terms] : grouped) {
    sort_unique(terms);
    a.proteins.push_back(protein);
    a.labels.push_back(std::move(terms));
  }
  return a;
}

AnnotationSet propagate_true_path(AnnotationSet a, const OntologyGraph& g) {
  return propagate_true_path(std::move(a), ancestor_closure(g));
}

AnnotationSet propagate_true_path(
    AnnotationSet a, const std::vector<std::vector<Index>>& closure) {
  parallel_for(a.labels.size(), [&](std::size_t p) {
    auto& labels = a.labels[p];
    const std::size_t direct = labels.size();
    for (std::size_t k = 0; k < direct; ++k) {
      const auto& up = closure.at(static_cast<std::size_t>(labels[k]));
      labels.insert(labels.end(), up.begin(), up.end());
    }
    sort_unique(labels);
  });
  a.propagated = true;
  return a;
}

AnnotationSet remap_annotations(const AnnotationSet& a,
                                const std::vector<Index>& remap,
                                bool drop_empty) {
  AnnotationSet out;
  out.propagated = a.propagated;
  for (std::size_t p = 0; p < a.size(); ++p) {
    std::vector<Index> labels;
    for (Index t : a.labels[p]) {
      const Index m = remap.at(static_cast<std::size_t>(t));
      if (m >= 0) labels.push_back(m);
    }
    if (drop_empty && labels.empty()) continue;
    out.proteins.push_back(a.proteins[p]);
    out.labels.push_back(std::move(labels));
  }
  return out;
}

Eigen::VectorXi count_annotations(const AnnotationSet& a, Index n_terms) {
  if (!a.propagated)
    throw std::logic_error("count_annotations needs a propagated set");
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(n_terms);
  for (const auto& labels : a.labels)
    for (Index t : labels) ++counts(t);
  return counts;
}

MatrixXd build_targets(const AnnotationSet& a, Index n_terms) {
  MatrixXd targets = MatrixXd::Zero(static_cast<Index>(a.size()), n_terms);
  for (std::size_t p = 0; p < a.size(); ++p)
    for (Index t : a.labels[p]) targets(static_cast<Index>(p), t) = 1.0;
  return targets;
}

}  // namespace ontopred
