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

#include "ontopred/pipeline.hpp"

#include <map>

#include "ontopred/text.hpp"

namespace ontopred {

PreparedGraph prepare_graph(const OntologyGraph& ontology,
                            const std::vector<AnnotationRecord>& records,
                            Namespace ns, int depth_cap) {
  if (depth_cap < 1) throw ValidationError("depth cap must be positive");
  PreparedGraph out;
  out.ns = ns;
  const OntologyGraph sub = restrict_namespace(ontology, ns, nullptr);
  if (sub.size() == 0)
    throw ValidationError("ontology has no " + std::string(to_string(ns)) +
                          " terms");
  out.namespace_terms = static_cast<std::size_t>(sub.size());

  AnnotationSet set = make_annotation_set(records, sub, &out.records_outside);
  set = propagate_true_path(std::move(set), sub);

  std::vector<bool> seen(static_cast<std::size_t>(sub.size()), false);
  for (const auto& labels : set.labels)
    for (Index t : labels) seen[static_cast<std::size_t>(t)] = true;
  std::vector<Index> annotated;
  for (Index t = 0; t < sub.size(); ++t)
    if (seen[static_cast<std::size_t>(t)]) annotated.push_back(t);

  auto iso = drop_isolated(sub, annotated);
  out.isolated_removed = iso.removed;
  out.graph = std::move(iso.graph);
  out.annotations = remap_annotations(set, iso.remap, true);

  const auto closure = ancestor_closure(out.graph);
  out.counts = count_annotations(out.annotations, out.graph.size());
  out.ic = compute_ic(compute_freq(out.counts, out.graph), out.graph, ns);
  out.adjacency = build_adjacency(out.counts, out.ic, out.graph);
  out.inputs.adjacency = normalize_adjacency(out.adjacency);
  out.inputs.features = build_onehot_features(closure).matrix;
  out.max_depth = max_depth(out.graph, ns);
  out.d0 = std::min(out.max_depth, depth_cap);
  return out;
}

std::string format_predictions(const PredictionMatrix& pred,
                               const OntologyGraph& g, double floor) {
  if (pred.scores.cols() != g.size())
    throw ValidationError("score columns do not match ontology size");
  std::string out;
  for (std::size_t p = 0; p < pred.proteins.size(); ++p)
    for (Index t = 0; t < g.size(); ++t) {
      const double s = pred.scores(static_cast<Index>(p), t);
      if (s < floor) continue;
      out += pred.proteins[p];
      out += '\t';
      out += g.id(t).str();
      out += '\t';
      out += text::format_fixed(s, 6);
      out += '\n';
    }
  return out;
}

PredictionMatrix parse_predictions(std::string_view document,
                                   const OntologyGraph& g,
                                   const std::vector<std::string>& proteins) {
  std::map<std::string, Index, std::less<>> row_of;
  for (std::size_t p = 0; p < proteins.size(); ++p)
    row_of.emplace(proteins[p], static_cast<Index>(p));
  PredictionMatrix pred;
  pred.proteins = proteins;
  pred.scores = MatrixXd::Zero(static_cast<Index>(proteins.size()), g.size());
  const auto all = text::lines(document);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const auto line = all[k];
    if (text::trim(line).empty() || line.front() == '#' || line.front() == '!')
      continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3)
      throw ParseError("expected protein, accession, score", k + 1);
    const auto term = TermId::parse(text::trim(fields[1]));
    if (!term)
      throw ParseError("bad GO accession '" + std::string(fields[1]) + "'",
                       k + 1);
    double score = 0.0;
    try {
      score = text::parse_double(fields[2]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), k + 1);
    }
    if (!(score >= 0.0 && score <= 1.0))
      throw ParseError("score outside [0, 1]", k + 1);
    const auto row = row_of.find(text::trim(fields[0]));
    const auto col = g.find(*term);
    if (row == row_of.end() || !col) continue;
    pred.scores(row->second, *col) = score;
  }
  return pred;
}

void RunManifest::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  entries_.emplace_back(std::move(key), std::move(value));
}

const std::string* RunManifest::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

std::string RunManifest::render() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + '\t' + v + '\n';
  return out;
}

}  // namespace ontopred
