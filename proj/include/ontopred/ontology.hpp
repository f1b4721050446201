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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontopred/term_id.hpp"
#include "ontopred/types.hpp"

namespace ontopred {

/// One term as handed to the OntologyGraph constructor.
struct TermSpec {
  TermId id;
  std::string name;
  Namespace ns;
  std::vector<TermId> is_a;
};

/// Immutable `is_a` DAG over GO terms.
///
/// Terms are indexed 0..N-1 in lexicographic accession order regardless of
/// the order they were supplied in. Parent and child lists are sorted. The
/// constructor rejects dangling parents, cross-namespace edges and cycles.
class OntologyGraph {
 public:
  OntologyGraph() = default;
  explicit OntologyGraph(std::vector<TermSpec> terms,
                         std::size_t obsolete_dropped = 0);

  Index size() const { return static_cast<Index>(ids_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t obsolete_dropped() const { return obsolete_dropped_; }

  const TermId& id(Index i) const { return ids_[static_cast<std::size_t>(i)]; }
  const std::string& name(Index i) const {
    return names_[static_cast<std::size_t>(i)];
  }
  Namespace ns(Index i) const { return ns_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& parents(Index i) const {
    return parents_[static_cast<std::size_t>(i)];
  }
  const std::vector<Index>& children(Index i) const {
    return children_[static_cast<std::size_t>(i)];
  }
  bool is_root(Index i) const { return parents(i).empty(); }

  std::optional<Index> find(const TermId& id) const;
  std::optional<Index> find(std::string_view accession) const;

  /// Parents before children; ties broken by smallest index first.
  const std::vector<Index>& topological_order() const { return topo_; }

  /// Indices of terms in `ns` with no parents, ascending.
  std::vector<Index> roots(Namespace ns) const;
  bool has_namespace(Namespace ns) const;

  /// Rebuilds the graph keeping only terms with keep[i] true. Edges touching
  /// a dropped term disappear. remap[old] is the new index or -1.
  OntologyGraph subgraph(const std::vector<bool>& keep,
                         std::vector<Index>* remap) const;

  friend bool operator==(const OntologyGraph&, const OntologyGraph&);

 private:
  std::vector<TermId> ids_;
  std::vector<std::string> names_;
  std::vector<Namespace> ns_;
  std::vector<std::vector<Index>> parents_;
  std::vector<std::vector<Index>> children_;
  std::vector<Index> topo_;
  std::map<TermId, Index> index_;
  std::size_t edge_count_ = 0;
  std::size_t obsolete_dropped_ = 0;
};

/// Parses the `[Term]` stanzas of an OBO 1.2 document. Only `is_a` edges are
/// kept; obsolete terms are dropped. Throws ParseError / ValidationError.
OntologyGraph parse_obo(std::string_view text);

/// Writes a minimal OBO document that parse_obo reads back to an equal graph.
std::string write_obo(const OntologyGraph& g);

/// Strict ancestors of `i` (transitive parents, excluding i), ascending.
std::vector<Index> ancestors(const OntologyGraph& g, Index i);

/// Strict descendants of `i`, ascending.
std::vector<Index> descendants(const OntologyGraph& g, Index i);

/// ancestors() for every term, computed once in topological order.
std::vector<std::vector<Index>> ancestor_closure(const OntologyGraph& g);

/// Depth of every term: roots are 1, otherwise 1 + max parent depth.
std::vector<int> term_depths(const OntologyGraph& g);

/// Largest depth among terms of `ns`. Throws ValidationError if `ns` is empty.
int max_depth(const OntologyGraph& g, Namespace ns);

/// Keeps only terms of one namespace.
OntologyGraph restrict_namespace(const OntologyGraph& g, Namespace ns,
                                 std::vector<Index>* remap);

struct IsolationResult {
  OntologyGraph graph;
  std::vector<Index> remap;  // old index -> new index, -1 when removed
  std::size_t removed = 0;
};

/// Removes terms with no parents, no children and no entry in `annotated`.
IsolationResult drop_isolated(const OntologyGraph& g,
                              const std::vector<Index>& annotated);

}  // namespace ontopred
