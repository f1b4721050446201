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

#include "ontopred/ontology.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ontopred/text.hpp"

namespace ontopred {

namespace {

std::string_view obo_namespace_name(Namespace ns) {
  switch (ns) {
    case Namespace::MFO:
      return "molecular_function";
    case Namespace::BPO:
      return "biological_process";
    case Namespace::CCO:
      return "cellular_component";
  }
  return "";
}

void sort_unique(std::vector<Index>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

OntologyGraph::OntologyGraph(std::vector<TermSpec> terms,
                             std::size_t obsolete_dropped)
    : obsolete_dropped_(obsolete_dropped) {
  std::sort(terms.begin(), terms.end(),
            [](const TermSpec& a, const TermSpec& b) { return a.id < b.id; });
  const std::size_t n = terms.size();
  ids_.reserve(n);
  names_.reserve(n);
  ns_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && terms[k].id == terms[k - 1].id)
      throw ValidationError("duplicate term " + terms[k].id.str());
    index_.emplace(terms[k].id, static_cast<Index>(k));
    ids_.push_back(terms[k].id);
    names_.push_back(std::move(terms[k].name));
    ns_.push_back(terms[k].ns);
  }

  parents_.assign(n, {});
  children_.assign(n, {});
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& parent : terms[k].is_a) {
      const auto it = index_.find(parent);
      if (it == index_.end())
        throw ReferenceError("is_a target " + parent.str() + " of " +
                             ids_[k].str() + " is not defined");
      if (ns_[static_cast<std::size_t>(it->second)] != ns_[k])
        throw ValidationError(
            "cross-namespace is_a edge " + ids_[k].str() + " (" +
            std::string(to_string(ns_[k])) + ") -> " + parent.str() + " (" +
            std::string(to_string(ns_[static_cast<std::size_t>(it->second)])) +
            ")");
      parents_[k].push_back(it->second);
    }
    sort_unique(parents_[k]);
    for (Index p : parents_[k])
      children_[static_cast<std::size_t>(p)].push_back(static_cast<Index>(k));
    edge_count_ += parents_[k].size();
  }
  // children were appended in increasing child order already

  // Kahn's algorithm, smallest ready index first.
  std::vector<std::size_t> pending(n);
  std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
  for (std::size_t k = 0; k < n; ++k) {
    pending[k] = parents_[k].size();
    if (pending[k] == 0) ready.push(static_cast<Index>(k));
  }
  topo_.reserve(n);
  while (!ready.empty()) {
    const Index t = ready.top();
    ready.pop();
    topo_.push_back(t);
    for (Index c : children(t))
      if (--pending[static_cast<std::size_t>(c)] == 0) ready.push(c);
  }
  if (topo_.size() == n) return;

  // Every leftover term has a leftover parent, so walking parents must revisit.
  Index start = 0;
  while (pending[static_cast<std::size_t>(start)] == 0) ++start;
  std::vector<Index> walk;
  std::unordered_map<Index, std::size_t> seen;
  Index cur = start;
  while (!seen.count(cur)) {
    seen.emplace(cur, walk.size());
    walk.push_back(cur);
    for (Index p : parents(cur)) {
      if (pending[static_cast<std::size_t>(p)] != 0) {
        cur = p;
        break;
      }
    }
  }
  std::string cycle;
  for (std::size_t k = seen[cur]; k < walk.size(); ++k)
    cycle += ids_[static_cast<std::size_t>(walk[k])].str() + " is_a ";
  cycle += ids_[static_cast<std::size_t>(cur)].str();
  throw ValidationError("is_a cycle: " + cycle);
}

std::optional<Index> OntologyGraph::find(const TermId& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> OntologyGraph::find(std::string_view accession) const {
  const auto id = TermId::parse(accession);
  if (!id) return std::nullopt;
  return find(*id);
}

std::vector<Index> OntologyGraph::roots(Namespace ns) const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (this->ns(i) == ns && is_root(i)) out.push_back(i);
  return out;
}

bool OntologyGraph::has_namespace(Namespace ns) const {
  return std::find(ns_.begin(), ns_.end(), ns) != ns_.end();
}

OntologyGraph OntologyGraph::subgraph(const std::vector<bool>& keep,
                                      std::vector<Index>* remap) const {
  if (keep.size() != ids_.size())
    throw ValidationError("subgraph mask has wrong length");
  std::vector<TermSpec> specs;
  std::vector<Index> map(ids_.size(), -1);
  for (Index i = 0; i < size(); ++i) {
    if (!keep[static_cast<std::size_t>(i)]) continue;
    map[static_cast<std::size_t>(i)] = static_cast<Index>(specs.size());
    TermSpec spec{id(i), name(i), ns(i), {}};
    for (Index p : parents(i))
      if (keep[static_cast<std::size_t>(p)]) spec.is_a.push_back(id(p));
    specs.push_back(std::move(spec));
  }
  if (remap) *remap = std::move(map);
  return OntologyGraph(std::move(specs), obsolete_dropped_);
}

bool operator==(const OntologyGraph& a, const OntologyGraph& b) {
  return a.ids_ == b.ids_ && a.names_ == b.names_ && a.ns_ == b.ns_ &&
         a.parents_ == b.parents_;
}

OntologyGraph parse_obo(std::string_view document) {
  struct Stanza {
    std::size_t line = 0;
    std::optional<TermId> id;
    std::string name;
    std::optional<Namespace> ns;
    std::vector<std::pair<TermId, std::size_t>> is_a;
    bool obsolete = false;
  };

  std::vector<Stanza> stanzas;
  bool in_term = false;
  const auto all_lines = text::lines(document);

  // The first whitespace-delimited token, before any "!" comment.
  auto first_token = [](std::string_view v) {
    v = text::trim(v);
    const auto end = v.find_first_of(" \t!{");
    return end == std::string_view::npos ? v : v.substr(0, end);
  };

  for (std::size_t k = 0; k < all_lines.size(); ++k) {
    const std::size_t lineno = k + 1;
    const auto line = text::trim(all_lines[k]);
    if (line.empty() || line.front() == '!') continue;
    if (line.front() == '[') {
      in_term = line == "[Term]";
      if (in_term) stanzas.push_back(Stanza{lineno, {}, {}, {}, {}, false});
      continue;
    }
    if (!in_term) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected 'key: value'", lineno);
    const auto key = text::trim(line.substr(0, colon));
    const auto value = text::trim(line.substr(colon + 1));
    auto& st = stanzas.back();
    if (key == "id") {
      if (st.id) throw ParseError("duplicate id in stanza", lineno);
      const auto tok = first_token(value);
      st.id = TermId::parse(tok);
      if (!st.id)
        throw ParseError("bad term id '" + std::string(tok) + "'", lineno);
    } else if (key == "name") {
      st.name = std::string(value);
    } else if (key == "namespace") {
      try {
        st.ns = parse_namespace(first_token(value));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    } else if (key == "is_a") {
      const auto tok = first_token(value);
      const auto target = TermId::parse(tok);
      if (!target)
        throw ParseError("bad is_a target '" + std::string(tok) + "'", lineno);
      st.is_a.emplace_back(*target, lineno);
    } else if (key == "is_obsolete") {
      st.obsolete = first_token(value) == "true";
    }
  }

  std::set<TermId> defined;
  std::set<TermId> obsolete;
  for (const auto& st : stanzas) {
    if (!st.id) throw ParseError("[Term] stanza without id", st.line);
    if (!st.ns) throw ParseError("[Term] stanza without namespace", st.line);
    defined.insert(*st.id);
    if (st.obsolete) obsolete.insert(*st.id);
  }

  std::vector<TermSpec> specs;
  std::size_t dropped = 0;
  for (auto& st : stanzas) {
    if (st.obsolete) {
      ++dropped;
      continue;
    }
    TermSpec spec{*st.id, std::move(st.name), *st.ns, {}};
    for (const auto& [target, lineno] : st.is_a) {
      if (!defined.count(target))
        throw ReferenceError("line " + std::to_string(lineno) + ": is_a target " +
                             target.str() + " is not defined");
      if (!obsolete.count(target)) spec.is_a.push_back(target);
    }
    specs.push_back(std::move(spec));
  }
  return OntologyGraph(std::move(specs), dropped);
}

std::string write_obo(const OntologyGraph& g) {
  std::ostringstream out;
  out << "format-version: 1.2\n";
  for (Index i = 0; i < g.size(); ++i) {
    out << "\n[Term]\nid: " << g.id(i).str() << "\nname: " << g.name(i)
        << "\nnamespace: " << obo_namespace_name(g.ns(i)) << '\n';
    for (Index p : g.parents(i))
      out << "is_a: " << g.id(p).str() << " ! " << g.name(p) << '\n';
  }
  return out.str();
}

namespace {

std::vector<Index> reachable(const OntologyGraph& g, Index i, bool upward) {
  if (i < 0 || i >= g.size())
    throw std::out_of_range("term index " + std::to_string(i) +
                            " out of range");
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  std::vector<Index> stack{i};
  std::vector<Index> out;
  while (!stack.empty()) {
    const Index t = stack.back();
    stack.pop_back();
    for (Index n : upward ? g.parents(t) : g.children(t)) {
      if (seen[static_cast<std::size_t>(n)]) continue;
      seen[static_cast<std::size_t>(n)] = true;
      out.push_back(n);
      stack.push_back(n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Index> ancestors(const OntologyGraph& g, Index i) {
  return reachable(g, i, true);
}

std::vector<Index> descendants(const OntologyGraph& g, Index i) {
  return reachable(g, i, false);
}

std::vector<std::vector<Index>> ancestor_closure(const OntologyGraph& g) {
  std::vector<std::vector<Index>> closure(static_cast<std::size_t>(g.size()));
  for (Index t : g.topological_order()) {
    auto& acc = closure[static_cast<std::size_t>(t)];
    for (Index p : g.parents(t)) {
      const auto& up = closure[static_cast<std::size_t>(p)];
      acc.push_back(p);
      acc.insert(acc.end(), up.begin(), up.end());
    }
    sort_unique(acc);
  }
  return closure;
}

std::vector<int> term_depths(const OntologyGraph& g) {
  std::vector<int> depth(static_cast<std::size_t>(g.size()), 1);
  for (Index t : g.topological_order())
    for (Index p : g.parents(t))
      depth[static_cast<std::size_t>(t)] =
          std::max(depth[static_cast<std::size_t>(t)],
                   depth[static_cast<std::size_t>(p)] + 1);
  return depth;
}

int max_depth(const OntologyGraph& g, Namespace ns) {
  const auto depth = term_depths(g);
  int best = 0;
  for (Index i = 0; i < g.size(); ++i)
    if (g.ns(i) == ns) best = std::max(best, depth[static_cast<std::size_t>(i)]);
  if (best == 0)
    throw ValidationError("namespace " + std::string(to_string(ns)) +
                          " has no terms");
  return best;
}

OntologyGraph restrict_namespace(const OntologyGraph& g, Namespace ns,
                                 std::vector<Index>* remap) {
  std::vector<bool> keep(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i)
    keep[static_cast<std::size_t>(i)] = g.ns(i) == ns;
  return g.subgraph(keep, remap);
}

IsolationResult drop_isolated(const OntologyGraph& g,
                              const std::vector<Index>& annotated) {
  std::vector<bool> has_annotation(static_cast<std::size_t>(g.size()), false);
  for (Index i : annotated) {
    if (i < 0 || i >= g.size())
      throw std::out_of_range("annotated index out of range");
    has_annotation[static_cast<std::size_t>(i)] = true;
  }
  std::vector<bool> keep(static_cast<std::size_t>(g.size()));
  IsolationResult result;
  for (Index i = 0; i < g.size(); ++i) {
    const bool isolated = g.parents(i).empty() && g.children(i).empty() &&
                          !has_annotation[static_cast<std::size_t>(i)];
    keep[static_cast<std::size_t>(i)] = !isolated;
    if (isolated) ++result.removed;
  }
  result.graph = g.subgraph(keep, &result.remap);
  return result;
}

}  // namespace ontopred
