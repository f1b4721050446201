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

#include "ontopred/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "ontopred/term_id.hpp"

namespace ontopred {

std::string_view to_string(Namespace ns) {
  switch (ns) {
    case Namespace::MFO:
      return "MFO";
    case Namespace::BPO:
      return "BPO";
    case Namespace::CCO:
      return "CCO";
  }
  return "?";
}

Namespace parse_namespace(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "mfo" || lower == "molecular_function") return Namespace::MFO;
  if (lower == "bpo" || lower == "biological_process") return Namespace::BPO;
  if (lower == "cco" || lower == "cellular_component") return Namespace::CCO;
  throw ParseError("unknown namespace '" + std::string(text) + "'");
}

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                              : what),
      line_(line) {}

std::optional<TermId> TermId::parse(std::string_view text) {
  if (text.size() != 10) return std::nullopt;
  if (std::toupper(static_cast<unsigned char>(text[0])) != 'G' ||
      std::toupper(static_cast<unsigned char>(text[1])) != 'O' ||
      text[2] != ':')
    return std::nullopt;
  for (std::size_t k = 3; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9') return std::nullopt;
  return TermId("GO:" + std::string(text.substr(3)));
}

TermId TermId::from_string(std::string_view text) {
  auto id = parse(text);
  if (!id) throw ParseError("bad GO accession '" + std::string(text) + "'");
  return *id;
}

}  // namespace ontopred
