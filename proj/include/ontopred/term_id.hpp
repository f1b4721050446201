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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace ontopred {

/// GO accession, always stored as "GO:" + 7 digits.
class TermId {
 public:
  /// Returns nullopt unless `text` is "GO:" (any case) followed by exactly
  /// seven decimal digits.
  static std::optional<TermId> parse(std::string_view text);
  /// Like parse() but throws ParseError.
  static TermId from_string(std::string_view text);

  const std::string& str() const { return accession_; }

  friend auto operator<=>(const TermId&, const TermId&) = default;

 private:
  explicit TermId(std::string accession) : accession_(std::move(accession)) {}
  std::string accession_;
};

}  // namespace ontopred
