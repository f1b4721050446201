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

#include "ontopred/types.hpp"

namespace ontopred {

/// Fixed per-protein sequence vectors.
struct EmbeddingTable {
  std::vector<std::string> ids;  // file order
  MatrixXd values;               // one row per id

  Index dim() const { return values.cols(); }
  std::optional<Index> find(std::string_view id) const;

  /// Builds the lookup index; call after filling ids. Throws on duplicates.
  void index();

 private:
  std::map<std::string, Index, std::less<>> lookup_;
};

/// Reads either format; binary files start with the bytes "PEMB".
EmbeddingTable parse_embeddings(std::string_view bytes);

/// `id \t v1 \t ... \t vD` per line.
EmbeddingTable parse_embeddings_tsv(std::string_view text);

/// "PEMB", u32 LE dim, then records of [u16 LE id length, id bytes,
/// dim x f32 LE].
EmbeddingTable parse_embeddings_binary(std::string_view bytes);

std::string write_embeddings_tsv(const EmbeddingTable& table);
std::string write_embeddings_binary(const EmbeddingTable& table);

}  // namespace ontopred
