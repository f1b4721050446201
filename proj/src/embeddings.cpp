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

#include "ontopred/embeddings.hpp"

#include <bit>
#include <cstring>
#include <limits>

#include "ontopred/text.hpp"

namespace ontopred {

namespace {

constexpr std::string_view kMagic = "PEMB";

std::uint32_t read_u32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int k = 3; k >= 0; --k)
    v = (v << 8) | static_cast<unsigned char>(b[at + static_cast<std::size_t>(k)]);
  return v;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

}  // namespace

std::optional<Index> EmbeddingTable::find(std::string_view id) const {
  const auto it = lookup_.find(id);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingTable::index() {
  lookup_.clear();
  for (std::size_t k = 0; k < ids.size(); ++k)
    if (!lookup_.emplace(ids[k], static_cast<Index>(k)).second)
      throw ValidationError("duplicate embedding id '" + ids[k] + "'");
}

EmbeddingTable parse_embeddings(std::string_view bytes) {
  if (bytes.substr(0, kMagic.size()) == kMagic)
    return parse_embeddings_binary(bytes);
  return parse_embeddings_tsv(bytes);
}

EmbeddingTable parse_embeddings_tsv(std::string_view document) {
  EmbeddingTable t;
  std::vector<std::vector<double>> rows;
  const auto all = text::lines(document);
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (text::trim(all[k]).empty()) continue;
    const auto fields = text::split(all[k], '\t');
    if (fields.size() < 2)
      throw ParseError("embedding line needs an id and values", k + 1);
    if (!rows.empty() && fields.size() - 1 != rows.front().size())
      throw ParseError("expected " + std::to_string(rows.front().size()) +
                           " values, got " + std::to_string(fields.size() - 1),
                       k + 1);
    std::vector<double> row;
    row.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      try {
        row.push_back(text::parse_double(fields[f]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), k + 1);
      }
    }
    t.ids.emplace_back(text::trim(fields[0]));
    rows.push_back(std::move(row));
  }
  const Index dim = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  t.values.resize(static_cast<Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Index c = 0; c < dim; ++c)
      t.values(static_cast<Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  t.index();
  return t;
}

EmbeddingTable parse_embeddings_binary(std::string_view b) {
  if (b.size() < 8 || b.substr(0, 4) != kMagic)
    throw ParseError("not a PEMB embedding file");
  const std::uint32_t dim = read_u32(b, 4);
  if (dim == 0) throw ParseError("PEMB dimension is zero");
  std::size_t at = 8;
  std::vector<float> flat;
  EmbeddingTable t;
  while (at < b.size()) {
    if (b.size() - at < 2) throw ParseError("truncated PEMB record header");
    const std::size_t len = static_cast<unsigned char>(b[at]) |
                            (static_cast<std::size_t>(static_cast<unsigned char>(b[at + 1])) << 8);
    at += 2;
    if (b.size() - at < len + 4ull * dim)
      throw ParseError("truncated PEMB record " + std::to_string(t.ids.size()));
    t.ids.emplace_back(b.substr(at, len));
    at += len;
    for (std::uint32_t k = 0; k < dim; ++k, at += 4)
      flat.push_back(std::bit_cast<float>(read_u32(b, at)));
  }
  t.values.resize(static_cast<Index>(t.ids.size()), dim);
  for (Index r = 0; r < t.values.rows(); ++r)
    for (Index c = 0; c < dim; ++c)
      t.values(r, c) = static_cast<double>(flat[static_cast<std::size_t>(r * dim + c)]);
  t.index();
  return t;
}

std::string write_embeddings_tsv(const EmbeddingTable& table) {
  std::string out;
  for (std::size_t r = 0; r < table.ids.size(); ++r) {
    out += table.ids[r];
    for (Index c = 0; c < table.dim(); ++c) {
      out += '\t';
      out += text::format_significant(table.values(static_cast<Index>(r), c), 17);
    }
    out += '\n';
  }
  return out;
}

std::string write_embeddings_binary(const EmbeddingTable& table) {
  std::string out(kMagic);
  put_u32(out, static_cast<std::uint32_t>(table.dim()));
  for (std::size_t r = 0; r < table.ids.size(); ++r) {
    const auto& id = table.ids[r];
    if (id.size() > std::numeric_limits<std::uint16_t>::max())
      throw ValidationError("embedding id too long for PEMB");
    out.push_back(static_cast<char>(id.size() & 0xff));
    out.push_back(static_cast<char>(id.size() >> 8));
    out += id;
    for (Index c = 0; c < table.dim(); ++c)
      put_u32(out, std::bit_cast<std::uint32_t>(
                       static_cast<float>(table.values(static_cast<Index>(r), c))));
  }
  return out;
}

}  // namespace ontopred
