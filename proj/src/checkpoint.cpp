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

#include "ontopred/checkpoint.hpp"

#include <sstream>

#include "ontopred/text.hpp"

namespace ontopred {

std::string write_checkpoint(const ModelConfig& cfg,
                             const ModelParams<double>& params) {
  std::string out = "ONTOPRED v1 " + std::to_string(cfg.n_terms) + ' ' +
                    std::to_string(cfg.d0) + ' ' + std::to_string(cfg.d) + ' ' +
                    std::to_string(cfg.n_layers) + ' ' +
                    std::to_string(cfg.seq_dim) + '\n';
  const auto names = params.tensor_names();
  const auto tensors = params.tensors();
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    const auto& m = *tensors[k];
    out += names[k] + ' ' + std::to_string(m.rows()) + ' ' +
           std::to_string(m.cols()) + '\n';
    for (Index r = 0; r < m.rows(); ++r) {
      for (Index c = 0; c < m.cols(); ++c) {
        if (c) out += ' ';
        out += text::format_significant(m(r, c), 17);
      }
      out += '\n';
    }
  }
  return out;
}

Checkpoint read_checkpoint(std::string_view document) {
  const auto all = text::lines(document);
  std::size_t line = 0;
  auto next_fields = [&]() {
    if (line >= all.size()) throw ParseError("checkpoint truncated", line + 1);
    auto fields = text::split(text::trim(all[line++]), ' ');
    return fields;
  };
  auto as_index = [&](std::string_view s) {
    try {
      return static_cast<Index>(text::parse_int(s));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  };

  const auto header = next_fields();
  if (header.size() != 7 || header[0] != "ONTOPRED" || header[1] != "v1")
    throw ParseError("not an ONTOPRED v1 checkpoint", 1);
  Checkpoint ck;
  ck.config.n_terms = as_index(header[2]);
  ck.config.d0 = as_index(header[3]);
  ck.config.d = as_index(header[4]);
  ck.config.n_layers = static_cast<int>(as_index(header[5]));
  ck.config.seq_dim = as_index(header[6]);
  validate(ck.config);
  ck.params = init_params<double>(ck.config);  // shapes only

  const auto names = ck.params.tensor_names();
  auto tensors = ck.params.tensors();
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    const auto head = next_fields();
    auto& m = *tensors[k];
    if (head.size() != 3 || head[0] != names[k] ||
        as_index(head[1]) != m.rows() || as_index(head[2]) != m.cols())
      throw ParseError("expected matrix '" + names[k] + " " +
                           std::to_string(m.rows()) + " " +
                           std::to_string(m.cols()) + "'",
                       line);
    for (Index r = 0; r < m.rows(); ++r) {
      const auto values = next_fields();
      if (static_cast<Index>(values.size()) != m.cols())
        throw ParseError("wrong number of values in row", line);
      for (Index c = 0; c < m.cols(); ++c) {
        try {
          m(r, c) = text::parse_double(values[static_cast<std::size_t>(c)]);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line);
        }
      }
    }
  }
  return ck;
}

}  // namespace ontopred
