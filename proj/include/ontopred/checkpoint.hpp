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

// Text checkpoints:
//
//   ONTOPRED v1 N d0 d M seq_dim
//   embed N d0
//   <row-major values, one matrix row per line>
//   gcn0 d0 d
//   ...
//
// Values carry 17 significant digits so doubles round-trip exactly.

#include <string>
#include <string_view>

#include "ontopred/model.hpp"

namespace ontopred {

struct Checkpoint {
  ModelConfig config;  // only the shape fields are restored
  ModelParams<double> params;
};

std::string write_checkpoint(const ModelConfig& cfg,
                             const ModelParams<double>& params);
Checkpoint read_checkpoint(std::string_view text);

}  // namespace ontopred
