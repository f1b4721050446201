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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ontopred {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
template <typename Scalar>
using SparseRowMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, Index>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;
using SparseMatrixXd = SparseRowMatrix<double>;

/// GO sub-ontology ("domain").
enum class Namespace : std::uint8_t { MFO, BPO, CCO };

inline constexpr Namespace kAllNamespaces[] = {Namespace::MFO, Namespace::BPO,
                                               Namespace::CCO};

std::string_view to_string(Namespace ns);
/// Accepts MFO/BPO/CCO (any case) and the OBO names molecular_function etc.
Namespace parse_namespace(std::string_view text);

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid data: dangling references, cycles, shape mismatches.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reference to something that does not exist, e.g. an undefined `is_a`
/// target.
class ReferenceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace ontopred
