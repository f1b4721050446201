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

// Small text helpers shared by the parsers and writers. Number formatting is
// locale independent.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ontopred::text {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits into lines; strips a trailing '\r' from each.
std::vector<std::string_view> lines(std::string_view s);

double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

/// Shortest representation with at most `significant` significant digits.
std::string format_significant(double value, int significant);
/// Fixed notation with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace ontopred::text
