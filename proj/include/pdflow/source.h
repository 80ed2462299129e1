// Copyright 2026 The pdflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PDFLOW_SOURCE_H_
#define PDFLOW_SOURCE_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pdflow {

// 64-bit FNV-1a. Stable across platforms and runs, unlike std::hash.
std::uint64_t StableHash(std::string_view bytes);

// Lower-case, zero-padded 16 character hex rendering of a hash.
std::string HashHex(std::uint64_t hash);

struct SourceFile {
  std::string path;
  std::string text;
  std::uint64_t content_hash = 0;

  static SourceFile FromText(std::string path, std::string text);
};

// 1-based line and column. Columns count bytes.
struct Position {
  std::string file;
  int line = 1;
  int column = 1;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

std::string ToString(const Position& pos);

}  // namespace pdflow

#endif  // PDFLOW_SOURCE_H_
