// Copyright 2026 The charqa Authors.
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

#ifndef QA_UTIL_IO_H_
#define QA_UTIL_IO_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qa {

// Whole-file helpers. Errors are reported as qa::Error with the path.
std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view contents);

// Little-endian binary encoding used by the model files.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream *out) : out_(out) {}

  void Bytes(std::string_view bytes);
  void U8(uint8_t v);
  void U32(uint32_t v);
  void U64(uint64_t v);
  void F32(float v);
  void String(std::string_view s);  // u32 length prefix
  void F32Array(std::span<const float> values);

 private:
  std::ostream *out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream *in, std::string source)
      : in_(in), source_(std::move(source)) {}

  std::string Bytes(size_t n);
  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  float F32();
  std::string String();
  void F32Array(std::span<float> values);

 private:
  void Read(char *dst, size_t n);

  std::istream *in_;
  std::string source_;
};

// Fixed-format decimal rendering used by every report so that output
// bytes do not depend on locale or stream state.
std::string FormatFixed(double value, int digits);

}  // namespace qa

#endif  // QA_UTIL_IO_H_
