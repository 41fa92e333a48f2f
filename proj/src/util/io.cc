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

#include "qa/util/io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "qa/util/errors.h"

namespace qa {

static_assert(std::endian::native == std::endian::little,
              "model files assume a little-endian host");

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed for " + path.string());
}

void BinaryWriter::Bytes(std::string_view bytes) {
  out_->write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void BinaryWriter::U8(uint8_t v) { out_->put(static_cast<char>(v)); }

void BinaryWriter::U32(uint32_t v) {
  out_->write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void BinaryWriter::U64(uint64_t v) {
  out_->write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void BinaryWriter::F32(float v) {
  out_->write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void BinaryWriter::String(std::string_view s) {
  U32(static_cast<uint32_t>(s.size()));
  Bytes(s);
}

void BinaryWriter::F32Array(std::span<const float> values) {
  out_->write(reinterpret_cast<const char *>(values.data()),
              static_cast<std::streamsize>(values.size_bytes()));
}

void BinaryReader::Read(char *dst, size_t n) {
  in_->read(dst, static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in_->gcount()) != n) {
    throw Error(source_ + ": unexpected end of file");
  }
}

std::string BinaryReader::Bytes(size_t n) {
  std::string s(n, '\0');
  Read(s.data(), n);
  return s;
}

uint8_t BinaryReader::U8() {
  char c;
  Read(&c, 1);
  return static_cast<uint8_t>(c);
}

uint32_t BinaryReader::U32() {
  uint32_t v;
  Read(reinterpret_cast<char *>(&v), sizeof(v));
  return v;
}

uint64_t BinaryReader::U64() {
  uint64_t v;
  Read(reinterpret_cast<char *>(&v), sizeof(v));
  return v;
}

float BinaryReader::F32() {
  float v;
  Read(reinterpret_cast<char *>(&v), sizeof(v));
  return v;
}

std::string BinaryReader::String() {
  uint32_t n = U32();
  if (n > (1u << 24)) throw Error(source_ + ": implausible string length");
  return Bytes(n);
}

void BinaryReader::F32Array(std::span<float> values) {
  Read(reinterpret_cast<char *>(values.data()), values.size_bytes());
}

std::string FormatFixed(double value, int digits) {
  if (value == 0.0) value = 0.0;  // drop negative zero
  return fmt::format("{:.{}f}", value, digits);
}

}  // namespace qa
