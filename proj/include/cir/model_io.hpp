// Copyright 2026 The CIR Authors
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

// Versioned binary model container:
//
//   "CIRM" | u32 version | u32 section count | sections...
//   section: 4-byte tag | u64 payload length | payload
//
// All integers and floats are little-endian.

#ifndef CIR_MODEL_IO_HPP_
#define CIR_MODEL_IO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cir {

inline constexpr std::uint32_t kModelFormatVersion = 1;

class ByteWriter {
 public:
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void f64(double v);
  void str(std::string_view s);  // u32 length + bytes
  void f32s(std::span<const float> v);
  void f64s(std::span<const double> v);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Bounds-checked reader; throws DataError on truncated input.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint32_t u32();
  std::uint64_t u64();
  float f32();
  double f64();
  std::string str();
  void f32s(std::span<float> out);
  void f64s(std::span<double> out);
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> take(std::size_t n);

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

using SectionTag = std::array<char, 4>;

inline constexpr SectionTag kEmbeddingSection = {'E', 'M', 'B', 'D'};
inline constexpr SectionTag kClassifierSection = {'M', 'L', 'P', 'C'};

/// Sections ordered by tag so files are byte-stable.
using ModelSections = std::map<SectionTag, std::vector<std::uint8_t>>;

void write_model_file(const std::filesystem::path& path, const ModelSections& sections);
ModelSections read_model_file(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_container(const ModelSections& sections);
ModelSections decode_container(std::span<const std::uint8_t> bytes);

}  // namespace cir

#endif  // CIR_MODEL_IO_HPP_
