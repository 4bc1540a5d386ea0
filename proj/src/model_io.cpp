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

#include "cir/model_io.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include "cir/common.hpp"

namespace cir {
namespace {

constexpr std::array<char, 4> kMagic = {'C', 'I', 'R', 'M'};

template <typename U>
void put_le(std::vector<std::uint8_t>& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

template <typename U>
U get_le(std::span<const std::uint8_t> b) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void ByteWriter::u32(std::uint32_t v) { put_le(bytes_, v); }
void ByteWriter::u64(std::uint64_t v) { put_le(bytes_, v); }
void ByteWriter::f32(float v) { put_le(bytes_, std::bit_cast<std::uint32_t>(v)); }
void ByteWriter::f64(double v) { put_le(bytes_, std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  bytes_.insert(bytes_.end(), s.begin(), s.end());
}

void ByteWriter::f32s(std::span<const float> v) {
  for (float x : v) f32(x);
}

void ByteWriter::f64s(std::span<const double> v) {
  for (double x : v) f64(x);
}

std::span<const std::uint8_t> ByteReader::take(std::size_t n) {
  if (bytes_.size() - pos_ < n) throw DataError("model file truncated");
  auto s = bytes_.subspan(pos_, n);
  pos_ += n;
  return s;
}

std::uint32_t ByteReader::u32() { return get_le<std::uint32_t>(take(4)); }
std::uint64_t ByteReader::u64() { return get_le<std::uint64_t>(take(8)); }
float ByteReader::f32() { return std::bit_cast<float>(u32()); }
double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::string ByteReader::str() {
  const std::uint32_t n = u32();
  const auto b = take(n);
  return std::string(b.begin(), b.end());
}

void ByteReader::f32s(std::span<float> out) {
  for (float& x : out) x = f32();
}

void ByteReader::f64s(std::span<double> out) {
  for (double& x : out) x = f64();
}

std::vector<std::uint8_t> encode_container(const ModelSections& sections) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  put_le(out, kModelFormatVersion);
  put_le(out, static_cast<std::uint32_t>(sections.size()));
  for (const auto& [tag, payload] : sections) {
    out.insert(out.end(), tag.begin(), tag.end());
    put_le(out, static_cast<std::uint64_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

ModelSections decode_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw DataError("not a model file (bad magic)");
  }
  ByteReader r(bytes.subspan(4));
  const std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) {
    throw DataError("unsupported model format version " + std::to_string(version));
  }
  const std::uint32_t count = r.u32();
  ModelSections sections;
  std::size_t pos = 12;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (bytes.size() - pos < 12) throw DataError("model file truncated");
    SectionTag tag;
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), 4, tag.begin());
    const auto len = get_le<std::uint64_t>(bytes.subspan(pos + 4, 8));
    pos += 12;
    if (bytes.size() - pos < len) throw DataError("model file truncated");
    const auto payload = bytes.subspan(pos, len);
    sections[tag] = std::vector<std::uint8_t>(payload.begin(), payload.end());
    pos += len;
  }
  if (pos != bytes.size()) throw DataError("trailing bytes after model sections");
  return sections;
}

void write_model_file(const std::filesystem::path& path, const ModelSections& sections) {
  const auto bytes = encode_container(sections);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

ModelSections read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_container(bytes);
}

}  // namespace cir
