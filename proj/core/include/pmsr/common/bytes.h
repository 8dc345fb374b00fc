/*
 * Copyright 2026 The PMSR Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef PMSR_COMMON_BYTES_H_
#define PMSR_COMMON_BYTES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmsr {

using Bytes = std::vector<uint8_t>;

// Appends big-endian fixed-width integers and length-prefixed blobs.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v);
  void U32(uint32_t v);
  void U64(uint64_t v);
  void F64(double v);
  void Raw(std::span<const uint8_t> data);
  // u32 length followed by the bytes.
  void Blob(std::span<const uint8_t> data);
  void String(std::string_view s);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Cursor over a byte span. Every read returns nullopt on underflow.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  std::optional<uint8_t> U8();
  std::optional<uint16_t> U16();
  std::optional<uint32_t> U32();
  std::optional<uint64_t> U64();
  std::optional<double> F64();
  std::optional<Bytes> Raw(size_t n);
  std::optional<Bytes> Blob();
  std::optional<std::string> String();

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

std::string ToHex(std::span<const uint8_t> data);
std::optional<Bytes> FromHex(std::string_view hex);

}  // namespace pmsr

#endif  // PMSR_COMMON_BYTES_H_
