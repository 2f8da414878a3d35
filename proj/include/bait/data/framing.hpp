// Copyright 2026 The BaIT Authors. All Rights Reserved.
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
// =============================================================================

// Little-endian record framing shared by embedding stores and model
// checkpoints:
//
//   "BAIT" u8 version=1, u8 space, u8 unit, u8 reserved=0, u32 dim, u32 count
//   count x { u32 id, u16 num_rows, num_rows*dim binary32 }

#ifndef BAIT_DATA_FRAMING_HPP_
#define BAIT_DATA_FRAMING_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bait::data {

inline constexpr std::array<std::uint8_t, 4> kMagic = {0x42, 0x41, 0x49, 0x54};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 16;

struct FrameHeader {
  std::uint8_t version = kFormatVersion;
  std::uint8_t space = 0;
  std::uint8_t unit = 0;
  std::uint8_t reserved = 0;
  std::uint32_t dim = 0;
  std::uint32_t record_count = 0;
};

struct FrameRecord {
  std::uint32_t id = 0;
  std::uint16_t num_rows = 0;
  std::vector<float> values;  // num_rows * dim
};

struct Frame {
  FrameHeader header;
  std::vector<FrameRecord> records;
};

// Throws FormatError (magic, version, truncation, trailing payload, non-finite
// values) or IoError. Structural checks on space/unit are left to callers.
Frame read_frame(const std::filesystem::path& path);
Frame parse_frame(std::span<const std::uint8_t> bytes, const std::string& name);

// Serializes to memory; write_frame writes to `path` via a temporary file and
// rename so readers never observe a partial file.
std::vector<std::uint8_t> encode_frame(const Frame& frame);
void write_frame(const std::filesystem::path& path, const Frame& frame);

}  // namespace bait::data

#endif  // BAIT_DATA_FRAMING_HPP_
