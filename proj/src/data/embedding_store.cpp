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

#include "bait/data/embedding_store.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "bait/data/framing.hpp"
#include "bait/errors.hpp"

namespace bait::data {

namespace {

static_assert(std::endian::native == std::endian::little,
              "framing code assumes a little-endian host");

template <typename U>
U read_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  U v;
  std::memcpy(&v, bytes.data() + offset, sizeof(U));
  return v;
}

template <typename U>
void append_le(std::vector<std::uint8_t>& out, U v) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&v);
  out.insert(out.end(), p, p + sizeof(U));
}

}  // namespace

Frame parse_frame(std::span<const std::uint8_t> bytes, const std::string& name) {
  using Kind = FormatError::Kind;
  if (bytes.size() < kHeaderBytes) {
    if (bytes.size() >= 4 && !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
      throw FormatError(Kind::kBadMagic, name + ": bad magic");
    }
    throw FormatError(Kind::kTruncated, name + ": truncated header");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw FormatError(Kind::kBadMagic, name + ": bad magic");
  }
  Frame f;
  f.header.version = bytes[4];
  f.header.space = bytes[5];
  f.header.unit = bytes[6];
  f.header.reserved = bytes[7];
  f.header.dim = read_le<std::uint32_t>(bytes, 8);
  f.header.record_count = read_le<std::uint32_t>(bytes, 12);
  if (f.header.version != kFormatVersion) {
    throw FormatError(Kind::kBadVersion,
                      name + ": unsupported version " + std::to_string(f.header.version));
  }
  if (f.header.dim == 0) throw FormatError(Kind::kBadHeader, name + ": zero dim");

  const std::size_t dim = f.header.dim;
  std::size_t pos = kHeaderBytes;
  f.records.reserve(f.header.record_count);
  for (std::uint32_t r = 0; r < f.header.record_count; ++r) {
    if (bytes.size() - pos < 6) {
      throw FormatError(Kind::kTruncated, name + ": truncated at record " + std::to_string(r));
    }
    FrameRecord rec;
    rec.id = read_le<std::uint32_t>(bytes, pos);
    rec.num_rows = read_le<std::uint16_t>(bytes, pos + 4);
    pos += 6;
    const std::size_t payload = static_cast<std::size_t>(rec.num_rows) * dim * sizeof(float);
    if (bytes.size() - pos < payload) {
      throw FormatError(Kind::kTruncated, name + ": truncated payload in record " +
                                              std::to_string(r) + " (id " +
                                              std::to_string(rec.id) + ")");
    }
    rec.values.resize(static_cast<std::size_t>(rec.num_rows) * dim);
    std::memcpy(rec.values.data(), bytes.data() + pos, payload);
    pos += payload;
    for (float v : rec.values) {
      if (!std::isfinite(v)) {
        throw FormatError(Kind::kNonFinite,
                          name + ": non-finite value in record id " + std::to_string(rec.id));
      }
    }
    f.records.push_back(std::move(rec));
  }
  if (pos != bytes.size()) {
    throw FormatError(Kind::kDimensionMismatch,
                      name + ": " + std::to_string(bytes.size() - pos) +
                          " bytes after the last record; record payloads are wider than the "
                          "header dim " + std::to_string(dim));
  }
  return f;
}

Frame read_frame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_frame(bytes, path.string());
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(frame.header.version);
  out.push_back(frame.header.space);
  out.push_back(frame.header.unit);
  out.push_back(frame.header.reserved);
  append_le<std::uint32_t>(out, frame.header.dim);
  append_le<std::uint32_t>(out, static_cast<std::uint32_t>(frame.records.size()));
  for (const auto& rec : frame.records) {
    if (rec.values.size() != static_cast<std::size_t>(rec.num_rows) * frame.header.dim) {
      throw DimensionError("record " + std::to_string(rec.id) + " holds " +
                           std::to_string(rec.values.size()) + " values, expected " +
                           std::to_string(rec.num_rows) + " x " +
                           std::to_string(frame.header.dim));
    }
    append_le<std::uint32_t>(out, rec.id);
    append_le<std::uint16_t>(out, rec.num_rows);
    const auto* p = reinterpret_cast<const std::uint8_t*>(rec.values.data());
    out.insert(out.end(), p, p + rec.values.size() * sizeof(float));
  }
  return out;
}

void write_frame(const std::filesystem::path& path, const Frame& frame) {
  const auto bytes = encode_frame(frame);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

EmbeddingStore::EmbeddingStore(EmbeddingSpace space, TextUnit unit, std::size_t dim)
    : space_(space), unit_(unit), dim_(dim) {
  if (dim == 0) throw ParameterError("embedding dim must be positive");
}

void EmbeddingStore::add(std::uint32_t id, nn::Matrix rows) {
  if (rows.cols() != dim_) {
    throw DimensionError("record " + std::to_string(id) + " is " + rows.shape() +
                         " but the store dim is " + std::to_string(dim_));
  }
  if (unit_ == TextUnit::kHead && rows.rows() != 1) {
    throw DimensionError("head record " + std::to_string(id) + " has " +
                         std::to_string(rows.rows()) + " rows");
  }
  if (rows.rows() > 0xFFFF) {
    throw DimensionError("record " + std::to_string(id) + " exceeds 65535 rows");
  }
  if (!rows.all_finite()) {
    throw DimensionError("record " + std::to_string(id) + " has non-finite values");
  }
  auto [it, inserted] = records_.emplace(id, std::move(rows));
  if (!inserted) throw IntegrityError("duplicate embedding id " + std::to_string(id));
  order_.push_back(id);
}

const nn::Matrix& EmbeddingStore::at(std::uint32_t id) const {
  auto it = records_.find(id);
  if (it == records_.end()) {
    throw IntegrityError(std::string(unit_ == TextUnit::kHead ? "head" : "body") +
                         " embedding " + std::to_string(id) + " missing from " +
                         (space_ == EmbeddingSpace::kSim ? "SIM" : "NLI") + " store");
  }
  return it->second;
}

EmbeddingStore load_embedding_store(const std::filesystem::path& path,
                                    std::optional<std::size_t> expected_dim) {
  using Kind = FormatError::Kind;
  Frame f = read_frame(path);
  if (f.header.space > 1) {
    throw FormatError(Kind::kBadHeader, path.string() + ": space byte " +
                                            std::to_string(f.header.space) +
                                            " is not an embedding space");
  }
  if (f.header.unit > 1) {
    throw FormatError(Kind::kBadHeader,
                      path.string() + ": unit byte " + std::to_string(f.header.unit));
  }
  if (expected_dim && *expected_dim != f.header.dim) {
    throw DimensionError(path.string() + ": header dim " + std::to_string(f.header.dim) +
                         ", expected " + std::to_string(*expected_dim));
  }
  EmbeddingStore store(static_cast<EmbeddingSpace>(f.header.space),
                       static_cast<TextUnit>(f.header.unit), f.header.dim);
  for (auto& rec : f.records) {
    if (store.unit() == TextUnit::kHead && rec.num_rows != 1) {
      throw FormatError(Kind::kDimensionMismatch, path.string() + ": head record " +
                                                      std::to_string(rec.id) + " has " +
                                                      std::to_string(rec.num_rows) + " rows");
    }
    store.add(rec.id, nn::Matrix(rec.num_rows, f.header.dim, std::move(rec.values)));
  }
  return store;
}

void write_embedding_store(const std::filesystem::path& path, const EmbeddingStore& store) {
  Frame f;
  f.header.space = static_cast<std::uint8_t>(store.space());
  f.header.unit = static_cast<std::uint8_t>(store.unit());
  f.header.dim = static_cast<std::uint32_t>(store.dim());
  for (std::uint32_t id : store.ids()) {
    const auto& m = store.at(id);
    f.records.push_back({id, static_cast<std::uint16_t>(m.rows()),
                         std::vector<float>(m.values().begin(), m.values().end())});
  }
  write_frame(path, f);
}

PaddedBody pad_truncate_body(const nn::Matrix& body, std::size_t max_rows) {
  if (body.rows() == 0) throw DegenerateInputError("body has no sentences");
  if (max_rows == 0) throw ParameterError("body length cap must be positive");
  PaddedBody out;
  out.length = std::min(body.rows(), max_rows);
  out.matrix = nn::Matrix(max_rows, body.cols());
  std::copy_n(body.data(), out.length * body.cols(), out.matrix.data());
  out.mask.assign(max_rows, false);
  std::fill_n(out.mask.begin(), out.length, true);
  return out;
}

}  // namespace bait::data
