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

#ifndef BAIT_DATA_EMBEDDING_STORE_HPP_
#define BAIT_DATA_EMBEDDING_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bait/nn/matrix.hpp"

namespace bait::data {

enum class EmbeddingSpace : std::uint8_t { kSim = 0, kNli = 1 };
enum class TextUnit : std::uint8_t { kHead = 0, kBody = 1 };

inline constexpr std::size_t kDefaultSimDim = 384;
inline constexpr std::size_t kDefaultNliDim = 768;
inline constexpr std::size_t kMaxBodySentences = 50;

// Precomputed sentence embeddings for heads (one row each) or bodies (one row
// per sentence), keyed by headline id or Body ID.
class EmbeddingStore {
 public:
  EmbeddingStore(EmbeddingSpace space, TextUnit unit, std::size_t dim);

  EmbeddingSpace space() const { return space_; }
  TextUnit unit() const { return unit_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return order_.size(); }

  // Throws DimensionError on a width mismatch, a head record with other than
  // one row, or non-finite values; IntegrityError on a duplicate id.
  void add(std::uint32_t id, nn::Matrix rows);

  bool contains(std::uint32_t id) const { return records_.count(id) != 0; }
  // IntegrityError if absent.
  const nn::Matrix& at(std::uint32_t id) const;
  // Ids in insertion order.
  const std::vector<std::uint32_t>& ids() const { return order_; }

 private:
  EmbeddingSpace space_;
  TextUnit unit_;
  std::size_t dim_;
  std::unordered_map<std::uint32_t, nn::Matrix> records_;
  std::vector<std::uint32_t> order_;
};

// `expected_dim`, when given, must equal the header dim (DimensionError).
EmbeddingStore load_embedding_store(const std::filesystem::path& path,
                                    std::optional<std::size_t> expected_dim = std::nullopt);
void write_embedding_store(const std::filesystem::path& path, const EmbeddingStore& store);

// A body cut or zero-padded to a fixed number of rows. mask[i] is true for
// real sentences, which always come first.
struct PaddedBody {
  nn::Matrix matrix;
  std::vector<bool> mask;
  std::size_t length = 0;  // number of real rows
};

// DegenerateInputError for a zero-sentence body.
PaddedBody pad_truncate_body(const nn::Matrix& body, std::size_t max_rows = kMaxBodySentences);

}  // namespace bait::data

#endif  // BAIT_DATA_EMBEDDING_STORE_HPP_
