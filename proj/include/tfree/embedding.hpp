#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tfree/config.hpp"
#include "tfree/matrix.hpp"
#include "tfree/trigram.hpp"

namespace tfree {

// Embedding table with one row per vocabulary index. A token's dense
// embedding is the sum of the rows its activation pattern selects, so
// tokens sharing trigrams share embedding mass.
struct EmbeddingMatrix {
  TFreeConfig cfg;
  std::size_t hidden = 64;
  Matrix rows;  // vocab_size x hidden

  EmbeddingMatrix() = default;
  EmbeddingMatrix(const TFreeConfig& c, std::size_t h)
      : cfg(c), hidden(h), rows(c.vocab_size, h) {
    cfg.validate();
    if (h < 1) throw InputError("embedding: hidden size must be >= 1");
  }
};

// Sum of the selected rows, accumulated in ascending index order in
// double precision so results are bit-reproducible.
std::vector<double> encode_pattern(const SparsePattern& p, const EmbeddingMatrix& E);
std::vector<double> encode_token(const Token& token, const EmbeddingMatrix& E);

// One embedding per token of split(text), in order.
std::vector<std::vector<double>> encode_text(std::string_view text,
                                             const EmbeddingMatrix& E,
                                             const SplitConfig& split_cfg = {});

// Fills the table i.i.d. normal with standard deviation 1/sqrt(m * 5 * h):
// a token of average length (~5 trigram windows, m rounds each) then
// starts with a unit-order embedding norm.
void init_embedding(EmbeddingMatrix& E, std::uint64_t seed);

// Checkpoint: fixed 8-byte tag, config header, then the table row-major
// as little-endian 32-bit floats. Loading restores doubles through the
// same quantization, and rejects files whose hash name differs.
void save_embedding(const EmbeddingMatrix& E, const std::string& path);
EmbeddingMatrix load_embedding(const std::string& path);

}  // namespace tfree
