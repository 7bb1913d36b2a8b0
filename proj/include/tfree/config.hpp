#pragma once

#include <cstdint>
#include <string>

#include "tfree/errors.hpp"

namespace tfree {

// Hyperparameters shared by every pattern, embedding and dictionary in a
// model. vocab_size (v) is the number of embedding rows, hashes_per_trigram
// (m) the number of hash rounds per trigram, and lowercase_hashes (k) the
// number of those rounds computed on the lowercased trigram so that case
// variants of a word share indices. 0 <= k < m.
//
// hash_name is recorded in every checkpoint and cache so that artifacts
// produced under a different hash are rejected instead of silently
// decoding garbage. Only "fnv1a64" is implemented.
struct TFreeConfig {
  std::uint32_t vocab_size = 8000;
  std::uint32_t hashes_per_trigram = 10;
  std::uint32_t lowercase_hashes = 0;
  std::string hash_name = "fnv1a64";

  void validate() const {
    if (vocab_size < 1) throw InputError("config: vocab_size must be >= 1");
    if (hashes_per_trigram < 1) {
      throw InputError("config: hashes_per_trigram must be >= 1");
    }
    if (lowercase_hashes >= hashes_per_trigram) {
      throw InputError("config: lowercase_hashes must be < hashes_per_trigram");
    }
    if (hash_name != "fnv1a64") {
      throw InputError("config: unknown hash '" + hash_name + "'");
    }
  }

  bool operator==(const TFreeConfig& o) const = default;
};

}  // namespace tfree
