#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tfree/config.hpp"
#include "tfree/token.hpp"

namespace tfree {

// One 3-byte window of a boundary-wrapped token.
struct Trigram {
  std::array<unsigned char, 3> bytes;

  bool operator==(const Trigram& o) const = default;
  std::string str() const {
    return std::string(reinterpret_cast<const char*>(bytes.data()), 3);
  }
};

// The set of active vocabulary indices for one token: strictly ascending,
// unique, all < vocab_size. For a token of n bytes there are n trigram
// windows and at most n*m distinct indices.
struct SparsePattern {
  std::vector<std::uint32_t> indices;

  std::size_t size() const { return indices.size(); }
  bool operator==(const SparsePattern& o) const = default;
};

// Sliding 3-byte windows (stride 1) over 0x20 ++ token_bytes ++ 0x20.
// A token of n bytes yields exactly n windows, order preserved,
// duplicates preserved. Empty input is an error.
std::vector<Trigram> trigrams(std::string_view token_text);

// Activation pattern of one token. Each trigram is hashed m times with
// the 1-based round index appended after a '_' separator; rounds i <= k
// hash the ASCII-lowercased trigram instead, so case variants share those
// indices. Index = hash mod v; duplicates collapse (binary pattern).
// Control tokens hash their tag strings ("<ws>", "<no_ws>", "<ws2>",
// "<ws4>", "<ws8>") without boundary wrapping.
SparsePattern pattern(const Token& token, const TFreeConfig& cfg);

// Pattern for a token given as bare text. Text of the form "<...>" is
// treated like a control tag (no boundary wrap); anything else is hashed
// as a regular wrapped token. This is the path dictionary words and the
// CLI take.
SparsePattern text_pattern(std::string_view text, const TFreeConfig& cfg);

// |pattern(a) ∩ pattern(b)|.
std::size_t lowercase_overlap(const Token& a, const Token& b, const TFreeConfig& cfg);

// Memoizes per-trigram index lists. Purely an accelerator: patterns
// computed through a cache are identical to the direct path. Not
// thread-safe; use one instance per thread.
class TrigramIndexer {
 public:
  explicit TrigramIndexer(const TFreeConfig& cfg);

  SparsePattern pattern(const Token& token);
  SparsePattern text_pattern(std::string_view text);
  const TFreeConfig& config() const { return cfg_; }

 private:
  const std::vector<std::uint32_t>& round_indices(const Trigram& t);
  SparsePattern accumulate(const std::vector<Trigram>& tris);

  TFreeConfig cfg_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> cache_;
};

// Fixed token list used for cross-implementation conformance vectors.
const std::vector<std::string>& golden_tokens();

}  // namespace tfree
