#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfree/config.hpp"
#include "tfree/splitter.hpp"
#include "tfree/trigram.hpp"

namespace tfree {

// The candidate next words, stored as one sparse binary row per word in
// CSR form: row i of the conceptual d x v matrix has ones exactly at
// indices[offsets[i] .. offsets[i+1]). Immutable after compilation;
// concurrent decodes are safe.
struct Dictionary {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> offsets;  // size d+1, offsets[0] == 0
  std::vector<std::uint32_t> indices;  // concatenated sorted patterns
  TFreeConfig cfg;

  std::size_t size() const { return tokens.size(); }
  std::size_t row_weight(std::size_t i) const {
    return static_cast<std::size_t>(offsets[i + 1] - offsets[i]);
  }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {indices.data() + offsets[i], indices.data() + offsets[i + 1]};
  }
};

// Builds the dictionary from word strings. Duplicates collapse keeping
// first occurrence. A word must be either a control-style tag ("<...>",
// hashed verbatim — this is how an end-of-text marker like "<eot>" joins
// the dictionary) or text that splits into exactly one content token.
Dictionary compile_dictionary(std::span<const std::string> words,
                              const TFreeConfig& cfg);

struct DecodeResult {
  std::string token;
  std::size_t index = 0;   // dictionary row of the winner
  double score = 0.0;      // softmax-normalized score of the winner
  std::vector<std::pair<std::string, double>> rank_scores;  // top-r, optional
};

// Per-word scores before softmax: the mean sigmoid of the logits each
// word's pattern selects, (1/|row_i|) * sum_{j in row_i} sigmoid(z_j).
// Computed by sparse traversal in O(sum of row weights); values in (0,1).
std::vector<double> pattern_scores(std::span<const double> logits,
                                   const Dictionary& dict);

// Softmax over pattern_scores, then argmax with ties broken toward the
// lowest dictionary index. top_r > 0 additionally returns the top-r
// (token, score) pairs in descending score order.
DecodeResult decode(std::span<const double> logits, const Dictionary& dict,
                    std::size_t top_r = 0);

// Repeatedly decodes the model's next word and appends it, starting from
// split(prefix), for at most `steps` words; decoding "<eot>" stops early.
// Returns the joined text.
using LogitFn = std::function<std::vector<double>(std::span<const Token>)>;
std::string greedy_generate(std::string_view prefix, const LogitFn& model,
                            const Dictionary& dict, std::size_t steps,
                            const SplitConfig& split_cfg = {});

// One word per line, '#' starts a comment line, blank lines and trailing
// CR ignored.
std::vector<std::string> load_wordlist(const std::string& path);

// Compiled dictionary cache: fixed 8-byte tag, config header, CSR arrays,
// then the word strings. Loading rebuilds the exact Dictionary.
void save_dictionary(const Dictionary& dict, const std::string& path);
Dictionary load_dictionary(const std::string& path);

}  // namespace tfree
