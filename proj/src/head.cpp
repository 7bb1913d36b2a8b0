#include "tfree/head.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "tfree/numerics.hpp"

#include "binary_io.hpp"

namespace tfree {

namespace {

constexpr char kMagic[9] = "TFREDIC1";

bool is_tag_form(std::string_view text) {
  return text.size() >= 3 && text.front() == '<' && text.back() == '>';
}

// Valid dictionary words are control-style tags (hashed verbatim) or
// single content tokens. Anything else cannot be produced by decoding,
// so admitting it would create unreachable rows.
void check_word(const std::string& word) {
  if (is_tag_form(word)) return;
  try {
    token_from_text(word);
  } catch (const InputError&) {
    throw InputError("dictionary word is not a single token: '" + word + "'");
  }
}

}  // namespace

Dictionary compile_dictionary(std::span<const std::string> words,
                              const TFreeConfig& cfg) {
  cfg.validate();
  if (words.empty()) throw InputError("dictionary: no words given");
  Dictionary dict;
  dict.cfg = cfg;
  dict.offsets.push_back(0);
  TrigramIndexer indexer(cfg);
  std::unordered_set<std::string> seen;
  for (const std::string& word : words) {
    if (!seen.insert(word).second) continue;
    check_word(word);
    SparsePattern p = indexer.text_pattern(word);
    dict.tokens.push_back(word);
    dict.indices.insert(dict.indices.end(), p.indices.begin(), p.indices.end());
    dict.offsets.push_back(dict.indices.size());
  }
  return dict;
}

std::vector<double> pattern_scores(std::span<const double> logits,
                                   const Dictionary& dict) {
  if (logits.size() != dict.cfg.vocab_size) {
    throw InputError("decode: got " + std::to_string(logits.size()) +
                     " logits for vocab of " + std::to_string(dict.cfg.vocab_size));
  }
  for (double z : logits) {
    if (!std::isfinite(z)) throw InputError("decode: non-finite logit");
  }
  // sigmoid is evaluated once per vocabulary index actually referenced,
  // lazily, so cost stays proportional to the sparse row structure.
  std::vector<double> sig(logits.size(), -1.0);
  std::vector<double> scores(dict.size());
  for (std::size_t i = 0; i < dict.size(); ++i) {
    double sum = 0.0;
    for (std::uint32_t j : dict.row(i)) {
      if (sig[j] < 0.0) sig[j] = sigmoid(logits[j]);
      sum += sig[j];
    }
    scores[i] = sum / static_cast<double>(dict.row_weight(i));
  }
  return scores;
}

DecodeResult decode(std::span<const double> logits, const Dictionary& dict,
                    std::size_t top_r) {
  std::vector<double> scores = pattern_scores(logits, dict);
  softmax_inplace(scores);
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;  // strict: ties keep lowest index
  }
  DecodeResult result;
  result.token = dict.tokens[best];
  result.index = best;
  result.score = scores[best];
  if (top_r > 0) {
    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::size_t r = std::min(top_r, order.size());
    std::partial_sort(order.begin(), order.begin() + r, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (scores[a] != scores[b]) return scores[a] > scores[b];
                        return a < b;
                      });
    for (std::size_t i = 0; i < r; ++i) {
      result.rank_scores.emplace_back(dict.tokens[order[i]], scores[order[i]]);
    }
  }
  return result;
}

std::string greedy_generate(std::string_view prefix, const LogitFn& model,
                            const Dictionary& dict, std::size_t steps,
                            const SplitConfig& split_cfg) {
  std::vector<Token> tokens = split(prefix, split_cfg);
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<double> logits = model(tokens);
    DecodeResult next = decode(logits, dict);
    if (next.token == "<eot>") break;
    tokens.push_back(token_from_text(next.token, split_cfg));
  }
  return join(tokens, split_cfg);
}

std::vector<std::string> load_wordlist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read wordlist: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return words;
}

void save_dictionary(const Dictionary& dict, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  bin::write_magic(out, kMagic);
  bin::write_u32(out, dict.cfg.vocab_size);
  bin::write_u32(out, dict.cfg.hashes_per_trigram);
  bin::write_u32(out, dict.cfg.lowercase_hashes);
  bin::write_string(out, dict.cfg.hash_name);
  bin::write_u64(out, dict.size());
  for (std::uint64_t off : dict.offsets) bin::write_u64(out, off);
  for (std::uint32_t idx : dict.indices) bin::write_u32(out, idx);
  for (const std::string& tok : dict.tokens) bin::write_string(out, tok);
  if (!out) throw InputError("write failed: " + path);
}

Dictionary load_dictionary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  bin::expect_magic(in, kMagic, path);
  Dictionary dict;
  dict.cfg.vocab_size = bin::read_u32(in);
  dict.cfg.hashes_per_trigram = bin::read_u32(in);
  dict.cfg.lowercase_hashes = bin::read_u32(in);
  dict.cfg.hash_name = bin::read_string(in);
  dict.cfg.validate();
  std::uint64_t d = bin::read_u64(in);
  if (d < 1) throw InputError("dictionary cache is empty: " + path);
  dict.offsets.resize(d + 1);
  for (std::uint64_t& off : dict.offsets) off = bin::read_u64(in);
  if (dict.offsets[0] != 0 || !std::is_sorted(dict.offsets.begin(), dict.offsets.end())) {
    throw InputError("dictionary cache has corrupt offsets: " + path);
  }
  dict.indices.resize(dict.offsets.back());
  for (std::uint32_t& idx : dict.indices) {
    idx = bin::read_u32(in);
    if (idx >= dict.cfg.vocab_size) {
      throw InputError("dictionary cache index out of range: " + path);
    }
  }
  dict.tokens.resize(d);
  for (std::string& tok : dict.tokens) tok = bin::read_string(in);
  return dict;
}

}  // namespace tfree
