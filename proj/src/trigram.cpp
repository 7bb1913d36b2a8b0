#include "tfree/trigram.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "tfree/fnv.hpp"

namespace tfree {

namespace {

unsigned char ascii_lower(unsigned char b) {
  return (b >= 'A' && b <= 'Z') ? static_cast<unsigned char>(b + 32) : b;
}

std::vector<Trigram> windows(std::string_view bytes) {
  std::vector<Trigram> out;
  if (bytes.size() < 3) return out;
  out.reserve(bytes.size() - 2);
  for (std::size_t i = 0; i + 3 <= bytes.size(); ++i) {
    Trigram t;
    t.bytes = {static_cast<unsigned char>(bytes[i]),
               static_cast<unsigned char>(bytes[i + 1]),
               static_cast<unsigned char>(bytes[i + 2])};
    out.push_back(t);
  }
  return out;
}

// Hash input: trigram bytes ++ '_' ++ decimal round index (1-based).
std::uint32_t round_index(const Trigram& t, std::uint32_t round, bool lowered,
                          std::uint32_t vocab_size) {
  unsigned char buf[16];
  for (int i = 0; i < 3; ++i) {
    buf[i] = lowered ? ascii_lower(t.bytes[i]) : t.bytes[i];
  }
  buf[3] = '_';
  char digits[12];
  int len = std::snprintf(digits, sizeof digits, "%u", round);
  std::memcpy(buf + 4, digits, static_cast<std::size_t>(len));
  return static_cast<std::uint32_t>(fnv1a64(buf, 4 + static_cast<std::size_t>(len)) %
                                    vocab_size);
}

SparsePattern pattern_from_windows(const std::vector<Trigram>& tris,
                                   const TFreeConfig& cfg) {
  SparsePattern p;
  p.indices.reserve(tris.size() * cfg.hashes_per_trigram);
  for (const Trigram& t : tris) {
    for (std::uint32_t i = 1; i <= cfg.hashes_per_trigram; ++i) {
      p.indices.push_back(round_index(t, i, i <= cfg.lowercase_hashes, cfg.vocab_size));
    }
  }
  std::sort(p.indices.begin(), p.indices.end());
  p.indices.erase(std::unique(p.indices.begin(), p.indices.end()), p.indices.end());
  return p;
}

bool is_tag_form(std::string_view text) {
  return text.size() >= 3 && text.front() == '<' && text.back() == '>';
}

std::vector<Trigram> token_windows(const Token& token) {
  if (token.is_content()) return trigrams(token.text);
  return windows(token_tag(token));
}

}  // namespace

std::vector<Trigram> trigrams(std::string_view token_text) {
  if (token_text.empty()) throw InputError("trigrams: empty token");
  std::string wrapped;
  wrapped.reserve(token_text.size() + 2);
  wrapped.push_back(' ');
  wrapped.append(token_text);
  wrapped.push_back(' ');
  return windows(wrapped);
}

SparsePattern pattern(const Token& token, const TFreeConfig& cfg) {
  cfg.validate();
  return pattern_from_windows(token_windows(token), cfg);
}

SparsePattern text_pattern(std::string_view text, const TFreeConfig& cfg) {
  cfg.validate();
  if (is_tag_form(text)) return pattern_from_windows(windows(text), cfg);
  return pattern_from_windows(trigrams(text), cfg);
}

std::size_t lowercase_overlap(const Token& a, const Token& b, const TFreeConfig& cfg) {
  SparsePattern pa = pattern(a, cfg);
  SparsePattern pb = pattern(b, cfg);
  std::vector<std::uint32_t> common;
  std::set_intersection(pa.indices.begin(), pa.indices.end(), pb.indices.begin(),
                        pb.indices.end(), std::back_inserter(common));
  return common.size();
}

TrigramIndexer::TrigramIndexer(const TFreeConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

const std::vector<std::uint32_t>& TrigramIndexer::round_indices(const Trigram& t) {
  std::uint32_t key = (static_cast<std::uint32_t>(t.bytes[0]) << 16) |
                      (static_cast<std::uint32_t>(t.bytes[1]) << 8) |
                      static_cast<std::uint32_t>(t.bytes[2]);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::vector<std::uint32_t> rounds;
  rounds.reserve(cfg_.hashes_per_trigram);
  for (std::uint32_t i = 1; i <= cfg_.hashes_per_trigram; ++i) {
    rounds.push_back(round_index(t, i, i <= cfg_.lowercase_hashes, cfg_.vocab_size));
  }
  return cache_.emplace(key, std::move(rounds)).first->second;
}

SparsePattern TrigramIndexer::accumulate(const std::vector<Trigram>& tris) {
  SparsePattern p;
  p.indices.reserve(tris.size() * cfg_.hashes_per_trigram);
  for (const Trigram& t : tris) {
    const auto& rounds = round_indices(t);
    p.indices.insert(p.indices.end(), rounds.begin(), rounds.end());
  }
  std::sort(p.indices.begin(), p.indices.end());
  p.indices.erase(std::unique(p.indices.begin(), p.indices.end()), p.indices.end());
  return p;
}

SparsePattern TrigramIndexer::pattern(const Token& token) {
  return accumulate(token_windows(token));
}

SparsePattern TrigramIndexer::text_pattern(std::string_view text) {
  if (is_tag_form(text)) return accumulate(windows(text));
  return accumulate(trigrams(text));
}

const std::vector<std::string>& golden_tokens() {
  static const std::vector<std::string> tokens = {
      "Hello", "hello",  "HELLO",   "world", "The",
      "the",   "a",      "I",       "cat",   "mat",
      "zzzz",  "QQQQ",   "Zürich", "naïve", "_under_",
      "longwordabcdefghijklmnopqrstuv", "9", "!", "<ws>", "<no_ws>"};
  return tokens;
}

}  // namespace tfree
