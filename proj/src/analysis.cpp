#include "tfree/analysis.hpp"

#include <algorithm>
#include <unordered_set>

#include "tfree/splitter.hpp"
#include "tfree/trigram.hpp"

namespace tfree {

namespace {

bool is_alnum_codepoint(std::uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= 'a' && cp <= 'z');
  }
  return !is_whitespace_codepoint(cp);
}

// Calls fn(word) for every maximal alphanumeric run.
template <typename Fn>
void for_each_reference_word(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t word_start = 0;
  bool in_word = false;
  while (pos < text.size()) {
    std::size_t start = pos;
    std::uint32_t cp = decode_utf8(text, pos);
    if (is_alnum_codepoint(cp)) {
      if (!in_word) {
        in_word = true;
        word_start = start;
      }
    } else if (in_word) {
      fn(text.substr(word_start, start - word_start));
      in_word = false;
    }
  }
  if (in_word) fn(text.substr(word_start));
}

bool all_ascii_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

// Ranks keys by count descending, lexicographic ascending on ties, and
// emits one cumulative point per rank up to max_rank (0 = all).
CoverageCurve frequency_curve(
    const std::unordered_map<std::string, std::uint64_t>& counts,
    std::uint64_t total, std::size_t max_rank) {
  std::vector<std::pair<std::string_view, std::uint64_t>> order;
  order.reserve(counts.size());
  for (const auto& [key, count] : counts) order.emplace_back(key, count);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (max_rank > 0 && order.size() > max_rank) order.resize(max_rank);

  CoverageCurve curve;
  curve.points.reserve(order.size());
  std::uint64_t running = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    running += order[r].second;
    curve.points.push_back(
        {r + 1, 100.0 * static_cast<double>(running) / static_cast<double>(total)});
  }
  return curve;
}

}  // namespace

std::uint64_t reference_word_count(std::string_view text) {
  std::uint64_t n = 0;
  for_each_reference_word(text, [&](std::string_view) { ++n; });
  return n;
}

void FertilityAccumulator::add_document(std::string_view text) {
  add_document_with_count(text, split(text, split_cfg_).size());
}

void FertilityAccumulator::add_document_with_count(std::string_view text,
                                                   std::uint64_t token_count) {
  documents_ += 1;
  reference_words_ += reference_word_count(text);
  tokens_ += token_count;
}

void FertilityAccumulator::merge(const FertilityAccumulator& other) {
  documents_ += other.documents_;
  reference_words_ += other.reference_words_;
  tokens_ += other.tokens_;
}

FertilityReport FertilityAccumulator::report() const {
  FertilityReport r;
  r.documents = documents_;
  r.reference_words = reference_words_;
  r.tokens = tokens_;
  if (r.reference_words > 0) {
    r.fertility =
        static_cast<double>(r.tokens) / static_cast<double>(r.reference_words);
  }
  return r;
}

DuplicateReport duplicates(std::span<const std::string> vocab,
                           std::string_view ws_marker) {
  if (vocab.empty()) throw InputError("duplicate audit: empty vocabulary");
  std::unordered_set<std::string_view> members(vocab.begin(), vocab.end());
  std::uint64_t cap = 0, ws = 0, digit = 0, any = 0;
  for (const std::string& tok : vocab) {
    bool is_cap = false, is_ws = false, is_digit = false;
    std::string folded = ascii_lower(tok);
    if (folded != tok && members.count(folded)) is_cap = true;
    if (!ws_marker.empty() && tok.size() > ws_marker.size() &&
        std::string_view(tok).substr(0, ws_marker.size()) == ws_marker &&
        members.count(std::string_view(tok).substr(ws_marker.size()))) {
      is_ws = true;
    }
    if (tok.size() >= 2 && all_ascii_digits(tok)) is_digit = true;
    cap += is_cap;
    ws += is_ws;
    digit += is_digit;
    any += (is_cap || is_ws || is_digit);
  }
  DuplicateReport r;
  r.vocab_size = vocab.size();
  double denom = static_cast<double>(vocab.size());
  r.capitalization_pct = 100.0 * static_cast<double>(cap) / denom;
  r.whitespace_pct = 100.0 * static_cast<double>(ws) / denom;
  r.digit_pct = 100.0 * static_cast<double>(digit) / denom;
  r.total_pct = 100.0 * static_cast<double>(any) / denom;
  return r;
}

DuplicateReport codec_duplicates() { return DuplicateReport{}; }

void CoverageAccumulator::add_document(std::string_view text) {
  for_each_reference_word(text, [&](std::string_view word) {
    word_counts_[std::string(word)] += 1;
    length_counts_[word.size()] += 1;
    total_words_ += 1;
    for (const Trigram& t : trigrams(word)) {
      trigram_counts_[t.str()] += 1;
      total_trigrams_ += 1;
    }
  });
}

void CoverageAccumulator::merge(const CoverageAccumulator& other) {
  for (const auto& [word, count] : other.word_counts_) word_counts_[word] += count;
  for (const auto& [tri, count] : other.trigram_counts_) {
    trigram_counts_[tri] += count;
  }
  for (const auto& [len, count] : other.length_counts_) length_counts_[len] += count;
  total_words_ += other.total_words_;
  total_trigrams_ += other.total_trigrams_;
}

CoverageReport CoverageAccumulator::report(std::size_t max_rank) const {
  CoverageReport report;
  if (total_words_ == 0) return report;

  std::uint64_t running = 0;
  for (const auto& [len, count] : length_counts_) {  // std::map: ascending
    running += count;
    report.by_length.points.push_back(
        {len, 100.0 * static_cast<double>(running) /
                  static_cast<double>(total_words_)});
  }
  report.top_words = frequency_curve(word_counts_, total_words_, max_rank);
  report.top_trigrams = frequency_curve(trigram_counts_, total_trigrams_, max_rank);
  return report;
}

}  // namespace tfree
