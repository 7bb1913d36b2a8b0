#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tfree/token.hpp"

namespace tfree {

// --- Fertility -------------------------------------------------------------

// Tokens emitted per reference word. Reference words are maximal runs of
// alphanumeric characters (ASCII letters and digits, plus any non-ASCII
// non-whitespace codepoint) — a deliberately simple stand-in for a
// treebank tokenizer, so absolute numbers are not comparable to results
// computed against one.
struct FertilityReport {
  std::uint64_t documents = 0;
  std::uint64_t reference_words = 0;
  std::uint64_t tokens = 0;
  double fertility = 0.0;  // tokens / reference_words; 0 when undefined

  bool defined() const { return reference_words > 0; }
};

// Streaming fertility counter. Feed each document once, with either the
// built-in splitter as token counter or an externally supplied count;
// partial accumulators merge commutatively, so document order and
// chunking never change the report.
class FertilityAccumulator {
 public:
  explicit FertilityAccumulator(const SplitConfig& split_cfg = {})
      : split_cfg_(split_cfg) {}

  void add_document(std::string_view text);
  void add_document_with_count(std::string_view text, std::uint64_t token_count);
  void merge(const FertilityAccumulator& other);
  FertilityReport report() const;

 private:
  SplitConfig split_cfg_;
  std::uint64_t documents_ = 0;
  std::uint64_t reference_words_ = 0;
  std::uint64_t tokens_ = 0;
};

// Count of maximal alphanumeric runs in one document.
std::uint64_t reference_word_count(std::string_view text);

// --- Vocabulary duplicate audit -------------------------------------------

// Share of a tokenizer vocabulary that duplicates another entry: case
// variants whose ASCII-lowercased form is also present, leading-marker
// variants whose stripped form is also present, and multi-digit tokens.
// A token can fall into several categories; the total is the share of
// the union, so it is at most the sum of the parts.
struct DuplicateReport {
  std::uint64_t vocab_size = 0;
  double capitalization_pct = 0.0;
  double whitespace_pct = 0.0;
  double digit_pct = 0.0;
  double total_pct = 0.0;
};

// ws_marker is the vocabulary's leading-whitespace encoding (a metaspace
// codepoint or a literal space), given as its UTF-8 bytes.
DuplicateReport duplicates(std::span<const std::string> vocab,
                           std::string_view ws_marker);

// The hashed-pattern codec keeps no vocabulary list, so it has no
// duplicate entries to audit: every field is zero by construction.
DuplicateReport codec_duplicates();

// --- Corpus coverage -------------------------------------------------------

struct CoveragePoint {
  std::uint64_t key = 0;       // word length, or 1-based frequency rank
  double cumulative_pct = 0.0;
};

struct CoverageCurve {
  std::vector<CoveragePoint> points;
};

struct CoverageReport {
  CoverageCurve by_length;     // % of word occurrences of byte length <= L
  CoverageCurve top_words;     // % of occurrences covered by the n most frequent words
  CoverageCurve top_trigrams;  // same over boundary-wrapped trigram instances
};

// Streaming corpus statistics over the same reference words as the
// fertility counter. Frequency ties rank lexicographically so reports
// are deterministic; merging partial accumulators equals one pass.
class CoverageAccumulator {
 public:
  void add_document(std::string_view text);
  void merge(const CoverageAccumulator& other);

  // max_rank caps the two frequency curves (0 = no cap). by_length is
  // always complete.
  CoverageReport report(std::size_t max_rank = 0) const;

 private:
  std::unordered_map<std::string, std::uint64_t> word_counts_;
  std::unordered_map<std::string, std::uint64_t> trigram_counts_;
  std::map<std::uint64_t, std::uint64_t> length_counts_;
  std::uint64_t total_words_ = 0;
  std::uint64_t total_trigrams_ = 0;
};

}  // namespace tfree
