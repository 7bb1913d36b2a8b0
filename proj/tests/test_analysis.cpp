#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "tfree/analysis.hpp"
#include "tfree/errors.hpp"

using namespace tfree;

namespace {
const std::string kMarker = "\xE2\x96\x81";  // metaspace U+2581
}

TEST_CASE("reference words are maximal alphanumeric runs") {
  CHECK(reference_word_count("the cat sat") == 3);
  CHECK(reference_word_count("In 2024") == 2);
  CHECK(reference_word_count("a-b") == 2);
  CHECK(reference_word_count("snake_case") == 2);  // underscore separates
  CHECK(reference_word_count("caf\xC3\xA9 \xE6\x97\xA5\xE6\x9C\xAC") == 2);
  CHECK(reference_word_count("2024") == 1);
  CHECK(reference_word_count("") == 0);
  CHECK(reference_word_count(" .! ") == 0);
}

TEST_CASE("fertility is one on plain whitespace-separated words") {
  FertilityAccumulator acc;
  acc.add_document("the cat sat");
  FertilityReport r = acc.report();
  CHECK(r.documents == 1);
  CHECK(r.reference_words == 3);
  CHECK(r.tokens == 3);
  CHECK(r.defined());
  CHECK(r.fertility == 1.0);

  std::mt19937_64 rng(40);
  std::uniform_int_distribution<int> len(1, 12), words(1, 30);
  std::uniform_int_distribution<int> ch('a', 'z');
  FertilityAccumulator pure;
  for (int doc = 0; doc < 50; ++doc) {
    std::string text;
    int n = words(rng);
    for (int w = 0; w < n; ++w) {
      if (w) text.push_back(' ');
      int l = len(rng);
      for (int i = 0; i < l; ++i) text.push_back(static_cast<char>(ch(rng)));
    }
    pure.add_document(text);
  }
  CHECK(pure.report().fertility == 1.0);
}

TEST_CASE("digits raise fertility") {
  FertilityAccumulator acc;
  acc.add_document("In 2024");  // 5 tokens over 2 reference words
  FertilityReport r = acc.report();
  CHECK(r.tokens == 5);
  CHECK(r.reference_words == 2);
  CHECK(r.fertility == 2.5);
}

TEST_CASE("documents without words stay well-defined") {
  FertilityAccumulator acc;
  acc.add_document("");
  acc.add_document(" ... ");
  FertilityReport r = acc.report();
  CHECK(r.documents == 2);
  CHECK_FALSE(r.defined());
  CHECK(r.fertility == 0.0);
}

TEST_CASE("external token counts substitute for the splitter") {
  FertilityAccumulator acc;
  acc.add_document_with_count("the cat", 7);
  FertilityReport r = acc.report();
  CHECK(r.tokens == 7);
  CHECK(r.reference_words == 2);
  CHECK(r.fertility == 3.5);
}

TEST_CASE("fertility accumulators merge to the single-pass answer") {
  std::vector<std::string> docs = {"one two three", "In 2024", "", "a-b c"};
  FertilityAccumulator whole;
  for (const std::string& d : docs) whole.add_document(d);

  FertilityAccumulator left, right;
  left.add_document(docs[0]);
  left.add_document(docs[1]);
  right.add_document(docs[2]);
  right.add_document(docs[3]);
  left.merge(right);

  FertilityReport a = whole.report(), b = left.report();
  CHECK(a.documents == b.documents);
  CHECK(a.reference_words == b.reference_words);
  CHECK(a.tokens == b.tokens);
  CHECK(a.fertility == b.fertility);
}

TEST_CASE("duplicate audit on the three-category example") {
  std::vector<std::string> vocab = {"word", "Word", kMarker + "word", "12", "x"};
  DuplicateReport r = duplicates(vocab, kMarker);
  CHECK(r.vocab_size == 5);
  CHECK(r.capitalization_pct == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(r.whitespace_pct == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(r.digit_pct == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(r.total_pct == doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("a token can duplicate in several categories but counts once") {
  std::vector<std::string> vocab = {"Dog", "dog", kMarker + "dog", "42",
                                    kMarker + "Dog"};
  DuplicateReport r = duplicates(vocab, kMarker);
  CHECK(r.capitalization_pct == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(r.whitespace_pct == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(r.digit_pct == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(r.total_pct == doctest::Approx(80.0).epsilon(1e-12));
  CHECK(r.total_pct <= r.capitalization_pct + r.whitespace_pct + r.digit_pct);
}

TEST_CASE("clean vocabularies report zero everywhere") {
  std::vector<std::string> vocab = {"alpha", "beta", "gamma"};
  DuplicateReport r = duplicates(vocab, kMarker);
  CHECK(r.capitalization_pct == 0.0);
  CHECK(r.whitespace_pct == 0.0);
  CHECK(r.digit_pct == 0.0);
  CHECK(r.total_pct == 0.0);
}

TEST_CASE("duplicate audit ignores vocabulary order") {
  std::vector<std::string> vocab = {"word", "Word", kMarker + "word",
                                    "12",   "x",    "99"};
  DuplicateReport base = duplicates(vocab, kMarker);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(vocab.begin(), vocab.end(), rng);
    DuplicateReport r = duplicates(vocab, kMarker);
    CHECK(r.capitalization_pct == base.capitalization_pct);
    CHECK(r.whitespace_pct == base.whitespace_pct);
    CHECK(r.digit_pct == base.digit_pct);
    CHECK(r.total_pct == base.total_pct);
  }
}

TEST_CASE("a literal space works as the whitespace marker") {
  std::vector<std::string> vocab = {" word", "word"};
  DuplicateReport r = duplicates(vocab, " ");
  CHECK(r.whitespace_pct == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("empty vocabulary is rejected; the codec self-report is zero") {
  CHECK_THROWS_AS(duplicates({}, kMarker), InputError);
  DuplicateReport r = codec_duplicates();
  CHECK(r.vocab_size == 0);
  CHECK(r.capitalization_pct == 0.0);
  CHECK(r.whitespace_pct == 0.0);
  CHECK(r.digit_pct == 0.0);
  CHECK(r.total_pct == 0.0);
}

TEST_CASE("coverage on a one-word corpus") {
  CoverageAccumulator acc;
  acc.add_document("aa aa aa");
  CoverageReport r = acc.report();
  REQUIRE(r.top_words.points.size() == 1);
  CHECK(r.top_words.points[0].key == 1);
  CHECK(r.top_words.points[0].cumulative_pct == doctest::Approx(100.0).epsilon(1e-12));
  REQUIRE(r.by_length.points.size() == 1);
  CHECK(r.by_length.points[0].key == 2);
  CHECK(r.by_length.points[0].cumulative_pct == doctest::Approx(100.0).epsilon(1e-12));
  // "aa" wraps to the windows " aa" and "aa ", tied 3 to 3; the
  // lexicographic tie-break ranks " aa" first.
  REQUIRE(r.top_trigrams.points.size() == 2);
  CHECK(r.top_trigrams.points[0].cumulative_pct == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(r.top_trigrams.points[1].cumulative_pct == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("coverage by length accumulates hand-counted thirds") {
  CoverageAccumulator acc;
  acc.add_document("a bb ccc");
  CoverageReport r = acc.report();
  REQUIRE(r.by_length.points.size() == 3);
  CHECK(r.by_length.points[0].key == 1);
  CHECK(r.by_length.points[0].cumulative_pct ==
        doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  CHECK(r.by_length.points[1].key == 2);
  CHECK(r.by_length.points[1].cumulative_pct ==
        doctest::Approx(200.0 / 3.0).epsilon(1e-12));
  CHECK(r.by_length.points[2].key == 3);
  CHECK(r.by_length.points[2].cumulative_pct == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("coverage curves are monotone and end at full coverage") {
  CoverageAccumulator acc;
  acc.add_document("some words appear more often than other words do appear");
  acc.add_document("and some words only once");
  CoverageReport r = acc.report();
  for (const CoverageCurve* curve :
       {&r.by_length, &r.top_words, &r.top_trigrams}) {
    REQUIRE(!curve->points.empty());
    for (std::size_t i = 1; i < curve->points.size(); ++i) {
      CHECK(curve->points[i].cumulative_pct >=
            curve->points[i - 1].cumulative_pct);
    }
    CHECK(curve->points.back().cumulative_pct ==
          doctest::Approx(100.0).epsilon(1e-9));
  }
}

TEST_CASE("rank caps trim the frequency curves only") {
  CoverageAccumulator acc;
  acc.add_document("one two three four five six seven");
  CoverageReport r = acc.report(3);
  CHECK(r.top_words.points.size() == 3);
  CHECK(r.top_words.points.back().cumulative_pct < 100.0);
  CHECK(r.by_length.points.back().cumulative_pct ==
        doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("frequency ties rank lexicographically") {
  CoverageAccumulator acc;
  acc.add_document("bb aa cc");
  CoverageReport r = acc.report();
  // All counts equal; each rank adds one third.
  REQUIRE(r.top_words.points.size() == 3);
  CHECK(r.top_words.points[0].cumulative_pct ==
        doctest::Approx(100.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("coverage accumulators merge to the single-pass answer") {
  std::vector<std::string> docs = {"the cat sat on the mat",
                                   "the dog sat on the log",
                                   "cats and dogs and 2024"};
  CoverageAccumulator whole;
  for (const std::string& d : docs) whole.add_document(d);

  CoverageAccumulator a, b;
  a.add_document(docs[0]);
  b.add_document(docs[1]);
  b.add_document(docs[2]);
  a.merge(b);

  CoverageReport rw = whole.report(), rm = a.report();
  for (auto [wc, mc] : {std::pair{&rw.by_length, &rm.by_length},
                        std::pair{&rw.top_words, &rm.top_words},
                        std::pair{&rw.top_trigrams, &rm.top_trigrams}}) {
    REQUIRE(wc->points.size() == mc->points.size());
    for (std::size_t i = 0; i < wc->points.size(); ++i) {
      CHECK(wc->points[i].key == mc->points[i].key);
      CHECK(wc->points[i].cumulative_pct == mc->points[i].cumulative_pct);
    }
  }
}

TEST_CASE("empty corpus reports empty curves") {
  CoverageAccumulator acc;
  CoverageReport r = acc.report();
  CHECK(r.by_length.points.empty());
  CHECK(r.top_words.points.empty());
  CHECK(r.top_trigrams.points.empty());
}
