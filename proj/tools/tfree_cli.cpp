// tfree — command line frontend for the hashed-trigram text codec.
//
// Subcommands cover the full pipeline: splitting text into tokens,
// hashing tokens to sparse activation patterns, dense encoding through
// an embedding table, dictionary compilation and next-word decoding,
// corpus diagnostics (fertility, duplicate audit, coverage curves), and
// training/sampling the small reference model.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 internal error.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfree/analysis.hpp"
#include "tfree/config.hpp"
#include "tfree/embedding.hpp"
#include "tfree/errors.hpp"
#include "tfree/head.hpp"
#include "tfree/objective.hpp"
#include "tfree/splitter.hpp"
#include "tfree/token.hpp"
#include "tfree/trigram.hpp"

namespace {

using nlohmann::json;

// --- I/O helpers -----------------------------------------------------------

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tfree::InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, std::string_view data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tfree::InputError("cannot open output file: " + path);
  out << data;
  if (!out) throw tfree::InputError("write failed: " + path);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string hex_bytes(std::string_view s) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(s.size() * 2);
  for (unsigned char c : s) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

// --- Codec hyperparameter resolution ---------------------------------------

// Shared --v/--m/--k/--preset/--config flags. Precedence is
// flags > config file > built-in defaults; a preset is expanded at its
// own level before any explicit key of the same level overrides it.
struct CodecOpts {
  std::uint32_t v = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::string preset;
  std::string config_path;
  CLI::Option* ov = nullptr;
  CLI::Option* om = nullptr;
  CLI::Option* ok = nullptr;
  CLI::Option* opreset = nullptr;
  CLI::Option* oconfig = nullptr;
};

void add_codec_flags(CLI::App* sub, CodecOpts& o) {
  o.ov = sub->add_option("--v", o.v, "vocabulary size (pattern index range)");
  o.om = sub->add_option("--m", o.m, "hash rounds per trigram");
  o.ok = sub->add_option("--k", o.k, "rounds hashed on the lowercased trigram");
  o.opreset = sub->add_option("--preset", o.preset,
                              "named hyperparameters (3b: m=7, k=3)");
  o.oconfig = sub->add_option("--config", o.config_path,
                              "key=value file with v/m/k/preset defaults");
}

std::uint32_t parse_u32(const std::string& value, const std::string& what) {
  std::size_t pos = 0;
  unsigned long parsed = 0;
  try {
    parsed = std::stoul(value, &pos);
  } catch (const std::exception&) {
    throw tfree::InputError(what + ": not a number: '" + value + "'");
  }
  if (pos != value.size() || parsed > 0xFFFFFFFFul) {
    throw tfree::InputError(what + ": not a 32-bit number: '" + value + "'");
  }
  return static_cast<std::uint32_t>(parsed);
}

void apply_preset(tfree::TFreeConfig& cfg, const std::string& name) {
  if (name == "3b") {
    cfg.hashes_per_trigram = 7;
    cfg.lowercase_hashes = 3;
    return;
  }
  throw tfree::InputError("unknown preset: '" + name + "'");
}

void apply_config_file(tfree::TFreeConfig& cfg, const std::string& path) {
  std::optional<std::string> preset;
  std::optional<std::uint32_t> v, m, k;
  for (const std::string& raw : split_lines(read_file(path))) {
    std::string_view line = raw;
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw tfree::InputError("config file " + path + ": expected key=value, got '" +
                              std::string(line) + "'");
    }
    std::string key(line.substr(0, eq));
    std::string value(line.substr(eq + 1));
    if (key == "preset") {
      preset = value;
    } else if (key == "v") {
      v = parse_u32(value, "config file " + path + ", key v");
    } else if (key == "m") {
      m = parse_u32(value, "config file " + path + ", key m");
    } else if (key == "k") {
      k = parse_u32(value, "config file " + path + ", key k");
    } else {
      throw tfree::InputError("config file " + path + ": unknown key '" + key + "'");
    }
  }
  if (preset) apply_preset(cfg, *preset);
  if (v) cfg.vocab_size = *v;
  if (m) cfg.hashes_per_trigram = *m;
  if (k) cfg.lowercase_hashes = *k;
}

tfree::TFreeConfig resolve_codec(const CodecOpts& o) {
  tfree::TFreeConfig cfg;  // defaults: v=8000, m=10, k=0
  if (o.oconfig->count() > 0) apply_config_file(cfg, o.config_path);
  if (o.opreset->count() > 0) apply_preset(cfg, o.preset);
  if (o.ov->count() > 0) cfg.vocab_size = o.v;
  if (o.om->count() > 0) cfg.hashes_per_trigram = o.m;
  if (o.ok->count() > 0) cfg.lowercase_hashes = o.k;
  cfg.validate();
  return cfg;
}

// --- Corpus ingestion ------------------------------------------------------

// One document per input line. A path ending in .jsonl is parsed as one
// JSON object per line with a required "text" field and an optional
// "token_count" override; anything else is plaintext.
struct Document {
  std::string text;
  bool has_count = false;
  std::uint64_t count = 0;
};

std::vector<Document> read_documents(const std::string& path) {
  std::vector<Document> docs;
  std::vector<std::string> lines = split_lines(read_file(path));
  const bool jsonl = path.size() >= 6 && path.ends_with(".jsonl");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!jsonl) {
      docs.push_back({lines[i], false, 0});
      continue;
    }
    if (lines[i].empty()) continue;
    json rec;
    try {
      rec = json::parse(lines[i]);
    } catch (const json::exception& e) {
      throw tfree::InputError(path + " line " + std::to_string(i + 1) +
                              ": invalid JSON: " + e.what());
    }
    if (!rec.is_object() || !rec.contains("text") || !rec["text"].is_string()) {
      throw tfree::InputError(path + " line " + std::to_string(i + 1) +
                              ": expected an object with a \"text\" string");
    }
    Document d;
    d.text = rec["text"].get<std::string>();
    if (rec.contains("token_count")) {
      if (!rec["token_count"].is_number_unsigned()) {
        throw tfree::InputError(path + " line " + std::to_string(i + 1) +
                                ": \"token_count\" must be a non-negative integer");
      }
      d.has_count = true;
      d.count = rec["token_count"].get<std::uint64_t>();
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

// External token counts, one JSON value per line (a bare number or an
// object with "token_count"), aligned with the corpus documents.
void apply_counts_file(std::vector<Document>& docs, const std::string& path) {
  std::vector<std::uint64_t> counts;
  std::vector<std::string> lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    json rec;
    try {
      rec = json::parse(lines[i]);
    } catch (const json::exception& e) {
      throw tfree::InputError(path + " line " + std::to_string(i + 1) +
                              ": invalid JSON: " + e.what());
    }
    if (rec.is_number_unsigned()) {
      counts.push_back(rec.get<std::uint64_t>());
    } else if (rec.is_object() && rec.contains("token_count") &&
               rec["token_count"].is_number_unsigned()) {
      counts.push_back(rec["token_count"].get<std::uint64_t>());
    } else {
      throw tfree::InputError(path + " line " + std::to_string(i + 1) +
                              ": expected a count or {\"token_count\": n}");
    }
  }
  if (counts.size() != docs.size()) {
    throw tfree::InputError("counts file " + path + " has " +
                            std::to_string(counts.size()) + " entries for " +
                            std::to_string(docs.size()) + " documents");
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs[i].has_count = true;
    docs[i].count = counts[i];
  }
}

unsigned resolve_threads(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Feeds a contiguous slice of documents to a per-worker accumulator and
// merges the partials in worker order. Merge commutativity makes the
// result identical to a single pass at any thread count.
template <typename Acc, typename Feed>
Acc accumulate_parallel(const std::vector<Document>& docs, unsigned threads,
                        Acc base, const Feed& feed) {
  if (threads > docs.size()) threads = static_cast<unsigned>(docs.size());
  if (threads <= 1) {
    for (const Document& d : docs) feed(base, d);
    return base;
  }
  std::vector<Acc> parts(threads, base);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        std::size_t begin = docs.size() * t / threads;
        std::size_t end = docs.size() * (t + 1) / threads;
        for (std::size_t i = begin; i < end; ++i) feed(parts[t], docs[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (unsigned t = 1; t < threads; ++t) parts[0].merge(parts[t]);
  return parts[0];
}

// --- Subcommands -----------------------------------------------------------

struct SplitCmd {
  std::string file;
};

void run_split(const SplitCmd& c) {
  std::vector<tfree::Token> tokens = tfree::split(read_file(c.file));
  std::string out;
  for (const tfree::Token& tok : tokens) {
    out += tfree::token_tag(tok);
    if (tok.is_content()) {
      out += '\t';
      out += tok.text;
    } else if (!tok.text.empty() && tok.text != " ") {
      out += '\t';
      out += hex_bytes(tok.text);
    }
    out += '\n';
  }
  std::cout << out;
}

struct PatternCmd {
  std::string token;
  CodecOpts codec;
};

bool is_tag_text(std::string_view s) {
  return s.size() >= 3 && s.front() == '<' && s.back() == '>';
}

void run_pattern(const PatternCmd& c) {
  tfree::TFreeConfig cfg = resolve_codec(c.codec);
  tfree::SparsePattern p;
  if (is_tag_text(c.token)) {
    p = tfree::text_pattern(c.token, cfg);
  } else {
    p = tfree::pattern(tfree::token_from_text(c.token), cfg);
  }
  std::string out;
  for (std::size_t i = 0; i < p.indices.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(p.indices[i]);
  }
  out += '\n';
  std::cout << out;
}

struct EncodeCmd {
  std::string file;
  std::string checkpoint;
  std::string save_checkpoint;
  std::string format = "csv";
  std::string out;
  std::uint32_t hidden = 64;
  std::uint64_t seed = 1;
  CodecOpts codec;
};

void run_encode(const EncodeCmd& c) {
  tfree::EmbeddingMatrix E;
  if (!c.checkpoint.empty()) {
    E = tfree::load_embedding(c.checkpoint);
  } else {
    E = tfree::EmbeddingMatrix(resolve_codec(c.codec), c.hidden);
    tfree::init_embedding(E, c.seed);
  }
  if (!c.save_checkpoint.empty()) tfree::save_embedding(E, c.save_checkpoint);

  std::vector<std::vector<double>> vecs =
      tfree::encode_text(read_file(c.file), E);
  std::string out;
  if (c.format == "binary") {
    for (const std::vector<double>& v : vecs) {
      for (double x : v) {
        float f = static_cast<float>(x);
        char bytes[4];
        std::memcpy(bytes, &f, 4);
        out.append(bytes, 4);
      }
    }
  } else {
    for (const std::vector<double>& v : vecs) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += fmt_double(v[i]);
      }
      out += '\n';
    }
  }
  write_output(c.out, out);
}

struct CompileDictCmd {
  std::string wordlist;
  std::string out;
  CodecOpts codec;
};

void run_compile_dict(const CompileDictCmd& c) {
  tfree::TFreeConfig cfg = resolve_codec(c.codec);
  std::vector<std::string> words = tfree::load_wordlist(c.wordlist);
  tfree::Dictionary dict = tfree::compile_dictionary(words, cfg);
  tfree::save_dictionary(dict, c.out);
  json j;
  j["words"] = dict.size();
  j["vocab_size"] = dict.cfg.vocab_size;
  j["total_indices"] = dict.indices.size();
  std::cout << j.dump() << "\n";
}

struct DecodeCmd {
  std::string logits;
  std::string dict;
  std::size_t top = 0;
};

void run_decode(const DecodeCmd& c) {
  tfree::Dictionary dict = tfree::load_dictionary(c.dict);
  std::string text = read_file(c.logits);
  std::istringstream in(text);
  std::vector<double> logits;
  double x = 0.0;
  while (in >> x) logits.push_back(x);
  if (!in.eof()) {
    in.clear();
    std::string junk;
    in >> junk;
    throw tfree::InputError("logits file " + c.logits + ": not a number: '" +
                            junk + "'");
  }
  if (logits.size() != dict.cfg.vocab_size) {
    throw tfree::InputError("logits file " + c.logits + " has " +
                            std::to_string(logits.size()) + " values; dictionary expects " +
                            std::to_string(dict.cfg.vocab_size));
  }
  tfree::DecodeResult res = tfree::decode(logits, dict, c.top);
  json j;
  j["token"] = res.token;
  j["index"] = res.index;
  j["score"] = res.score;
  if (c.top > 0) {
    json arr = json::array();
    for (const auto& [tok, score] : res.rank_scores) {
      arr.push_back({{"token", tok}, {"score", score}});
    }
    j["top"] = arr;
  }
  std::cout << j.dump() << "\n";
}

struct FertilityCmd {
  std::string corpus;
  std::string counts;
  int threads = 0;
};

void run_fertility(const FertilityCmd& c) {
  std::vector<Document> docs = read_documents(c.corpus);
  if (!c.counts.empty()) apply_counts_file(docs, c.counts);
  tfree::FertilityAccumulator acc = accumulate_parallel(
      docs, resolve_threads(c.threads), tfree::FertilityAccumulator(),
      [](tfree::FertilityAccumulator& a, const Document& d) {
        if (d.has_count) {
          a.add_document_with_count(d.text, d.count);
        } else {
          a.add_document(d.text);
        }
      });
  tfree::FertilityReport rep = acc.report();
  json j;
  j["documents"] = rep.documents;
  j["reference_words"] = rep.reference_words;
  j["tokens"] = rep.tokens;
  j["fertility"] = rep.defined() ? json(rep.fertility) : json(nullptr);
  std::cout << j.dump() << "\n";
}

struct DupesCmd {
  std::string vocabfile;
  std::string ws_marker = "\xE2\x96\x81";  // U+2581, the usual metaspace
  bool codec = false;
};

void run_dupes(const DupesCmd& c) {
  tfree::DuplicateReport rep;
  if (c.codec) {
    rep = tfree::codec_duplicates();
  } else {
    if (c.vocabfile.empty()) {
      throw tfree::InputError("dupes: give a vocabulary file or --codec");
    }
    std::vector<std::string> vocab = tfree::load_wordlist(c.vocabfile);
    rep = tfree::duplicates(vocab, c.ws_marker);
  }
  json j;
  j["vocab_size"] = rep.vocab_size;
  j["capitalization_pct"] = rep.capitalization_pct;
  j["whitespace_pct"] = rep.whitespace_pct;
  j["digit_pct"] = rep.digit_pct;
  j["total_pct"] = rep.total_pct;
  std::cout << j.dump() << "\n";
}

struct StatsCmd {
  std::string corpus;
  std::string out;
  std::size_t top = 10000;
  int threads = 0;
};

void append_curve(std::string& out, const char* name,
                  const tfree::CoverageCurve& curve) {
  for (const tfree::CoveragePoint& p : curve.points) {
    out += name;
    out += ',';
    out += std::to_string(p.key);
    out += ',';
    out += fmt_double(p.cumulative_pct);
    out += '\n';
  }
}

void run_stats(const StatsCmd& c) {
  std::vector<Document> docs = read_documents(c.corpus);
  tfree::CoverageAccumulator acc = accumulate_parallel(
      docs, resolve_threads(c.threads), tfree::CoverageAccumulator(),
      [](tfree::CoverageAccumulator& a, const Document& d) {
        a.add_document(d.text);
      });
  tfree::CoverageReport rep = acc.report(c.top);
  std::string out = "curve,key,cumulative_pct\n";
  append_curve(out, "by_length", rep.by_length);
  append_curve(out, "top_words", rep.top_words);
  append_curve(out, "top_trigrams", rep.top_trigrams);
  write_output(c.out, out);
}

struct TrainToyCmd {
  std::string corpus;
  std::string out;
  std::string trace;
  std::uint32_t hidden = 64;
  std::size_t steps = 2000;
  std::size_t context = 2;
  double lr = 0.3;
  std::uint64_t seed = 1;
  CodecOpts codec;
};

void run_train_toy(const TrainToyCmd& c) {
  tfree::TFreeConfig cfg = resolve_codec(c.codec);
  tfree::TrainHyper hyper;
  hyper.lr = c.lr;
  hyper.steps = c.steps;
  hyper.context_window = c.context;
  hyper.hidden = c.hidden;
  hyper.seed = c.seed;
  std::string text = read_file(c.corpus);
  tfree::TrainResult result = tfree::toy_train(text, cfg, hyper);
  tfree::save_toy_model(result.model, c.out);
  if (!c.trace.empty()) {
    std::string csv = "step,loss\n";
    for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
      csv += std::to_string(i);
      csv += ',';
      csv += fmt_double(result.loss_trace[i]);
      csv += '\n';
    }
    write_output(c.trace, csv);
  }
  tfree::LossValue final_loss =
      tfree::sequence_loss(result.model, tfree::split(text));
  json j;
  j["steps"] = result.loss_trace.size();
  j["initial_loss"] =
      result.loss_trace.empty() ? json(nullptr) : json(result.loss_trace.front());
  j["final_loss"] =
      result.loss_trace.empty() ? json(nullptr) : json(result.loss_trace.back());
  j["mean_sequence_loss"] = final_loss.mean();
  std::cout << j.dump() << "\n";
}

struct GenerateCmd {
  std::string checkpoint;
  std::string dict;
  std::string prefix;
  std::size_t steps = 8;
};

void run_generate(const GenerateCmd& c) {
  tfree::ToyModel model = tfree::load_toy_model(c.checkpoint);
  tfree::Dictionary dict = tfree::load_dictionary(c.dict);
  if (!(model.embedding.cfg == dict.cfg)) {
    throw tfree::InputError(
        "checkpoint and dictionary were built with different codec "
        "hyperparameters");
  }
  tfree::LogitFn fn = [&model](std::span<const tfree::Token> ctx) {
    return tfree::toy_forward(model, ctx);
  };
  std::cout << tfree::greedy_generate(c.prefix, fn, dict, c.steps) << "\n";
}

struct GoldenCmd {
  std::string out;
};

void run_golden(const GoldenCmd& c) {
  tfree::TFreeConfig cfg;  // conformance vectors use v=8000, m=10, k=0
  tfree::TrigramIndexer indexer(cfg);
  std::string out;
  for (const std::string& tok : tfree::golden_tokens()) {
    tfree::SparsePattern p = indexer.text_pattern(tok);
    out += tok;
    out += '\t';
    for (std::size_t i = 0; i < p.indices.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(p.indices[i]);
    }
    out += '\n';
  }
  write_output(c.out, out);
}

// --- Registration ----------------------------------------------------------

// "--h" is a real option (hidden width), so help is reachable through
// "--help" only, on the main command and every subcommand alike.
CLI::App* add_sub(CLI::App& app, const std::string& name,
                  const std::string& desc) {
  CLI::App* sub = app.add_subcommand(name, desc);
  sub->set_help_flag("--help", "print this help message and exit");
  return sub;
}

void register_commands(CLI::App& app) {
  {
    auto c = std::make_shared<SplitCmd>();
    CLI::App* sub = add_sub(app,
        "split", "Split a text file into tokens, one per line ('-' = stdin)");
    sub->add_option("file", c->file, "input text file")->required();
    sub->callback([c] { run_split(*c); });
  }
  {
    auto c = std::make_shared<PatternCmd>();
    CLI::App* sub = add_sub(app,
        "pattern", "Print the sparse activation pattern of one token");
    sub->add_option("token", c->token, "token text or control tag like <ws>")
        ->required();
    add_codec_flags(sub, c->codec);
    sub->callback([c] { run_pattern(*c); });
  }
  {
    auto c = std::make_shared<EncodeCmd>();
    CLI::App* sub = add_sub(app,
        "encode", "Embed each token of a text file as a dense vector");
    sub->add_option("file", c->file, "input text file")->required();
    sub->add_option("--checkpoint", c->checkpoint,
                    "embedding checkpoint to load (omits --v/--m/--k/--h/--seed)");
    sub->add_option("--save-checkpoint", c->save_checkpoint,
                    "write the (possibly fresh) embedding table here");
    sub->add_option("--format", c->format, "csv (default) or binary")
        ->check(CLI::IsMember({"csv", "binary"}));
    sub->add_option("--out", c->out, "output file (default: stdout)");
    sub->add_option("--h", c->hidden, "embedding width for a fresh table");
    sub->add_option("--seed", c->seed, "seed for a fresh table");
    add_codec_flags(sub, c->codec);
    sub->callback([c] { run_encode(*c); });
  }
  {
    auto c = std::make_shared<CompileDictCmd>();
    CLI::App* sub = add_sub(app,
        "compile-dict", "Compile a wordlist into a decoding dictionary cache");
    sub->add_option("wordlist", c->wordlist, "one word per line, # comments")
        ->required();
    sub->add_option("--out", c->out, "dictionary cache file")->required();
    add_codec_flags(sub, c->codec);
    sub->callback([c] { run_compile_dict(*c); });
  }
  {
    auto c = std::make_shared<DecodeCmd>();
    CLI::App* sub = add_sub(app,
        "decode", "Decode one logit vector to the best dictionary word");
    sub->add_option("--logits", c->logits,
                    "file of whitespace-separated logits ('-' = stdin)")
        ->required();
    sub->add_option("--dict", c->dict, "dictionary cache from compile-dict")
        ->required();
    sub->add_option("--top", c->top, "also report the top-r candidates");
    sub->callback([c] { run_decode(*c); });
  }
  {
    auto c = std::make_shared<FertilityCmd>();
    CLI::App* sub = add_sub(app,
        "fertility", "Tokens per reference word over a corpus (one document per line)");
    sub->add_option("corpus", c->corpus, "plaintext or .jsonl corpus")->required();
    sub->add_option("--counts", c->counts,
                    "JSONL file of external token counts, one per document");
    sub->add_option("--threads", c->threads,
                    "worker threads (default: available parallelism)")
        ->envname("TFREE_THREADS");
    sub->callback([c] { run_fertility(*c); });
  }
  {
    auto c = std::make_shared<DupesCmd>();
    CLI::App* sub = add_sub(app,
        "dupes", "Audit a tokenizer vocabulary for duplicate entries");
    sub->add_option("vocabfile", c->vocabfile, "one vocabulary entry per line");
    sub->add_option("--ws-marker", c->ws_marker,
                    "leading-whitespace marker used by the vocabulary");
    sub->add_flag("--codec", c->codec,
                  "report the vocabulary-free codec instead (all zeros)");
    sub->callback([c] { run_dupes(*c); });
  }
  {
    auto c = std::make_shared<StatsCmd>();
    CLI::App* sub = add_sub(app,
        "stats",
        "Corpus coverage curves as CSV (columns: curve,key,cumulative_pct)");
    sub->add_option("corpus", c->corpus, "plaintext or .jsonl corpus")->required();
    sub->add_option("--out", c->out, "output file (default: stdout)");
    sub->add_option("--top", c->top,
                    "rank cap for the frequency curves (0 = uncapped)");
    sub->add_option("--threads", c->threads,
                    "worker threads (default: available parallelism)")
        ->envname("TFREE_THREADS");
    sub->callback([c] { run_stats(*c); });
  }
  {
    auto c = std::make_shared<TrainToyCmd>();
    CLI::App* sub = add_sub(app,
        "train-toy", "Train the small reference model on a text file");
    sub->add_option("corpus", c->corpus, "training text")->required();
    sub->add_option("--out", c->out, "model checkpoint to write")->required();
    sub->add_option("--trace", c->trace, "per-step loss CSV to write");
    sub->add_option("--h", c->hidden, "hidden width");
    sub->add_option("--steps", c->steps, "gradient steps");
    sub->add_option("--context", c->context, "context window in tokens");
    sub->add_option("--lr", c->lr, "learning rate (0 = no updates)");
    sub->add_option("--seed", c->seed, "parameter init seed");
    add_codec_flags(sub, c->codec);
    sub->callback([c] { run_train_toy(*c); });
  }
  {
    auto c = std::make_shared<GenerateCmd>();
    CLI::App* sub = add_sub(app,
        "generate", "Greedy next-word generation from a trained checkpoint");
    sub->add_option("--checkpoint", c->checkpoint, "model checkpoint")->required();
    sub->add_option("--dict", c->dict, "dictionary cache")->required();
    sub->add_option("--prefix", c->prefix, "prompt text")->required();
    sub->add_option("--steps", c->steps, "maximum words to generate");
    sub->callback([c] { run_generate(*c); });
  }
  {
    auto c = std::make_shared<GoldenCmd>();
    CLI::App* sub = add_sub(app,
        "golden", "Write the frozen conformance pattern vectors");
    sub->add_option("--out", c->out, "output file (default: stdout)");
    sub->callback([c] { run_golden(*c); });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tfree — hashed-trigram text codec tools"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  register_commands(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run '" << (argc > 0 ? argv[0] : "tfree")
              << " --help' for usage\n";
    return 1;
  } catch (const tfree::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
