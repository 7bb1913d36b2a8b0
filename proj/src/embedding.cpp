#include "tfree/embedding.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "tfree/splitter.hpp"

#include "binary_io.hpp"

namespace tfree {

namespace {
constexpr char kMagic[9] = "TFREEMB1";
}

std::vector<double> encode_pattern(const SparsePattern& p, const EmbeddingMatrix& E) {
  std::vector<double> out(E.hidden, 0.0);
  for (std::uint32_t idx : p.indices) {
    if (idx >= E.rows.rows) {
      throw InputError("encode: pattern index " + std::to_string(idx) +
                       " out of range for vocab of " + std::to_string(E.rows.rows));
    }
    const double* row = E.rows.row(idx);
    for (std::size_t c = 0; c < E.hidden; ++c) out[c] += row[c];
  }
  return out;
}

std::vector<double> encode_token(const Token& token, const EmbeddingMatrix& E) {
  return encode_pattern(pattern(token, E.cfg), E);
}

std::vector<std::vector<double>> encode_text(std::string_view text,
                                             const EmbeddingMatrix& E,
                                             const SplitConfig& split_cfg) {
  std::vector<std::vector<double>> out;
  TrigramIndexer indexer(E.cfg);
  for (const Token& tok : split(text, split_cfg)) {
    out.push_back(encode_pattern(indexer.pattern(tok), E));
  }
  return out;
}

void init_embedding(EmbeddingMatrix& E, std::uint64_t seed) {
  double stddev =
      1.0 / std::sqrt(static_cast<double>(E.cfg.hashes_per_trigram) * 5.0 *
                      static_cast<double>(E.hidden));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, stddev);
  for (double& x : E.rows.data) x = dist(rng);
}

void save_embedding(const EmbeddingMatrix& E, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  bin::write_magic(out, kMagic);
  bin::write_u32(out, E.cfg.vocab_size);
  bin::write_u32(out, static_cast<std::uint32_t>(E.hidden));
  bin::write_u32(out, E.cfg.hashes_per_trigram);
  bin::write_u32(out, E.cfg.lowercase_hashes);
  bin::write_string(out, E.cfg.hash_name);
  for (double x : E.rows.data) bin::write_f32(out, static_cast<float>(x));
  if (!out) throw InputError("write failed: " + path);
}

EmbeddingMatrix load_embedding(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  bin::expect_magic(in, kMagic, path);
  TFreeConfig cfg;
  cfg.vocab_size = bin::read_u32(in);
  std::uint32_t hidden = bin::read_u32(in);
  cfg.hashes_per_trigram = bin::read_u32(in);
  cfg.lowercase_hashes = bin::read_u32(in);
  cfg.hash_name = bin::read_string(in);
  EmbeddingMatrix E(cfg, hidden);
  for (double& x : E.rows.data) x = bin::read_f32(in);
  return E;
}

}  // namespace tfree
