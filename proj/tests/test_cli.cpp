// End-to-end tests of the tfree command line tool: each case shells out
// to the built binary and checks stdout, stderr and the exit code.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("tfree_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  REQUIRE(out.good());
  return p;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out_file = scratch_dir() / ("out_" + std::to_string(counter) + ".txt");
  fs::path err_file = scratch_dir() / ("err_" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(TFREE_CLI_PATH) + " " + args + " > " +
                    out_file.string() + " 2> " + err_file.string();
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

}  // namespace

TEST_CASE("pattern subcommand reproduces the frozen conformance vectors") {
  std::ifstream golden(std::string(TFREE_TEST_DATA_DIR) + "/golden_patterns.txt");
  REQUIRE(golden.good());
  std::string line;
  int checked = 0;
  while (std::getline(golden, line)) {
    std::size_t tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    std::string token = line.substr(0, tab);
    std::string indices = line.substr(tab + 1);
    CliResult r = run_cli("pattern '" + token + "' --v 8000 --m 10 --k 0");
    CAPTURE(token);
    CHECK(r.code == 0);
    CHECK(r.out == indices + "\n");
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("golden subcommand writes the conformance file byte-exactly") {
  fs::path out = scratch_dir() / "golden_out.txt";
  CliResult r = run_cli("golden --out " + out.string());
  CHECK(r.code == 0);
  CHECK(slurp(out) ==
        slurp(std::string(TFREE_TEST_DATA_DIR) + "/golden_patterns.txt"));
}

TEST_CASE("split subcommand dumps one tagged token per line") {
  fs::path doc = write_temp("split_doc.txt", "In 2024");
  CliResult r = run_cli("split " + doc.string());
  CHECK(r.code == 0);
  CHECK(r.out == "word\tIn\ndigit\t2\ndigit\t0\ndigit\t2\ndigit\t4\n");

  fs::path doc2 = write_temp("split_doc2.txt", "a\tb  c\n");
  CliResult r2 = run_cli("split " + doc2.string());
  CHECK(r2.code == 0);
  CHECK(r2.out ==
        "word\ta\n<ws>\t09\nword\tb\n<ws2>\nword\tc\n<ws>\t0a\n");
}

TEST_CASE("exit codes: 0 ok, 1 bad input or usage") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 1);                       // missing subcommand
  CHECK(run_cli("no-such-command").code == 1);
  CHECK(run_cli("pattern x --bogus-flag 1").code == 1);
  CHECK(run_cli("split /no/such/file").code == 1);
  CHECK(run_cli("pattern x --v 0").code == 1);        // invalid config
  CHECK(run_cli("pattern 'two words'").code == 1);    // not a single token

  CliResult r = run_cli("pattern x --v 0");
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("fertility subcommand reports the counts as JSON") {
  fs::path doc = write_temp("fert.txt", "In 2024");
  CliResult r = run_cli("fertility " + doc.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["documents"] == 1);
  CHECK(j["reference_words"] == 2);
  CHECK(j["tokens"] == 5);
  CHECK(j["fertility"] == 2.5);

  // External counts override the built-in splitter.
  fs::path counts = write_temp("fert_counts.jsonl", "7\n");
  CliResult r2 =
      run_cli("fertility " + doc.string() + " --counts " + counts.string());
  CHECK(r2.code == 0);
  json j2 = json::parse(r2.out);
  CHECK(j2["tokens"] == 7);
  CHECK(j2["fertility"] == 3.5);

  // JSONL corpora carry text (and optionally their own counts) inline.
  fs::path jl = write_temp("fert.jsonl",
                           "{\"text\": \"In 2024\"}\n"
                           "{\"text\": \"x y\", \"token_count\": 9}\n");
  CliResult r3 = run_cli("fertility " + jl.string());
  CHECK(r3.code == 0);
  json j3 = json::parse(r3.out);
  CHECK(j3["documents"] == 2);
  CHECK(j3["reference_words"] == 4);
  CHECK(j3["tokens"] == 14);
}

TEST_CASE("fertility of an empty corpus is null") {
  fs::path doc = write_temp("fert_empty.txt", "");
  CliResult r = run_cli("fertility " + doc.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["fertility"].is_null());
}

TEST_CASE("dupes subcommand audits a vocabulary file") {
  fs::path vocab = write_temp("vocab.txt", "Cat\ncat\ndog\n22\n_mark\n");
  CliResult r = run_cli("dupes " + vocab.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["vocab_size"] == 5);
  CHECK(j["capitalization_pct"] == 20.0);
  CHECK(j["digit_pct"] == 20.0);

  CliResult r2 = run_cli("dupes --codec");
  CHECK(r2.code == 0);
  json j2 = json::parse(r2.out);
  CHECK(j2["vocab_size"] == 0);
  CHECK(j2["total_pct"] == 0.0);

  CHECK(run_cli("dupes").code == 1);  // neither a file nor --codec
}

TEST_CASE("stats subcommand emits the three curves as CSV") {
  fs::path doc = write_temp("cov.txt", "aa aa aa");
  CliResult r = run_cli("stats " + doc.string());
  CHECK(r.code == 0);
  CHECK(r.out ==
        "curve,key,cumulative_pct\n"
        "by_length,2,100\n"
        "top_words,1,100\n"
        "top_trigrams,1,50\n"
        "top_trigrams,2,100\n");
}

TEST_CASE("analysis output is identical at any thread count") {
  std::string corpus;
  for (int i = 0; i < 211; ++i) {
    corpus += "word" + std::to_string(i % 17) + " line " +
              std::to_string(i) + "\n";
  }
  fs::path doc = write_temp("par.txt", corpus);
  CliResult f1 = run_cli("fertility " + doc.string() + " --threads 1");
  CliResult f4 = run_cli("fertility " + doc.string() + " --threads 4");
  CHECK(f1.code == 0);
  CHECK(f1.out == f4.out);
  CliResult s1 = run_cli("stats " + doc.string() + " --threads 1");
  CliResult s4 = run_cli("stats " + doc.string() + " --threads 4");
  CHECK(s1.code == 0);
  CHECK(s1.out == s4.out);
}

TEST_CASE("config file values yield to explicit flags") {
  fs::path cfg = write_temp("cfg.txt", "# defaults\nv=100\nm=4\n");
  CliResult r = run_cli("pattern ab --config " + cfg.string());
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::uint32_t idx = 0, count = 0, max_idx = 0;
  while (in >> idx) {
    max_idx = std::max(max_idx, idx);
    ++count;
  }
  CHECK(count <= 8);        // two windows, m=4
  CHECK(max_idx < 100);     // v from the config file

  CliResult r2 = run_cli("pattern ab --config " + cfg.string() + " --v 13");
  std::istringstream in2(r2.out);
  while (in2 >> idx) CHECK(idx < 13);  // flag beats file

  fs::path bad = write_temp("cfg_bad.txt", "vocab=9\n");
  CHECK(run_cli("pattern ab --config " + bad.string()).code == 1);
}

TEST_CASE("preset 3b sets seven hash rounds") {
  CliResult r = run_cli("pattern ab --preset 3b --v 100000");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::uint32_t idx = 0, count = 0;
  while (in >> idx) ++count;
  CHECK(count == 14);  // 2 windows x m=7, no collisions at v=100000
  CHECK(run_cli("pattern ab --preset 9z").code == 1);
}

TEST_CASE("compile-dict then decode round-trips through the cache") {
  fs::path words = write_temp("words.txt", "alpha\nbravo\ncharlie\n");
  fs::path cache = scratch_dir() / "dict.bin";
  CliResult r = run_cli("compile-dict " + words.string() + " --out " +
                        cache.string() + " --v 64 --m 3 --k 0");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["words"] == 3);
  CHECK(j["vocab_size"] == 64);

  std::string zeros;
  for (int i = 0; i < 64; ++i) zeros += "0 ";
  fs::path logits = write_temp("logits.txt", zeros);
  CliResult d = run_cli("decode --logits " + logits.string() + " --dict " +
                        cache.string() + " --top 2");
  CHECK(d.code == 0);
  json dj = json::parse(d.out);
  CHECK(dj["token"] == "alpha");  // all-zero logits tie-break to index 0
  CHECK(dj["index"] == 0);
  CHECK(dj["score"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(dj["top"].size() == 2);

  fs::path short_logits = write_temp("logits_short.txt", "0 0 0");
  CHECK(run_cli("decode --logits " + short_logits.string() + " --dict " +
                cache.string())
            .code == 1);
}

TEST_CASE("train-toy writes a checkpoint, a trace, and a JSON summary") {
  fs::path corpus = write_temp("train.txt", "aa bb cc dd aa bb cc dd");
  fs::path ckpt = scratch_dir() / "toy.bin";
  fs::path trace = scratch_dir() / "trace.csv";
  CliResult r = run_cli("train-toy " + corpus.string() +
                        " --v 32 --h 8 --m 2 --k 0 --steps 3 --lr 0.1 --seed 5 "
                        "--out " + ckpt.string() + " --trace " + trace.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["steps"] == 3);
  // The output layer starts at zero, so the first recorded loss is
  // exactly vocab_size * ln 2.
  CHECK(j["initial_loss"].get<double>() ==
        doctest::Approx(32 * std::log(2.0)).epsilon(1e-12));
  CHECK(fs::exists(ckpt));

  std::istringstream tr(slurp(trace));
  std::string line;
  std::getline(tr, line);
  CHECK(line == "step,loss");
  int rows = 0;
  while (std::getline(tr, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("generate echoes the prefix at zero steps and rejects mismatches") {
  fs::path corpus = write_temp("gen_train.txt", "aa bb cc dd aa bb cc dd");
  fs::path ckpt = scratch_dir() / "gen_toy.bin";
  CliResult t = run_cli("train-toy " + corpus.string() +
                        " --v 32 --h 8 --m 2 --k 0 --steps 1 --lr 0.1 --out " +
                        ckpt.string());
  REQUIRE(t.code == 0);
  fs::path words = write_temp("gen_words.txt", "aa\nbb\ncc\ndd\n");
  fs::path cache = scratch_dir() / "gen_dict.bin";
  REQUIRE(run_cli("compile-dict " + words.string() + " --out " + cache.string() +
                  " --v 32 --m 2 --k 0")
              .code == 0);
  CliResult g = run_cli("generate --checkpoint " + ckpt.string() + " --dict " +
                        cache.string() + " --prefix 'aa bb' --steps 0");
  CHECK(g.code == 0);
  CHECK(g.out == "aa bb\n");

  fs::path other = scratch_dir() / "gen_dict_other.bin";
  REQUIRE(run_cli("compile-dict " + words.string() + " --out " + other.string() +
                  " --v 48 --m 2 --k 0")
              .code == 0);
  CliResult bad = run_cli("generate --checkpoint " + ckpt.string() + " --dict " +
                          other.string() + " --prefix x --steps 1");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("different codec") != std::string::npos);
}

TEST_CASE("encode emits one CSV row per token and a raw binary variant") {
  fs::path doc = write_temp("enc.txt", "Hello world");
  CliResult r = run_cli("encode " + doc.string() +
                        " --v 64 --m 2 --k 0 --h 4 --seed 3");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);  // 4 columns
    ++rows;
  }
  CHECK(rows == 2);  // Hello, world (the space stays implicit)

  fs::path ckpt = scratch_dir() / "enc_emb.bin";
  fs::path bin = scratch_dir() / "enc_out.bin";
  CliResult r2 = run_cli("encode " + doc.string() +
                         " --v 64 --m 2 --k 0 --h 4 --seed 3 --save-checkpoint " +
                         ckpt.string() + " --format binary --out " + bin.string());
  CHECK(r2.code == 0);
  CHECK(fs::file_size(bin) == 2 * 4 * 4);  // tokens x width x f32

  fs::path bin3 = scratch_dir() / "enc_out3.bin";
  fs::path bin4 = scratch_dir() / "enc_out4.bin";
  CliResult r3 = run_cli("encode " + doc.string() + " --checkpoint " +
                         ckpt.string() + " --format binary --out " + bin3.string());
  CHECK(r3.code == 0);
  CliResult r4 = run_cli("encode " + doc.string() + " --checkpoint " +
                         ckpt.string() + " --format binary --out " + bin4.string());
  CHECK(r4.code == 0);
  CHECK(slurp(bin3) == slurp(bin4));
}

TEST_CASE("identical invocations produce byte-identical output") {
  fs::path doc = write_temp("det.txt", "Some tokens to split and count 123\n");
  CliResult a = run_cli("stats " + doc.string());
  CliResult b = run_cli("stats " + doc.string());
  CHECK(a.out == b.out);
  CliResult c = run_cli("fertility " + doc.string());
  CliResult d = run_cli("fertility " + doc.string());
  CHECK(c.out == d.out);
}
