#include "tfree/objective.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "tfree/numerics.hpp"
#include "tfree/splitter.hpp"

#include "binary_io.hpp"

namespace tfree {

namespace {

constexpr char kMagic[9] = "TFRETOY1";

void check_loss_inputs(std::span<const double> logits, const SparsePattern& target) {
  for (double z : logits) {
    if (!std::isfinite(z)) throw InputError("loss: non-finite logit");
  }
  if (!target.indices.empty() && target.indices.back() >= logits.size()) {
    throw InputError("loss: target index " + std::to_string(target.indices.back()) +
                     " out of range for " + std::to_string(logits.size()) + " logits");
  }
}

struct ForwardPass {
  std::vector<double> x;       // mean context embedding
  std::vector<double> a;       // tanh layer activations
  std::vector<double> logits;  // one per vocabulary index
  std::size_t c_used = 0;
};

void check_shapes(const ToyModel& model) {
  const std::size_t h = model.embedding.hidden;
  const std::size_t v = model.embedding.cfg.vocab_size;
  if (model.hidden.rows != h || model.hidden.cols != h || model.head.rows != h ||
      model.head.cols != v) {
    throw InputError("toy model: inconsistent parameter shapes");
  }
  if (model.context_window < 1) {
    throw InputError("toy model: context window must be >= 1");
  }
}

ForwardPass run_forward(const ToyModel& model,
                        std::span<const SparsePattern> ctx) {
  check_shapes(model);
  if (ctx.empty()) throw InputError("toy model: empty context");
  const std::size_t h = model.embedding.hidden;
  const std::size_t v = model.embedding.cfg.vocab_size;

  ForwardPass f;
  f.c_used = std::min(model.context_window, ctx.size());
  f.x.assign(h, 0.0);
  for (std::size_t t = ctx.size() - f.c_used; t < ctx.size(); ++t) {
    for (std::uint32_t idx : ctx[t].indices) {
      if (idx >= v) throw InputError("toy model: pattern index out of range");
      const double* row = model.embedding.rows.row(idx);
      for (std::size_t c = 0; c < h; ++c) f.x[c] += row[c];
    }
  }
  for (double& xc : f.x) xc /= static_cast<double>(f.c_used);

  f.a.assign(h, 0.0);
  for (std::size_t r = 0; r < h; ++r) {
    const double* w = model.hidden.row(r);
    double pre = 0.0;
    for (std::size_t c = 0; c < h; ++c) pre += w[c] * f.x[c];
    f.a[r] = std::tanh(pre);
  }

  f.logits.assign(v, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    const double ai = f.a[i];
    const double* hr = model.head.row(i);
    for (std::size_t jj = 0; jj < v; ++jj) f.logits[jj] += ai * hr[jj];
  }
  return f;
}

std::vector<SparsePattern> window_patterns(const ToyModel& model,
                                           std::span<const Token> context) {
  if (context.empty()) throw InputError("toy model: empty context");
  std::size_t c_used = std::min(model.context_window, context.size());
  std::vector<SparsePattern> ps;
  ps.reserve(c_used);
  for (std::size_t t = context.size() - c_used; t < context.size(); ++t) {
    ps.push_back(pattern(context[t], model.embedding.cfg));
  }
  return ps;
}

}  // namespace

double ml_bce(std::span<const double> logits, const SparsePattern& target) {
  check_loss_inputs(logits, target);
  double loss = 0.0;
  for (double z : logits) {
    loss += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  }
  for (std::uint32_t j : target.indices) loss -= logits[j];
  return loss;
}

std::vector<double> ml_bce_grad(std::span<const double> logits,
                                const SparsePattern& target) {
  check_loss_inputs(logits, target);
  std::vector<double> g(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) g[j] = sigmoid(logits[j]);
  for (std::uint32_t j : target.indices) g[j] -= 1.0;
  return g;
}

std::vector<double> toy_forward(const ToyModel& model,
                                std::span<const SparsePattern> context_patterns) {
  return run_forward(model, context_patterns).logits;
}

std::vector<double> toy_forward(const ToyModel& model,
                                std::span<const Token> context) {
  std::vector<SparsePattern> ps = window_patterns(model, context);
  return toy_forward(model, std::span<const SparsePattern>(ps));
}

ToyGradients toy_gradients(const ToyModel& model,
                           std::span<const SparsePattern> context_patterns,
                           const SparsePattern& target, double* loss_out) {
  ForwardPass f = run_forward(model, context_patterns);
  if (loss_out) *loss_out = ml_bce(f.logits, target);
  std::vector<double> g = ml_bce_grad(f.logits, target);

  const std::size_t h = model.embedding.hidden;
  const std::size_t v = model.embedding.cfg.vocab_size;
  ToyGradients grads;
  grads.embedding = Matrix(v, h);
  grads.hidden = Matrix(h, h);
  grads.head = Matrix(h, v);

  // head: d logits[j] / d head[i][j] = a[i]
  std::vector<double> dpre(h);
  for (std::size_t i = 0; i < h; ++i) {
    double* gh = grads.head.row(i);
    const double* hr = model.head.row(i);
    double da = 0.0;
    for (std::size_t jj = 0; jj < v; ++jj) {
      gh[jj] = f.a[i] * g[jj];
      da += hr[jj] * g[jj];
    }
    dpre[i] = da * (1.0 - f.a[i] * f.a[i]);  // through tanh
  }

  // hidden: pre = hidden * x
  std::vector<double> dx(h, 0.0);
  for (std::size_t r = 0; r < h; ++r) {
    double* gw = grads.hidden.row(r);
    const double* w = model.hidden.row(r);
    for (std::size_t c = 0; c < h; ++c) {
      gw[c] = dpre[r] * f.x[c];
      dx[c] += dpre[r] * w[c];
    }
  }

  // embedding: x is the mean over the window of summed pattern rows
  const double scale = 1.0 / static_cast<double>(f.c_used);
  for (std::size_t t = context_patterns.size() - f.c_used;
       t < context_patterns.size(); ++t) {
    for (std::uint32_t idx : context_patterns[t].indices) {
      double* ge = grads.embedding.row(idx);
      for (std::size_t c = 0; c < h; ++c) ge[c] += dx[c] * scale;
    }
  }
  return grads;
}

ToyGradients toy_gradients(const ToyModel& model, std::span<const Token> context,
                           const SparsePattern& target, double* loss_out) {
  std::vector<SparsePattern> ps = window_patterns(model, context);
  return toy_gradients(model, std::span<const SparsePattern>(ps), target, loss_out);
}

TrainResult toy_train(std::string_view corpus, const TFreeConfig& cfg,
                      const TrainHyper& hyper, const SplitConfig& split_cfg) {
  cfg.validate();
  if (hyper.context_window < 1) {
    throw InputError("training: context window must be >= 1");
  }
  if (hyper.hidden < 1) throw InputError("training: hidden size must be >= 1");

  std::vector<Token> tokens = split(corpus, split_cfg);
  if (tokens.size() < hyper.context_window + 1) {
    throw InputError("training corpus too short: " + std::to_string(tokens.size()) +
                     " tokens for context window " +
                     std::to_string(hyper.context_window));
  }
  TrigramIndexer indexer(cfg);
  std::vector<SparsePattern> patterns;
  patterns.reserve(tokens.size());
  for (const Token& tok : tokens) patterns.push_back(indexer.pattern(tok));

  TrainResult result;
  result.model.embedding = EmbeddingMatrix(cfg, hyper.hidden);
  init_embedding(result.model.embedding, hyper.seed);
  result.model.hidden = Matrix(hyper.hidden, hyper.hidden);
  {
    std::mt19937_64 rng(hyper.seed + 1);
    std::normal_distribution<double> dist(
        0.0, 1.0 / std::sqrt(static_cast<double>(hyper.hidden)));
    for (double& w : result.model.hidden.data) w = dist(rng);
  }
  result.model.head = Matrix(hyper.hidden, cfg.vocab_size);  // zeros
  result.model.context_window = hyper.context_window;

  const std::size_t pairs = tokens.size() - hyper.context_window;
  result.loss_trace.reserve(hyper.steps);
  for (std::size_t step = 0; step < hyper.steps; ++step) {
    std::size_t target_pos = hyper.context_window + (step % pairs);
    std::span<const SparsePattern> ctx(
        patterns.data() + (target_pos - hyper.context_window),
        hyper.context_window);
    double loss = 0.0;
    ToyGradients grads =
        toy_gradients(result.model, ctx, patterns[target_pos], &loss);
    result.loss_trace.push_back(loss);
    if (hyper.lr != 0.0) {
      auto axpy = [lr = hyper.lr](Matrix& param, const Matrix& grad) {
        for (std::size_t i = 0; i < param.data.size(); ++i) {
          param.data[i] -= lr * grad.data[i];
        }
      };
      axpy(result.model.embedding.rows, grads.embedding);
      axpy(result.model.hidden, grads.hidden);
      axpy(result.model.head, grads.head);
    }
  }
  return result;
}

LossValue sequence_loss(const ToyModel& model, std::span<const Token> tokens) {
  check_shapes(model);
  const std::size_t c = model.context_window;
  if (tokens.size() < c + 1) {
    throw InputError("sequence too short for context window");
  }
  TrigramIndexer indexer(model.embedding.cfg);
  std::vector<SparsePattern> patterns;
  patterns.reserve(tokens.size());
  for (const Token& tok : tokens) patterns.push_back(indexer.pattern(tok));

  LossValue lv;
  for (std::size_t j = c; j < tokens.size(); ++j) {
    std::span<const SparsePattern> ctx(patterns.data() + (j - c), c);
    double loss = ml_bce(run_forward(model, ctx).logits, patterns[j]);
    lv.per_position.push_back(loss);
    lv.total += loss;
  }
  return lv;
}

void save_toy_model(const ToyModel& model, const std::string& path) {
  check_shapes(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  bin::write_magic(out, kMagic);
  const TFreeConfig& cfg = model.embedding.cfg;
  bin::write_u32(out, cfg.vocab_size);
  bin::write_u32(out, static_cast<std::uint32_t>(model.embedding.hidden));
  bin::write_u32(out, cfg.hashes_per_trigram);
  bin::write_u32(out, cfg.lowercase_hashes);
  bin::write_u32(out, static_cast<std::uint32_t>(model.context_window));
  bin::write_string(out, cfg.hash_name);
  for (const Matrix* m : {&model.embedding.rows, &model.hidden, &model.head}) {
    for (double x : m->data) bin::write_f32(out, static_cast<float>(x));
  }
  if (!out) throw InputError("write failed: " + path);
}

ToyModel load_toy_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  bin::expect_magic(in, kMagic, path);
  TFreeConfig cfg;
  cfg.vocab_size = bin::read_u32(in);
  std::uint32_t hidden = bin::read_u32(in);
  cfg.hashes_per_trigram = bin::read_u32(in);
  cfg.lowercase_hashes = bin::read_u32(in);
  std::uint32_t context = bin::read_u32(in);
  cfg.hash_name = bin::read_string(in);
  ToyModel model;
  model.embedding = EmbeddingMatrix(cfg, hidden);
  model.hidden = Matrix(hidden, hidden);
  model.head = Matrix(hidden, cfg.vocab_size);
  model.context_window = context;
  for (Matrix* m : {&model.embedding.rows, &model.hidden, &model.head}) {
    for (double& x : m->data) x = bin::read_f32(in);
  }
  check_shapes(model);
  return model;
}

}  // namespace tfree
