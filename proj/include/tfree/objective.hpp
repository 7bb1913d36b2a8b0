#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfree/embedding.hpp"
#include "tfree/matrix.hpp"
#include "tfree/token.hpp"
#include "tfree/trigram.hpp"

namespace tfree {

// Multi-label binary cross-entropy between logits and the binary target
// the pattern denotes (1 at every pattern index, 0 elsewhere). Evaluated
// in the logit-stable form max(z,0) - z*y + log1p(exp(-|z|)), so values
// stay finite at any logit magnitude. All-zero logits give exactly
// vocab_size * ln 2 regardless of target.
double ml_bce(std::span<const double> logits, const SparsePattern& target);

// d ml_bce / d logits = sigmoid(logits) - y.
std::vector<double> ml_bce_grad(std::span<const double> logits,
                                const SparsePattern& target);

struct LossValue {
  double total = 0.0;
  std::vector<double> per_position;

  double mean() const {
    return per_position.empty() ? 0.0
                                : total / static_cast<double>(per_position.size());
  }
};

// Two-layer next-word model: mean of the context token embeddings,
// through one tanh layer, to one logit per vocabulary index. Small
// enough to verify every gradient by finite differences, while running
// the full encode -> loss -> update -> decode path.
struct ToyModel {
  EmbeddingMatrix embedding;   // v x h
  Matrix hidden;               // h x h
  Matrix head;                 // h x v
  std::size_t context_window = 2;
};

struct ToyGradients {
  Matrix embedding;
  Matrix hidden;
  Matrix head;
};

// Logits for the next word after `context`; only the last
// model.context_window entries participate. Empty context is an error.
std::vector<double> toy_forward(const ToyModel& model,
                                std::span<const Token> context);
std::vector<double> toy_forward(const ToyModel& model,
                                std::span<const SparsePattern> context_patterns);

// Analytic gradients of ml_bce(toy_forward(context), target) with
// respect to every parameter. loss_out, when given, receives the loss of
// the same forward pass.
ToyGradients toy_gradients(const ToyModel& model, std::span<const Token> context,
                           const SparsePattern& target, double* loss_out = nullptr);
ToyGradients toy_gradients(const ToyModel& model,
                           std::span<const SparsePattern> context_patterns,
                           const SparsePattern& target, double* loss_out = nullptr);

struct TrainHyper {
  double lr = 0.3;
  std::size_t steps = 2000;
  std::size_t context_window = 2;
  std::size_t hidden = 64;
  std::uint64_t seed = 1;
};

struct TrainResult {
  ToyModel model;
  std::vector<double> loss_trace;  // pair loss at each step, before the update
};

// Deterministic single-pair gradient descent over the sliding
// (context -> next token) pairs of the corpus, visited cyclically in
// order. lr = 0 leaves the freshly initialized parameters bit-exact.
// The head starts at zero, so step 0 always records vocab_size * ln 2.
TrainResult toy_train(std::string_view corpus, const TFreeConfig& cfg,
                      const TrainHyper& hyper, const SplitConfig& split_cfg = {});

// Loss of each predictable position of a token sequence (positions with
// a full context window before them), plus the total.
LossValue sequence_loss(const ToyModel& model, std::span<const Token> tokens);

// Checkpoint: fixed 8-byte tag, config header (v, h, m, k, context
// window, hash name), then embedding, hidden and head matrices row-major
// as little-endian 32-bit floats.
void save_toy_model(const ToyModel& model, const std::string& path);
ToyModel load_toy_model(const std::string& path);

}  // namespace tfree
