#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fanci/dataset.hpp"
#include "fanci/domain.hpp"
#include "fanci/features.hpp"

namespace fanci {

struct ModelConfig {
  int feature_dim = 45;
  int state_width = 200;
  int vocab = kVocabSize;
  int max_seq_len = 255;  // 253 characters + START/END
  double focal_gamma = 2.0;
  int batch_size = 64;
  int max_epochs = 1000;
  int patience = 10;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 0;
};

// Named parameter tensor, row-major; cols == 1 for bias vectors.
struct Tensor {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  std::size_t size() const { return rows * cols; }
};

// Feature-conditioned character decoder. Two affine branches map the feature
// vector to the initial recurrent states (h0, c0); a single LSTM layer with
// `state_width` units consumes one-hot tokens; an affine head with softmax
// emits a distribution over the 42 sequence symbols.
//
// Tensor order (also the seeded initialization order):
//   branch_h.w1 [W,F]  branch_h.b1 [W]  branch_h.w2 [W,W]  branch_h.b2 [W]
//   branch_c.w1 [W,F]  branch_c.b1 [W]  branch_c.w2 [W,W]  branch_c.b2 [W]
//   lstm.w [4W,V+W]    lstm.b [4W]      (gate rows: input, forget, cell, output)
//   head.w [V,W]       head.b [V]
struct DecoderModel {
  ModelConfig config;
  std::vector<Tensor> params;

  std::size_t parameter_count() const;
};

enum param_id : std::size_t {
  kParamBranchHW1 = 0, kParamBranchHB1, kParamBranchHW2, kParamBranchHB2,
  kParamBranchCW1, kParamBranchCB1, kParamBranchCW2, kParamBranchCB2,
  kParamLstmW, kParamLstmB, kParamHeadW, kParamHeadB,
  kParamTensorCount,
};

// Weights drawn uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] from the config
// seed; biases zero except the forget-gate block, which starts at 1.
DecoderModel build_model(const ModelConfig& config);

// Softmax distributions over the vocabulary for every step of the target
// sequence (input at step t is target[t], the prediction is for target[t+1]).
std::vector<std::vector<double>> forward_teacher_forced(
    const DecoderModel& model, const FeatureVector& features,
    const TokenSequence& target);

// Mean over non-PAD steps of -(1-p)^gamma * ln(p), p clamped to [1e-12, 1].
double focal_loss(const std::vector<std::vector<double>>& step_probabilities,
                  const TokenSequence& target, double gamma);

struct TrainingPair {
  FeatureVector features;
  std::vector<int> tokens;  // START, characters, END (no padding)
};

TrainingPair make_training_pair(const DomainName& domain,
                                const FeatureExtractor& extractor,
                                std::size_t max_seq_len);
std::vector<TrainingPair> make_training_pairs(const DomainSet& set,
                                              const FeatureExtractor& extractor,
                                              std::size_t max_seq_len);

// Mean focal loss over all non-PAD steps of the batch; when `gradients` is
// non-null it receives d(loss)/d(parameter) with the model's tensor layout.
double loss_and_gradient(const DecoderModel& model,
                         const std::vector<TrainingPair>& batch,
                         std::vector<Tensor>* gradients);

struct EpochStats {
  double train_loss = 0;
  double validation_loss = 0;
};

struct TrainingHistory {
  std::vector<EpochStats> epochs;
  int best_epoch = 0;  // 1-based
  std::string stop_reason;
};

// Mini-batch Adam on the focal loss under teacher forcing. Shuffles
// per-epoch (seeded), stops early after `patience` epochs without
// validation improvement, and leaves the model at the best-epoch weights.
// Throws error(errc::divergence) if the loss stops being finite.
TrainingHistory train(DecoderModel& model,
                      const std::vector<TrainingPair>& train_set,
                      const std::vector<TrainingPair>& validation_set);

// Greedy closed-loop sampling: start from the feature-derived states, feed
// the argmax symbol back each step (ties break to the lowest index), stop at
// END or after max_len tokens, decode to a string.
std::string sample_closed_loop(const DecoderModel& model,
                               const FeatureVector& features, int max_len);

// Lockstep batched variant; one entry per feature vector.
std::vector<std::string> sample_closed_loop_batch(
    const DecoderModel& model, const std::vector<FeatureVector>& features,
    int max_len);

// Versioned text checkpoint: config echo plus every tensor with its shape
// and row-major values at full precision.
void save_checkpoint(const DecoderModel& model, const std::filesystem::path& path);
DecoderModel load_checkpoint(const std::filesystem::path& path);

void save_history(const TrainingHistory& history, const std::filesystem::path& path);

}  // namespace fanci
