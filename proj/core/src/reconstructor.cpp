#include "fanci/reconstructor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "fanci/errors.hpp"
#include "fanci/rng.hpp"

namespace fanci {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using MapMat = Eigen::Map<Mat>;
using CMapMat = Eigen::Map<const Mat>;
using MapVec = Eigen::Map<Vec>;
using CMapVec = Eigen::Map<const Vec>;

constexpr double kProbFloor = 1e-12;

CMapMat mat(const Tensor& t) {
  return CMapMat(t.data.data(), static_cast<Eigen::Index>(t.rows),
                 static_cast<Eigen::Index>(t.cols));
}
CMapVec vec(const Tensor& t) {
  return CMapVec(t.data.data(), static_cast<Eigen::Index>(t.size()));
}
MapMat mat(Tensor& t) {
  return MapMat(t.data.data(), static_cast<Eigen::Index>(t.rows),
                static_cast<Eigen::Index>(t.cols));
}
MapVec vec(Tensor& t) {
  return MapVec(t.data.data(), static_cast<Eigen::Index>(t.size()));
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void softmax_rows(Mat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double max = m.row(r).maxCoeff();
    m.row(r) = (m.row(r).array() - max).exp();
    m.row(r) /= m.row(r).sum();
  }
}

struct ParamShape {
  const char* name;
  std::size_t rows;
  std::size_t cols;
};

std::vector<ParamShape> param_shapes(const ModelConfig& c) {
  const auto W = static_cast<std::size_t>(c.state_width);
  const auto F = static_cast<std::size_t>(c.feature_dim);
  const auto V = static_cast<std::size_t>(c.vocab);
  return {
      {"branch_h.w1", W, F}, {"branch_h.b1", W, 1},
      {"branch_h.w2", W, W}, {"branch_h.b2", W, 1},
      {"branch_c.w1", W, F}, {"branch_c.b1", W, 1},
      {"branch_c.w2", W, W}, {"branch_c.b2", W, 1},
      {"lstm.w", 4 * W, V + W}, {"lstm.b", 4 * W, 1},
      {"head.w", V, W}, {"head.b", V, 1},
  };
}

void check_config(const ModelConfig& c) {
  if (c.feature_dim <= 0 || c.state_width <= 0 || c.vocab <= 0 ||
      c.max_seq_len < 3 || c.batch_size <= 0 || c.max_epochs <= 0 ||
      c.patience <= 0 || c.learning_rate <= 0 || c.focal_gamma < 0) {
    throw error(errc::bad_config, "invalid model configuration");
  }
}

// Batched state and the per-step values the backward pass reuses.
struct ForwardTrace {
  Mat features;             // B x F
  Mat branch_h_hidden;      // B x W (first branch layer output)
  Mat branch_c_hidden;      // B x W
  std::vector<Mat> h;       // T+1 entries of B x W, h[0] = h0
  std::vector<Mat> c;       // T+1 entries of B x W, c[0] = c0
  std::vector<Mat> gates;   // T entries of B x 4W, post-activation (i,f,g,o)
  std::vector<Mat> tanh_c;  // T entries of B x W
  std::vector<Mat> probs;   // T entries of B x V
  std::vector<std::vector<int>> inputs;   // per step, B token indices
  std::vector<std::vector<int>> targets;  // per step, B indices (-1 = masked)
};

// One decoder step shared by training, teacher-forced inference and
// sampling. Consumes `x_tokens` (one-hot column gather), updates (h, c) and
// returns the softmax distributions.
void lstm_step(const DecoderModel& m, const std::vector<int>& x_tokens,
               const Mat& h_prev, const Mat& c_prev, Mat& gates_out,
               Mat& c_out, Mat& tanh_c_out, Mat& h_out, Mat& probs_out) {
  const auto B = static_cast<Eigen::Index>(x_tokens.size());
  const int W = m.config.state_width;
  const int V = m.config.vocab;
  const auto lstm_w = mat(m.params[kParamLstmW]);  // 4W x (V+W)
  const auto lstm_b = vec(m.params[kParamLstmB]);

  gates_out.resize(B, 4 * W);
  // x one-hot: the x-part of the product is a column gather.
  for (Eigen::Index r = 0; r < B; ++r) {
    gates_out.row(r) = lstm_w.col(x_tokens[static_cast<std::size_t>(r)]).transpose();
  }
  gates_out.noalias() += h_prev * lstm_w.rightCols(W).transpose();
  gates_out.rowwise() += lstm_b.transpose();

  // Gate blocks: input, forget, cell candidate, output.
  auto gi = gates_out.leftCols(W);
  auto gf = gates_out.middleCols(W, W);
  auto gg = gates_out.middleCols(2 * W, W);
  auto go = gates_out.rightCols(W);
  gi = gi.unaryExpr([](double x) { return sigmoid(x); });
  gf = gf.unaryExpr([](double x) { return sigmoid(x); });
  gg = gg.array().tanh();
  go = go.unaryExpr([](double x) { return sigmoid(x); });

  c_out = gf.cwiseProduct(c_prev) + gi.cwiseProduct(gg);
  tanh_c_out = c_out.array().tanh();
  h_out = go.cwiseProduct(tanh_c_out);

  const auto head_w = mat(m.params[kParamHeadW]);  // V x W
  const auto head_b = vec(m.params[kParamHeadB]);
  probs_out.resize(B, V);
  probs_out.noalias() = h_out * head_w.transpose();
  probs_out.rowwise() += head_b.transpose();
  softmax_rows(probs_out);
}

void initial_states(const DecoderModel& m, const Mat& features, Mat& hidden_h,
                    Mat& hidden_c, Mat& h0, Mat& c0) {
  hidden_h = features * mat(m.params[kParamBranchHW1]).transpose();
  hidden_h.rowwise() += vec(m.params[kParamBranchHB1]).transpose();
  h0 = hidden_h * mat(m.params[kParamBranchHW2]).transpose();
  h0.rowwise() += vec(m.params[kParamBranchHB2]).transpose();

  hidden_c = features * mat(m.params[kParamBranchCW1]).transpose();
  hidden_c.rowwise() += vec(m.params[kParamBranchCB1]).transpose();
  c0 = hidden_c * mat(m.params[kParamBranchCW2]).transpose();
  c0.rowwise() += vec(m.params[kParamBranchCB2]).transpose();
}

// d/dq of -(1-q)^gamma * ln(q).
double focal_dq(double q, double gamma) {
  if (gamma == 0.0) return -1.0 / q;
  return gamma * std::pow(1.0 - q, gamma - 1.0) * std::log(q) -
         std::pow(1.0 - q, gamma) / q;
}

double focal_term(double q, double gamma) {
  if (gamma == 0.0) return -std::log(q);
  return -std::pow(1.0 - q, gamma) * std::log(q);
}

struct BatchLoss {
  double loss_sum = 0;
  std::size_t steps = 0;
};

// Teacher-forced forward over a batch. Sequences shorter than the batch
// maximum run on with PAD inputs; their trailing steps carry target -1 and
// stay out of the loss.
BatchLoss batch_forward(const DecoderModel& m,
                        const std::vector<TrainingPair>& batch,
                        ForwardTrace* trace, double gamma) {
  const auto B = static_cast<Eigen::Index>(batch.size());
  const int F = m.config.feature_dim;
  std::size_t max_steps = 0;
  for (const auto& p : batch) {
    if (p.tokens.size() < 2) {
      throw error(errc::dimension_mismatch, "token sequence too short");
    }
    max_steps = std::max(max_steps, p.tokens.size() - 1);
  }

  Mat features(B, F);
  for (Eigen::Index r = 0; r < B; ++r) {
    const auto& fv = batch[static_cast<std::size_t>(r)].features.values;
    if (static_cast<int>(fv.size()) != F) {
      throw error(errc::dimension_mismatch, "feature vector width mismatch");
    }
    for (int j = 0; j < F; ++j) features(r, j) = fv[static_cast<std::size_t>(j)];
  }

  ForwardTrace local;
  ForwardTrace& tr = trace ? *trace : local;
  tr.features = std::move(features);
  tr.h.assign(1, Mat());
  tr.c.assign(1, Mat());
  initial_states(m, tr.features, tr.branch_h_hidden, tr.branch_c_hidden,
                 tr.h[0], tr.c[0]);
  tr.gates.resize(max_steps);
  tr.tanh_c.resize(max_steps);
  tr.probs.resize(max_steps);
  tr.inputs.resize(max_steps);
  tr.targets.resize(max_steps);
  tr.h.resize(max_steps + 1);
  tr.c.resize(max_steps + 1);

  BatchLoss out;
  for (std::size_t t = 0; t < max_steps; ++t) {
    auto& inputs = tr.inputs[t];
    auto& targets = tr.targets[t];
    inputs.resize(static_cast<std::size_t>(B));
    targets.resize(static_cast<std::size_t>(B));
    for (Eigen::Index r = 0; r < B; ++r) {
      const auto& tokens = batch[static_cast<std::size_t>(r)].tokens;
      if (t + 1 < tokens.size()) {
        inputs[static_cast<std::size_t>(r)] = tokens[t];
        const int target = tokens[t + 1];
        targets[static_cast<std::size_t>(r)] = target == kPadToken ? -1 : target;
      } else {
        inputs[static_cast<std::size_t>(r)] = kPadToken;
        targets[static_cast<std::size_t>(r)] = -1;
      }
    }
    lstm_step(m, inputs, tr.h[t], tr.c[t], tr.gates[t], tr.c[t + 1],
              tr.tanh_c[t], tr.h[t + 1], tr.probs[t]);
    for (Eigen::Index r = 0; r < B; ++r) {
      const int target = targets[static_cast<std::size_t>(r)];
      if (target < 0) continue;
      const double q =
          std::clamp(tr.probs[t](r, target), kProbFloor, 1.0);
      out.loss_sum += focal_term(q, gamma);
      ++out.steps;
    }
  }
  return out;
}

void accumulate_gradients(const DecoderModel& m, const ForwardTrace& tr,
                          double inv_steps, double gamma,
                          std::vector<Tensor>& grads) {
  const int W = m.config.state_width;
  const int V = m.config.vocab;
  const auto B = tr.features.rows();
  const std::size_t T = tr.gates.size();

  const auto lstm_w = mat(m.params[kParamLstmW]);
  const auto head_w = mat(m.params[kParamHeadW]);

  auto g_lstm_w = mat(grads[kParamLstmW]);
  auto g_lstm_b = vec(grads[kParamLstmB]);
  auto g_head_w = mat(grads[kParamHeadW]);
  auto g_head_b = vec(grads[kParamHeadB]);

  Mat dh = Mat::Zero(B, W);
  Mat dc = Mat::Zero(B, W);
  Mat dlogits(B, V);
  Mat dgates(B, 4 * W);

  for (std::size_t t = T; t-- > 0;) {
    const Mat& probs = tr.probs[t];
    dlogits.setZero();
    for (Eigen::Index r = 0; r < B; ++r) {
      const int target = tr.targets[t][static_cast<std::size_t>(r)];
      if (target < 0) continue;
      const double q_raw = probs(r, target);
      // Outside the clamp range the loss is locally constant (floor) or at
      // its minimum (1), so those steps contribute no gradient.
      if (q_raw < kProbFloor || q_raw >= 1.0) continue;
      const double q = q_raw;
      const double scale = focal_dq(q, gamma) * q * inv_steps;
      dlogits.row(r) = -scale * probs.row(r);
      dlogits(r, target) += scale;
    }
    g_head_w.noalias() += dlogits.transpose() * tr.h[t + 1];
    g_head_b.noalias() += dlogits.colwise().sum().transpose();
    dh.noalias() += dlogits * head_w;

    const auto gi = tr.gates[t].leftCols(W);
    const auto gf = tr.gates[t].middleCols(W, W);
    const auto gg = tr.gates[t].middleCols(2 * W, W);
    const auto go = tr.gates[t].rightCols(W);
    const Mat& tc = tr.tanh_c[t];

    dc.array() += dh.array() * go.array() * (1.0 - tc.array().square());
    dgates.leftCols(W) =
        (dc.array() * gg.array() * gi.array() * (1.0 - gi.array())).matrix();
    dgates.middleCols(W, W) = (dc.array() * tr.c[t].array() * gf.array() *
                               (1.0 - gf.array()))
                                  .matrix();
    dgates.middleCols(2 * W, W) =
        (dc.array() * gi.array() * (1.0 - gg.array().square())).matrix();
    dgates.rightCols(W) =
        (dh.array() * tc.array() * go.array() * (1.0 - go.array())).matrix();

    // x part of the input is one-hot: scatter instead of a dense product.
    for (Eigen::Index r = 0; r < B; ++r) {
      g_lstm_w.col(tr.inputs[t][static_cast<std::size_t>(r)]) +=
          dgates.row(r).transpose();
    }
    g_lstm_w.rightCols(W).noalias() += dgates.transpose() * tr.h[t];
    g_lstm_b.noalias() += dgates.colwise().sum().transpose();

    dh.noalias() = dgates * lstm_w.rightCols(W);
    dc = dc.cwiseProduct(gf);
  }

  // Into the branches: dh -> h0 branch, dc -> c0 branch.
  const auto bh_w2 = mat(m.params[kParamBranchHW2]);
  const auto bc_w2 = mat(m.params[kParamBranchCW2]);
  auto g_bh_w1 = mat(grads[kParamBranchHW1]);
  auto g_bh_b1 = vec(grads[kParamBranchHB1]);
  auto g_bh_w2 = mat(grads[kParamBranchHW2]);
  auto g_bh_b2 = vec(grads[kParamBranchHB2]);
  auto g_bc_w1 = mat(grads[kParamBranchCW1]);
  auto g_bc_b1 = vec(grads[kParamBranchCB1]);
  auto g_bc_w2 = mat(grads[kParamBranchCW2]);
  auto g_bc_b2 = vec(grads[kParamBranchCB2]);

  g_bh_w2.noalias() += dh.transpose() * tr.branch_h_hidden;
  g_bh_b2.noalias() += dh.colwise().sum().transpose();
  Mat dhidden = dh * bh_w2;
  g_bh_w1.noalias() += dhidden.transpose() * tr.features;
  g_bh_b1.noalias() += dhidden.colwise().sum().transpose();

  g_bc_w2.noalias() += dc.transpose() * tr.branch_c_hidden;
  g_bc_b2.noalias() += dc.colwise().sum().transpose();
  dhidden = dc * bc_w2;
  g_bc_w1.noalias() += dhidden.transpose() * tr.features;
  g_bc_b1.noalias() += dhidden.colwise().sum().transpose();
}

std::vector<Tensor> zero_like(const DecoderModel& m) {
  std::vector<Tensor> grads = m.params;
  for (auto& g : grads) {
    std::fill(g.data.begin(), g.data.end(), 0.0);
  }
  return grads;
}

}  // namespace

std::size_t DecoderModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : params) n += t.size();
  return n;
}

DecoderModel build_model(const ModelConfig& config) {
  check_config(config);
  DecoderModel m;
  m.config = config;
  SeededRng rng(mix_seed(config.seed, 3));

  const auto shapes = param_shapes(config);
  m.params.reserve(shapes.size());
  for (const auto& s : shapes) {
    Tensor t;
    t.name = s.name;
    t.rows = s.rows;
    t.cols = s.cols;
    t.data.assign(s.rows * s.cols, 0.0);
    m.params.push_back(std::move(t));
  }

  const auto init_uniform = [&rng](Tensor& t, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (auto& w : t.data) {
      w = (rng.next_unit() * 2.0 - 1.0) * bound;
    }
  };
  const auto F = static_cast<std::size_t>(config.feature_dim);
  const auto W = static_cast<std::size_t>(config.state_width);
  const auto V = static_cast<std::size_t>(config.vocab);
  init_uniform(m.params[kParamBranchHW1], F);
  init_uniform(m.params[kParamBranchHW2], W);
  init_uniform(m.params[kParamBranchCW1], F);
  init_uniform(m.params[kParamBranchCW2], W);
  init_uniform(m.params[kParamLstmW], V + W);
  init_uniform(m.params[kParamHeadW], W);

  // Forget-gate bias starts open.
  auto& lstm_b = m.params[kParamLstmB].data;
  for (std::size_t i = W; i < 2 * W; ++i) lstm_b[i] = 1.0;
  return m;
}

std::vector<std::vector<double>> forward_teacher_forced(
    const DecoderModel& model, const FeatureVector& features,
    const TokenSequence& target) {
  if (target.tokens.size() < 2) {
    throw error(errc::dimension_mismatch, "target sequence needs >= 2 tokens");
  }
  for (int token : target.tokens) {
    if (token < 0 || token >= model.config.vocab) {
      throw error(errc::dimension_mismatch, "token outside vocabulary");
    }
  }
  TrainingPair pair;
  pair.features = features;
  pair.tokens = target.tokens;
  ForwardTrace trace;
  batch_forward(model, {pair}, &trace, model.config.focal_gamma);

  std::vector<std::vector<double>> out(trace.probs.size());
  for (std::size_t t = 0; t < trace.probs.size(); ++t) {
    out[t].resize(static_cast<std::size_t>(model.config.vocab));
    for (int v = 0; v < model.config.vocab; ++v) {
      out[t][static_cast<std::size_t>(v)] = trace.probs[t](0, v);
    }
  }
  return out;
}

double focal_loss(const std::vector<std::vector<double>>& step_probabilities,
                  const TokenSequence& target, double gamma) {
  if (target.tokens.size() < step_probabilities.size() + 1) {
    throw error(errc::dimension_mismatch,
                "target shorter than probability sequence");
  }
  double sum = 0;
  std::size_t steps = 0;
  for (std::size_t t = 0; t < step_probabilities.size(); ++t) {
    const int y = target.tokens[t + 1];
    if (y == kPadToken) continue;
    const double q =
        std::clamp(step_probabilities[t][static_cast<std::size_t>(y)],
                   kProbFloor, 1.0);
    sum += focal_term(q, gamma);
    ++steps;
  }
  return steps > 0 ? sum / static_cast<double>(steps) : 0.0;
}

TrainingPair make_training_pair(const DomainName& domain,
                                const FeatureExtractor& extractor,
                                std::size_t max_seq_len) {
  TrainingPair p;
  p.features = extractor.extract_normalized(domain);
  const TokenSequence seq = encode_domain(domain, max_seq_len);
  p.tokens.assign(seq.tokens.begin(),
                  seq.tokens.begin() +
                      static_cast<long>(domain.raw.size() + 2));
  return p;
}

std::vector<TrainingPair> make_training_pairs(const DomainSet& set,
                                              const FeatureExtractor& extractor,
                                              std::size_t max_seq_len) {
  std::vector<TrainingPair> pairs;
  pairs.reserve(set.size());
  for (const auto& raw : set.domains) {
    const DomainName d = parse_domain(raw, extractor.suffix_list());
    pairs.push_back(make_training_pair(d, extractor, max_seq_len));
  }
  return pairs;
}

double loss_and_gradient(const DecoderModel& model,
                         const std::vector<TrainingPair>& batch,
                         std::vector<Tensor>* gradients) {
  if (batch.empty()) {
    throw error(errc::dimension_mismatch, "empty batch");
  }
  ForwardTrace trace;
  const BatchLoss bl =
      batch_forward(model, batch, &trace, model.config.focal_gamma);
  const double loss =
      bl.steps > 0 ? bl.loss_sum / static_cast<double>(bl.steps) : 0.0;
  if (gradients) {
    *gradients = zero_like(model);
    if (bl.steps > 0) {
      accumulate_gradients(model, trace, 1.0 / static_cast<double>(bl.steps),
                           model.config.focal_gamma, *gradients);
    }
  }
  return loss;
}

namespace {

double dataset_loss(const DecoderModel& model,
                    const std::vector<TrainingPair>& pairs) {
  double sum = 0;
  std::size_t steps = 0;
  const std::size_t batch_size = static_cast<std::size_t>(model.config.batch_size);
  for (std::size_t begin = 0; begin < pairs.size(); begin += batch_size) {
    const std::size_t end = std::min(begin + batch_size, pairs.size());
    std::vector<TrainingPair> batch(pairs.begin() + static_cast<long>(begin),
                                    pairs.begin() + static_cast<long>(end));
    const BatchLoss bl =
        batch_forward(model, batch, nullptr, model.config.focal_gamma);
    sum += bl.loss_sum;
    steps += bl.steps;
  }
  return steps > 0 ? sum / static_cast<double>(steps) : 0.0;
}

struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  long step = 0;
};

void adam_update(DecoderModel& model, const std::vector<Tensor>& grads,
                 AdamState& state) {
  const ModelConfig& c = model.config;
  ++state.step;
  const double b1 = c.adam_beta1;
  const double b2 = c.adam_beta2;
  const double bias1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t p = 0; p < model.params.size(); ++p) {
    auto& theta = model.params[p].data;
    const auto& g = grads[p].data;
    auto& m1 = state.m[p].data;
    auto& m2 = state.v[p].data;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m1[i] = b1 * m1[i] + (1.0 - b1) * g[i];
      m2[i] = b2 * m2[i] + (1.0 - b2) * g[i] * g[i];
      const double mhat = m1[i] / bias1;
      const double vhat = m2[i] / bias2;
      theta[i] -= c.learning_rate * mhat / (std::sqrt(vhat) + c.adam_epsilon);
    }
  }
}

}  // namespace

TrainingHistory train(DecoderModel& model,
                      const std::vector<TrainingPair>& train_set,
                      const std::vector<TrainingPair>& validation_set) {
  if (train_set.empty() || validation_set.empty()) {
    throw error(errc::too_few_samples, "training and validation sets must be non-empty");
  }
  const ModelConfig& cfg = model.config;

  AdamState adam;
  adam.m = zero_like(model);
  adam.v = zero_like(model);

  TrainingHistory history;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<Tensor> best_params = model.params;
  int epochs_without_improvement = 0;

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  const std::size_t batch_size = static_cast<std::size_t>(cfg.batch_size);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    SeededRng shuffle_rng(mix_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(order);

    double epoch_loss_sum = 0;
    std::size_t epoch_steps = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
      const std::size_t end = std::min(begin + batch_size, order.size());
      std::vector<TrainingPair> batch;
      batch.reserve(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        batch.push_back(train_set[order[i]]);
      }
      ForwardTrace trace;
      const BatchLoss bl = batch_forward(model, batch, &trace, cfg.focal_gamma);
      if (!std::isfinite(bl.loss_sum)) {
        throw error(errc::divergence,
                    "non-finite training loss in epoch " + std::to_string(epoch));
      }
      epoch_loss_sum += bl.loss_sum;
      epoch_steps += bl.steps;
      if (bl.steps == 0) continue;
      std::vector<Tensor> grads = zero_like(model);
      accumulate_gradients(model, trace, 1.0 / static_cast<double>(bl.steps),
                           cfg.focal_gamma, grads);
      adam_update(model, grads, adam);
    }

    EpochStats stats;
    stats.train_loss =
        epoch_steps > 0 ? epoch_loss_sum / static_cast<double>(epoch_steps) : 0.0;
    stats.validation_loss = dataset_loss(model, validation_set);
    if (!std::isfinite(stats.validation_loss)) {
      throw error(errc::divergence,
                  "non-finite validation loss in epoch " + std::to_string(epoch));
    }
    history.epochs.push_back(stats);

    if (stats.validation_loss < best_val) {
      best_val = stats.validation_loss;
      best_params = model.params;
      history.best_epoch = epoch;
      epochs_without_improvement = 0;
    } else {
      ++epochs_without_improvement;
      if (epochs_without_improvement >= cfg.patience) {
        history.stop_reason = "early-stopping";
        break;
      }
    }
  }
  if (history.stop_reason.empty()) {
    history.stop_reason = "max-epochs";
  }
  model.params = std::move(best_params);
  return history;
}

std::vector<std::string> sample_closed_loop_batch(
    const DecoderModel& model, const std::vector<FeatureVector>& features,
    int max_len) {
  if (features.empty()) return {};
  if (max_len < 2) {
    throw error(errc::bad_config, "max_len must be at least 2");
  }
  const auto B = static_cast<Eigen::Index>(features.size());
  const int F = model.config.feature_dim;

  Mat fmat(B, F);
  for (Eigen::Index r = 0; r < B; ++r) {
    const auto& fv = features[static_cast<std::size_t>(r)].values;
    if (static_cast<int>(fv.size()) != F) {
      throw error(errc::dimension_mismatch, "feature vector width mismatch");
    }
    for (int j = 0; j < F; ++j) fmat(r, j) = fv[static_cast<std::size_t>(j)];
  }

  Mat hidden_h, hidden_c, h, c;
  initial_states(model, fmat, hidden_h, hidden_c, h, c);

  std::vector<std::vector<int>> sequences(static_cast<std::size_t>(B),
                                          std::vector<int>{kStartToken});
  std::vector<bool> done(static_cast<std::size_t>(B), false);
  std::vector<int> inputs(static_cast<std::size_t>(B), kStartToken);

  Mat gates, c_next, tanh_c, h_next, probs;
  for (int step = 1; step < max_len; ++step) {
    lstm_step(model, inputs, h, c, gates, c_next, tanh_c, h_next, probs);
    h = h_next;
    c = c_next;
    bool all_done = true;
    for (Eigen::Index r = 0; r < B; ++r) {
      const auto rr = static_cast<std::size_t>(r);
      if (done[rr]) continue;
      // Argmax with ties to the lowest index.
      int best = 0;
      double best_p = probs(r, 0);
      for (int v = 1; v < model.config.vocab; ++v) {
        if (probs(r, v) > best_p) {
          best_p = probs(r, v);
          best = v;
        }
      }
      sequences[rr].push_back(best);
      inputs[rr] = best;
      if (best == kEndToken) {
        done[rr] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }

  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(B));
  for (const auto& seq : sequences) {
    TokenSequence ts;
    ts.tokens = seq;
    out.push_back(decode_tokens(ts));
  }
  return out;
}

std::string sample_closed_loop(const DecoderModel& model,
                               const FeatureVector& features, int max_len) {
  return sample_closed_loop_batch(model, {features}, max_len).front();
}

}  // namespace fanci
