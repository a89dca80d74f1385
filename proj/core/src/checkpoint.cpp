#include <fstream>

#include <json.hpp>

#include "fanci/errors.hpp"
#include "fanci/reconstructor.hpp"

namespace fanci {

namespace {

using nlohmann::json;

constexpr const char* kFormatName = "fanci-decoder";
constexpr int kFormatVersion = 1;

json config_to_json(const ModelConfig& c) {
  return json{
      {"feature_dim", c.feature_dim},
      {"state_width", c.state_width},
      {"vocab", c.vocab},
      {"max_seq_len", c.max_seq_len},
      {"focal_gamma", c.focal_gamma},
      {"batch_size", c.batch_size},
      {"max_epochs", c.max_epochs},
      {"patience", c.patience},
      {"learning_rate", c.learning_rate},
      {"adam_beta1", c.adam_beta1},
      {"adam_beta2", c.adam_beta2},
      {"adam_epsilon", c.adam_epsilon},
      {"seed", c.seed},
  };
}

ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  c.feature_dim = j.at("feature_dim").get<int>();
  c.state_width = j.at("state_width").get<int>();
  c.vocab = j.at("vocab").get<int>();
  c.max_seq_len = j.at("max_seq_len").get<int>();
  c.focal_gamma = j.at("focal_gamma").get<double>();
  c.batch_size = j.at("batch_size").get<int>();
  c.max_epochs = j.at("max_epochs").get<int>();
  c.patience = j.at("patience").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.adam_beta1 = j.at("adam_beta1").get<double>();
  c.adam_beta2 = j.at("adam_beta2").get<double>();
  c.adam_epsilon = j.at("adam_epsilon").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void save_checkpoint(const DecoderModel& model,
                     const std::filesystem::path& path) {
  json j;
  j["format"] = kFormatName;
  j["version"] = kFormatVersion;
  j["config"] = config_to_json(model.config);
  json tensors = json::array();
  for (const auto& t : model.params) {
    tensors.push_back(json{{"name", t.name},
                           {"rows", t.rows},
                           {"cols", t.cols},
                           {"data", t.data}});
  }
  j["tensors"] = std::move(tensors);

  std::ofstream out(path);
  if (!out) {
    throw error(errc::io, "cannot write checkpoint: " + path.string());
  }
  out << j.dump(1) << '\n';
  if (!out) {
    throw error(errc::io, "checkpoint write failed: " + path.string());
  }
}

DecoderModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw error(errc::io, "cannot open checkpoint: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw error(errc::io, "malformed checkpoint: " + std::string(e.what()));
  }
  try {
    if (j.at("format").get<std::string>() != kFormatName) {
      throw error(errc::io, "not a decoder checkpoint: " + path.string());
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw error(errc::io, "unsupported checkpoint version");
    }
    DecoderModel reference = build_model(config_from_json(j.at("config")));
    const auto& tensors = j.at("tensors");
    if (tensors.size() != reference.params.size()) {
      throw error(errc::io, "unexpected tensor count in checkpoint");
    }
    for (std::size_t i = 0; i < reference.params.size(); ++i) {
      const auto& jt = tensors[i];
      Tensor& t = reference.params[i];
      if (jt.at("name").get<std::string>() != t.name ||
          jt.at("rows").get<std::size_t>() != t.rows ||
          jt.at("cols").get<std::size_t>() != t.cols) {
        throw error(errc::io, "tensor layout mismatch at index " +
                                  std::to_string(i));
      }
      const auto values = jt.at("data").get<std::vector<double>>();
      if (values.size() != t.size()) {
        throw error(errc::io, "tensor size mismatch for " + t.name);
      }
      t.data = values;
    }
    return reference;
  } catch (const json::exception& e) {
    throw error(errc::io, "malformed checkpoint: " + std::string(e.what()));
  }
}

void save_history(const TrainingHistory& history,
                  const std::filesystem::path& path) {
  json j;
  json epochs = json::array();
  for (const auto& e : history.epochs) {
    epochs.push_back(json{{"train_loss", e.train_loss},
                          {"validation_loss", e.validation_loss}});
  }
  j["epochs"] = std::move(epochs);
  j["best_epoch"] = history.best_epoch;
  j["stop_reason"] = history.stop_reason;

  std::ofstream out(path);
  if (!out) {
    throw error(errc::io, "cannot write history: " + path.string());
  }
  out << j.dump(1) << '\n';
}

}  // namespace fanci
