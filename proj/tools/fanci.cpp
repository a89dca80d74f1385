// Command-line front end: extract features, analyze pre-image counts,
// generate and prepare datasets, train the reconstructor, and evaluate
// cross-source reconstruction quality.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fanci/dataset.hpp"
#include "fanci/domain.hpp"
#include "fanci/edit_distance.hpp"
#include "fanci/errors.hpp"
#include "fanci/evaluation.hpp"
#include "fanci/features.hpp"
#include "fanci/preimage.hpp"
#include "fanci/reconstructor.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidation = 4;

fanci::PublicSuffixList load_psl(const std::string& path) {
  if (path.empty()) return fanci::builtin_psl();
  return fanci::PublicSuffixList::from_file(path);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw fanci::error(fanci::errc::io, "cannot write file: " + path);
  }
  return out;
}

json scientific_json(const fanci::BigCount& value, int sig_digits) {
  const auto sci = value.to_scientific(sig_digits);
  return json{{"decimal", value.to_decimal_string()},
              {"mantissa", sci.mantissa},
              {"exponent", sci.exponent}};
}

// ---------------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------------

struct ExtractArgs {
  std::string input;
  std::string psl_path;
  std::string output;
};

int run_extract(const ExtractArgs& args) {
  const auto psl = load_psl(args.psl_path);
  fanci::LoadStats stats;
  const auto set = fanci::load_domains(args.input, "", &stats);
  const fanci::FeatureExtractor extractor(psl);

  std::vector<fanci::RawFeatures> rows;
  rows.reserve(set.size());
  for (const auto& raw : set.domains) {
    rows.push_back(extractor.extract_raw(fanci::parse_domain(raw, psl)));
  }

  if (args.output.empty()) {
    fanci::write_feature_csv(std::cout, set.domains, rows);
  } else {
    auto out = open_output(args.output);
    fanci::write_feature_csv(out, set.domains, rows);
    std::cerr << "wrote " << rows.size() << " feature rows to " << args.output
              << " (" << stats.invalid_lines << " invalid lines skipped)\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// analyze-preimages
// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string psl_path;
  std::string output;
  std::string format = "auto";  // auto | domains | csv
  bool spaces_only = false;
  bool json_only = false;
  double entropy_tol = 1e-6;
  std::uint64_t max_candidates = 2'000'000;
};

json quantities_json(const fanci::InferredQuantities& q) {
  return json{{"p1_dsf_length", q.dsf_length},
              {"p2_subdomain_count", q.subdomain_count},
              {"p3_suffix_length", q.suffix_length},
              {"p4_digits", q.digit_count},
              {"p5_vowels", q.vowel_count},
              {"p6_others", q.other_count}};
}

int run_analyze(const AnalyzeArgs& args) {
  json doc;
  const auto s = fanci::domain_space_size();
  const auto f = fanci::feature_space_size();
  const auto reduction = fanci::reduction_factor(4);
  doc["spaces"] = json{
      {"domain_space", scientific_json(s, 3)},
      {"feature_space", scientific_json(f, 3)},
      {"reduction",
       json{{"mantissa", reduction.mantissa}, {"exponent", reduction.exponent}}},
  };

  std::ostringstream text;
  text << "domain space  |S| = " << s.to_scientific(3).to_string()
       << "  (39-char strings, lengths 4..253)\n";
  text << "feature space |F| = " << f.to_scientific(3).to_string()
       << "  (product of per-feature value choices)\n";
  text << "reduction |S|/|F| = " << reduction.to_string() << "\n";

  if (!args.spaces_only) {
    if (args.input.empty()) {
      throw fanci::error(fanci::errc::usage,
                         "analyze-preimages needs an input file or --spaces");
    }
    const auto psl = load_psl(args.psl_path);
    fanci::PreimageOptions options;
    options.entropy_tol = args.entropy_tol;
    options.max_candidates = args.max_candidates;

    // Accept either a domain list or a previously extracted feature CSV.
    bool csv = args.format == "csv";
    if (args.format == "auto") {
      std::ifstream probe(args.input);
      if (!probe) {
        throw fanci::error(fanci::errc::io, "cannot open file: " + args.input);
      }
      std::string first_line;
      std::getline(probe, first_line);
      csv = first_line.rfind("domain,", 0) == 0 ||
            first_line.rfind("length,", 0) == 0;
    }

    std::vector<std::string> names;
    std::vector<fanci::RawFeatures> rows;
    if (csv) {
      std::ifstream in(args.input);
      if (!in) {
        throw fanci::error(fanci::errc::io, "cannot open file: " + args.input);
      }
      auto parsed = fanci::read_feature_csv(in);
      names = std::move(parsed.domains);
      rows = std::move(parsed.rows);
    } else {
      const auto set = fanci::load_domains(args.input);
      const fanci::FeatureExtractor extractor(psl);
      for (const auto& raw : set.domains) {
        names.push_back(raw);
        rows.push_back(extractor.extract_raw(fanci::parse_domain(raw, psl)));
      }
    }

    json items = json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json item;
      item["domain"] = names[i];
      try {
        const auto report = fanci::analyze_preimages(rows[i], psl, options);
        item["quantities"] = quantities_json(report.quantities);
        item["suffix_candidates_tf"] = report.suffix_candidates;
        item["entropy_candidates"] = scientific_json(report.entropy_candidates, 3);
        item["partitions_enumerated"] = report.partitions_enumerated;
        item["matching_partitions"] = report.matching_partitions;
        json allocs = json::array();
        for (const auto& a : report.allocations) {
          allocs.push_back(json{{"unique_digits", a.unique_digits},
                                {"unique_vowels", a.unique_vowels},
                                {"unique_others", a.unique_others},
                                {"multiplicity", a.multiplicity}});
        }
        item["allocations"] = std::move(allocs);
        item["dsf_struct"] = scientific_json(report.structure, 3);
        item["dsf_cont"] = scientific_json(report.content, 3);
        item["preimage_bound"] = scientific_json(report.bound, 3);
        text << names[i] << ": bound " << report.bound.to_scientific(3).to_string()
             << " (t_f " << report.suffix_candidates << ", struct "
             << report.structure.to_scientific(3).to_string() << ", cont "
             << report.content.to_scientific(3).to_string() << ")\n";
      } catch (const fanci::error& e) {
        item["error"] = e.what();
        ++failed;
        text << names[i] << ": " << e.what() << "\n";
      }
      items.push_back(std::move(item));
    }
    doc["domains"] = std::move(items);
    doc["inconsistent_rows"] = failed;
  }

  if (!args.output.empty()) {
    auto out = open_output(args.output);
    out << doc.dump(1) << '\n';
  }
  if (args.json_only) {
    std::cout << doc.dump(1) << '\n';
  } else {
    std::cout << text.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// gen-synthetic
// ---------------------------------------------------------------------------

struct GenArgs {
  std::string config_path;
  std::string output;
  std::string name = "synthetic";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> size;
  std::optional<double> weight_typo;
  std::optional<double> weight_reverse;
  std::optional<double> weight_service;
  std::optional<double> weight_random;
  std::optional<std::string> wordlist;
};

int run_gen(const GenArgs& args) {
  fanci::SyntheticConfig cfg;
  if (!args.config_path.empty()) {
    cfg = fanci::SyntheticConfig::from_file(args.config_path);
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.size) cfg.size = *args.size;
  if (args.weight_typo) cfg.weight_typo = *args.weight_typo;
  if (args.weight_reverse) cfg.weight_reverse_lookup = *args.weight_reverse;
  if (args.weight_service) cfg.weight_service = *args.weight_service;
  if (args.weight_random) cfg.weight_random_label = *args.weight_random;
  if (args.wordlist) cfg.wordlist_path = *args.wordlist;
  if (cfg.size == 0) {
    throw fanci::error(fanci::errc::usage, "--size (or config size) required");
  }

  const auto set = fanci::generate_synthetic_source(cfg, args.name);
  if (args.output.empty()) {
    for (const auto& d : set.domains) std::cout << d << '\n';
  } else {
    fanci::write_domain_file(args.output, set);
    std::cerr << "wrote " << set.size() << " domains to " << args.output << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// prepare
// ---------------------------------------------------------------------------

struct PrepareArgs {
  std::string input;
  std::vector<std::string> exclude;
  std::string malicious;
  std::uint64_t subsample_k = 0;
  double test_fraction = 0.20;
  double val_fraction = 0.05;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

int run_prepare(const PrepareArgs& args) {
  auto benign = fanci::load_domains(args.input);

  std::vector<fanci::DomainSet> others;
  for (const auto& path : args.exclude) {
    others.push_back(fanci::load_domains(path));
  }
  fanci::DomainSet malicious;
  if (!args.malicious.empty()) {
    malicious = fanci::load_dga_feed(args.malicious);
  }
  auto cleaned = fanci::dedup_and_exclude(benign, others, malicious);
  if (args.subsample_k > 0) {
    cleaned = fanci::subsample(cleaned, args.subsample_k, args.seed);
  }

  fanci::SplitSpec spec;
  spec.test_fraction = args.test_fraction;
  spec.validation_fraction_of_train = args.val_fraction;
  spec.seed = args.seed;
  const auto splits = fanci::split(cleaned, spec);

  fanci::write_domain_file(args.out_prefix + ".train.txt", splits.train);
  fanci::write_domain_file(args.out_prefix + ".val.txt", splits.validation);
  fanci::write_domain_file(args.out_prefix + ".test.txt", splits.test);
  std::cerr << "prepared " << cleaned.size() << " domains -> train "
            << splits.train.size() << ", val " << splits.validation.size()
            << ", test " << splits.test.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string train_path;
  std::string val_path;
  std::string psl_path;
  std::string out_checkpoint;
  std::string out_history;
  fanci::ModelConfig config;
};

int run_train(const TrainArgs& args) {
  const auto psl = load_psl(args.psl_path);
  const auto train_set = fanci::load_domains(args.train_path);
  const auto val_set = fanci::load_domains(args.val_path);
  const fanci::FeatureExtractor extractor(psl);

  const auto train_pairs = fanci::make_training_pairs(
      train_set, extractor, static_cast<std::size_t>(args.config.max_seq_len));
  const auto val_pairs = fanci::make_training_pairs(
      val_set, extractor, static_cast<std::size_t>(args.config.max_seq_len));

  fanci::DecoderModel model = fanci::build_model(args.config);
  std::cerr << "training on " << train_pairs.size() << " pairs ("
            << model.parameter_count() << " parameters)\n";
  const auto history = fanci::train(model, train_pairs, val_pairs);

  fanci::save_checkpoint(model, args.out_checkpoint);
  if (!args.out_history.empty()) {
    fanci::save_history(history, args.out_history);
  }
  std::cerr << "stopped after " << history.epochs.size() << " epochs ("
            << history.stop_reason << "), best epoch " << history.best_epoch
            << ", best val loss "
            << history.epochs[static_cast<std::size_t>(history.best_epoch - 1)]
                   .validation_loss
            << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// reconstruct
// ---------------------------------------------------------------------------

struct ReconstructArgs {
  std::string checkpoint;
  std::string features_path;
  std::string output;
};

int run_reconstruct(const ReconstructArgs& args) {
  const auto model = fanci::load_checkpoint(args.checkpoint);
  std::ifstream in(args.features_path);
  if (!in) {
    throw fanci::error(fanci::errc::io,
                       "cannot open file: " + args.features_path);
  }
  const auto csv = fanci::read_feature_csv(in);

  std::vector<fanci::FeatureVector> features;
  features.reserve(csv.rows.size());
  for (const auto& raw : csv.rows) {
    features.push_back(fanci::normalize(raw));
  }
  const auto reconstructed = fanci::sample_closed_loop_batch(
      model, features, model.config.max_seq_len);

  const bool with_original =
      !csv.domains.empty() && !csv.domains.front().empty();
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.output.empty()) {
    file = open_output(args.output);
    out = &file;
  }
  if (with_original) {
    *out << "original,reconstructed,edits,normalized\n";
    for (std::size_t i = 0; i < reconstructed.size(); ++i) {
      const auto d = fanci::distance_result(csv.domains[i], reconstructed[i]);
      *out << csv.domains[i] << ',' << reconstructed[i] << ',' << d.edits << ','
           << fanci::format_double(d.normalized) << '\n';
    }
  } else {
    *out << "reconstructed\n";
    for (const auto& r : reconstructed) {
      *out << r << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateArgs {
  std::vector<std::string> model_specs;  // NAME=checkpoint
  std::vector<std::string> set_specs;    // NAME=domains-file
  std::string psl_path;
  double fraction = 0.10;
  std::string out_prefix;
  bool json_only = false;
};

std::pair<std::string, std::string> split_spec(const std::string& spec,
                                               const char* what) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw fanci::error(fanci::errc::usage,
                       std::string(what) + " must look like NAME=PATH: " + spec);
  }
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

int run_evaluate(const EvaluateArgs& args) {
  const auto psl = load_psl(args.psl_path);

  std::vector<std::string> sources;
  std::vector<fanci::DecoderModel> models;
  for (const auto& spec : args.model_specs) {
    const auto [name, path] = split_spec(spec, "--model");
    sources.push_back(name);
    models.push_back(fanci::load_checkpoint(path));
  }

  std::map<std::string, fanci::DomainSet> sets_by_name;
  for (const auto& spec : args.set_specs) {
    const auto [name, path] = split_spec(spec, "--set");
    sets_by_name[name] = fanci::load_domains(path, name);
  }

  std::vector<const fanci::DecoderModel*> model_ptrs;
  std::vector<const fanci::DomainSet*> set_ptrs;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    model_ptrs.push_back(&models[i]);
    const auto it = sets_by_name.find(sources[i]);
    if (it == sets_by_name.end()) {
      throw fanci::error(fanci::errc::usage,
                         "no --set given for source " + sources[i]);
    }
    set_ptrs.push_back(&it->second);
  }

  fanci::EvaluationOptions options;
  options.top_fraction = args.fraction;
  const auto report = fanci::run_cross_evaluation(sources, model_ptrs, set_ptrs,
                                                  psl, options);

  const std::string text = fanci::render_report_text(report);
  const std::string jsonText = fanci::render_report_json(report);
  if (!args.out_prefix.empty()) {
    open_output(args.out_prefix + ".txt") << text;
    open_output(args.out_prefix + ".json") << jsonText;
  }
  std::cout << (args.json_only ? jsonText : text);
  return 0;
}

// ---------------------------------------------------------------------------
// distance
// ---------------------------------------------------------------------------

int run_distance(const std::string& a, const std::string& b, bool json_only) {
  const auto d = fanci::distance_result(a, b);
  if (json_only) {
    json j{{"edits", d.edits}, {"normalized", d.normalized}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "edits: " << d.edits << '\n'
              << "normalized: " << fanci::format_double(d.normalized) << '\n';
  }
  return 0;
}

int exit_code_for(const fanci::error& e) {
  switch (e.code()) {
    case fanci::errc::io:
      return kExitIo;
    case fanci::errc::usage:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FANCI feature extraction and inversion analysis toolkit"};
  app.require_subcommand(1);

  // extract
  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "Domain list -> feature CSV");
  extract->add_option("input", extract_args.input, "domain list file")->required();
  extract->add_option("--psl", extract_args.psl_path, "public suffix list file");
  extract->add_option("--out", extract_args.output, "output CSV (default stdout)");

  // analyze-preimages
  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand(
      "analyze-preimages", "Space sizes and per-domain pre-image bounds");
  analyze->add_option("input", analyze_args.input,
                      "domain list or feature CSV");
  analyze->add_flag("--spaces", analyze_args.spaces_only,
                    "only print the space sizes");
  analyze->add_option("--psl", analyze_args.psl_path, "public suffix list file");
  analyze->add_option("--out", analyze_args.output, "JSON report path");
  analyze->add_option("--format", analyze_args.format, "auto|domains|csv")
      ->check(CLI::IsMember({"auto", "domains", "csv"}));
  analyze->add_option("--entropy-tol", analyze_args.entropy_tol,
                      "entropy matching tolerance (bits)");
  analyze->add_option("--max-candidates", analyze_args.max_candidates,
                      "partition enumeration limit");
  analyze->add_flag("--json-only", analyze_args.json_only,
                    "print JSON instead of text");

  // gen-synthetic
  GenArgs gen_args;
  std::uint64_t gen_seed = 0;
  std::size_t gen_size = 0;
  double gw_typo = 0, gw_rev = 0, gw_srv = 0, gw_rnd = 0;
  std::string gen_wordlist;
  auto* gen = app.add_subcommand("gen-synthetic",
                                 "Generate a synthetic benign NXD source");
  gen->add_option("--config", gen_args.config_path, "key = value config file");
  gen->add_option("--out", gen_args.output, "output domain file");
  gen->add_option("--name", gen_args.name, "source name");
  auto* opt_seed = gen->add_option("--seed", gen_seed, "generator seed");
  auto* opt_size = gen->add_option("--size", gen_size, "number of domains");
  auto* opt_wt = gen->add_option("--weight-typo", gw_typo, "typo mix weight");
  auto* opt_wr =
      gen->add_option("--weight-reverse", gw_rev, "reverse-lookup mix weight");
  auto* opt_ws =
      gen->add_option("--weight-service", gw_srv, "service misconfig mix weight");
  auto* opt_wx =
      gen->add_option("--weight-random", gw_rnd, "random-label mix weight");
  auto* opt_wl = gen->add_option("--wordlist", gen_wordlist,
                                 "wordlist file for the typo generator");

  // prepare
  PrepareArgs prepare_args;
  auto* prepare = app.add_subcommand(
      "prepare", "Dedup, exclude, subsample and split a domain set");
  prepare->add_option("input", prepare_args.input, "benign domain file")->required();
  prepare->add_option("--exclude", prepare_args.exclude,
                      "other benign sets to remove (repeatable)");
  prepare->add_option("--malicious", prepare_args.malicious,
                      "DGA feed CSV (domain,family)");
  prepare->add_option("--subsample", prepare_args.subsample_k,
                      "subsample size after exclusion");
  prepare->add_option("--test-fraction", prepare_args.test_fraction,
                      "test split fraction (default 0.20)");
  prepare->add_option("--val-fraction", prepare_args.val_fraction,
                      "validation fraction of the remainder (default 0.05)");
  prepare->add_option("--seed", prepare_args.seed, "split/subsample seed");
  prepare->add_option("--out-prefix", prepare_args.out_prefix,
                      "output prefix (.train/.val/.test.txt)")
      ->required();

  // train
  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train the reconstructor");
  train_cmd->add_option("--train", train_args.train_path, "training domains")
      ->required();
  train_cmd->add_option("--val", train_args.val_path, "validation domains")
      ->required();
  train_cmd->add_option("--psl", train_args.psl_path, "public suffix list file");
  train_cmd->add_option("--out", train_args.out_checkpoint, "checkpoint path")
      ->required();
  train_cmd->add_option("--history", train_args.out_history,
                        "training history JSON path");
  train_cmd->add_option("--seed", train_args.config.seed, "training seed");
  train_cmd->add_option("--gamma", train_args.config.focal_gamma,
                        "focal loss gamma (default 2)");
  train_cmd->add_option("--lr", train_args.config.learning_rate,
                        "learning rate (default 1e-3)");
  train_cmd->add_option("--batch-size", train_args.config.batch_size,
                        "batch size (default 64)");
  train_cmd->add_option("--max-epochs", train_args.config.max_epochs,
                        "epoch limit (default 1000)");
  train_cmd->add_option("--patience", train_args.config.patience,
                        "early stopping patience (default 10)");
  train_cmd->add_option("--max-len", train_args.config.max_seq_len,
                        "maximum token sequence length (default 255)");
  train_cmd->add_option("--state-width", train_args.config.state_width,
                        "recurrent state width (default 200)");

  // reconstruct
  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct",
                                 "Feature CSV -> closed-loop reconstructions");
  rec->add_option("--model", rec_args.checkpoint, "checkpoint path")->required();
  rec->add_option("input", rec_args.features_path, "feature CSV")->required();
  rec->add_option("--out", rec_args.output, "output CSV (default stdout)");

  // evaluate
  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Cross-source reconstruction matrix and overlap report");
  evaluate->add_option("--model", eval_args.model_specs,
                       "NAME=checkpoint (repeatable)")->required();
  evaluate->add_option("--set", eval_args.set_specs,
                       "NAME=domain-file (repeatable)")->required();
  evaluate->add_option("--psl", eval_args.psl_path, "public suffix list file");
  evaluate->add_option("--fraction", eval_args.fraction,
                       "top fraction to analyze (default 0.10)");
  evaluate->add_option("--out", eval_args.out_prefix,
                       "report prefix (.txt and .json)");
  evaluate->add_flag("--json-only", eval_args.json_only,
                     "print JSON instead of text");

  // distance
  std::string dist_a, dist_b;
  bool dist_json = false;
  auto* distance = app.add_subcommand("distance",
                                      "Edit distance between two strings");
  distance->add_option("a", dist_a, "first string")->required();
  distance->add_option("b", dist_b, "second string")->required();
  distance->add_flag("--json-only", dist_json, "print JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage-error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*extract) return run_extract(extract_args);
    if (*analyze) return run_analyze(analyze_args);
    if (*gen) {
      if (*opt_seed) gen_args.seed = gen_seed;
      if (*opt_size) gen_args.size = gen_size;
      if (*opt_wt) gen_args.weight_typo = gw_typo;
      if (*opt_wr) gen_args.weight_reverse = gw_rev;
      if (*opt_ws) gen_args.weight_service = gw_srv;
      if (*opt_wx) gen_args.weight_random = gw_rnd;
      if (*opt_wl) gen_args.wordlist = gen_wordlist;
      return run_gen(gen_args);
    }
    if (*prepare) return run_prepare(prepare_args);
    if (*train_cmd) return run_train(train_args);
    if (*rec) return run_reconstruct(rec_args);
    if (*evaluate) return run_evaluate(eval_args);
    if (*distance) return run_distance(dist_a, dist_b, dist_json);
  } catch (const fanci::error& e) {
    std::cerr << "error: " << fanci::errc_name(e.code()) << ": " << e.what()
              << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
