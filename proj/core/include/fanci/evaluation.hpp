#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fanci/dataset.hpp"
#include "fanci/domain.hpp"
#include "fanci/features.hpp"
#include "fanci/reconstructor.hpp"

namespace fanci {

struct ReconstructionRecord {
  std::string original;
  std::string reconstructed;
  std::size_t edits = 0;
  double normalized = 0.0;
};

struct CellStats {
  std::string training;
  std::string evaluation;
  double mean_edits = 0.0;
  double mean_normalized = 0.0;
  std::size_t count = 0;
};

struct CrossMatrix {
  std::vector<std::string> sources;
  std::vector<CellStats> cells;  // row-major: training x evaluation

  const CellStats& cell(std::size_t training, std::size_t evaluation) const {
    return cells[training * sources.size() + evaluation];
  }
};

struct SourceOverlap {
  std::string name;
  std::size_t domain_count = 0;
  std::size_t unique_fv = 0;
  // Share of this source's samples whose feature vector occurs in every
  // source ("% of Total Data").
  double percent_of_total = 0.0;
};

struct PairOverlap {
  std::string training;
  std::string evaluation;
  std::size_t intersection = 0;  // unique feature vectors in both sets
  // Share of evaluation samples whose feature vector also occurs in the
  // training set ("% of Eval Data").
  double percent_of_eval = 0.0;
};

struct OverlapStats {
  std::vector<SourceOverlap> per_source;
  std::vector<PairOverlap> pairs;  // all ordered pairs, training != evaluation
  std::size_t global_unique_fv = 0;  // feature vectors present in all sources
};

enum class DomainCategory { reverse_lookup, dns_service, other };

struct CategoryBreakdown {
  double share_reverse_lookup = 0.0;
  double share_dns_service = 0.0;
  double share_other = 0.0;
  double mean_normalized = 0.0;
  std::size_t selected = 0;
};

const std::vector<std::string>& default_service_keywords();

// First match wins: reverse lookup (trailing in-addr.arpa / ip6.arpa labels,
// or every non-suffix label digit-only), then service keywords as label
// substrings, else other.
DomainCategory categorize_domain(std::string_view domain,
                                 const PublicSuffixList& psl,
                                 const std::vector<std::string>& keywords);

const char* category_name(DomainCategory category);

// Canonical key for feature-vector set operations: every component rendered
// to 12 significant digits.
std::string canonical_feature_key(const RawFeatures& features);

// Reconstruct every domain of the evaluation set with the model and score it
// against the original. Cell means are exact (compensated summation).
std::pair<std::vector<ReconstructionRecord>, CellStats> evaluate_pairing(
    const DecoderModel& model, const DomainSet& eval_set,
    const PublicSuffixList& psl, const std::string& training_name = {});

struct EvaluationOptions {
  double top_fraction = 0.10;
  std::vector<std::string> service_keywords = default_service_keywords();
};

struct EvaluationReport {
  CrossMatrix matrix;
  OverlapStats overlap;
  CategoryBreakdown top;
  double top_fraction = 0.10;
  // Records per matrix cell, same indexing as matrix.cells.
  std::vector<std::vector<ReconstructionRecord>> records;
};

// One model and one domain set per source; |sources|^2 cells. The
// top-fraction analysis pools the transferability cells (training !=
// evaluation), or every cell when there is a single source.
EvaluationReport run_cross_evaluation(const std::vector<std::string>& sources,
                                      const std::vector<const DecoderModel*>& models,
                                      const std::vector<const DomainSet*>& sets,
                                      const PublicSuffixList& psl,
                                      const EvaluationOptions& options = {});

OverlapStats feature_overlap(const std::vector<std::string>& sources,
                             const std::vector<const DomainSet*>& sets,
                             const PublicSuffixList& psl);

// Records sorted ascending by normalized distance (ties by original string);
// the best ceil(fraction * N) are categorized.
CategoryBreakdown top_fraction_analysis(std::vector<ReconstructionRecord> records,
                                        double fraction,
                                        const PublicSuffixList& psl,
                                        const std::vector<std::string>& keywords);

std::string render_report_text(const EvaluationReport& report);
std::string render_report_json(const EvaluationReport& report);

}  // namespace fanci
