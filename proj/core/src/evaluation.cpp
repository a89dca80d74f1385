#include "fanci/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "fanci/edit_distance.hpp"
#include "fanci/errors.hpp"

namespace fanci {

namespace {

// Neumaier compensated summation; the record order is fixed, so means are
// reproducible bit for bit.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

bool ends_with_labels(const std::vector<std::string>& labels,
                      const std::vector<std::string>& tail) {
  if (labels.size() < tail.size()) return false;
  return std::equal(tail.rbegin(), tail.rend(), labels.rbegin());
}

}  // namespace

const std::vector<std::string>& default_service_keywords() {
  static const std::vector<std::string> keywords = {"dnsbl", "spam", "rbl",
                                                    "bl",    "mx",   "dkim"};
  return keywords;
}

const char* category_name(DomainCategory category) {
  switch (category) {
    case DomainCategory::reverse_lookup: return "reverse-lookup";
    case DomainCategory::dns_service: return "dns-service";
    case DomainCategory::other: return "other";
  }
  return "other";
}

DomainCategory categorize_domain(std::string_view domain,
                                 const PublicSuffixList& psl,
                                 const std::vector<std::string>& keywords) {
  const auto parsed = try_parse_domain(domain, psl);
  if (!parsed) return DomainCategory::other;

  static const std::vector<std::string> kInAddr = {"in-addr", "arpa"};
  static const std::vector<std::string> kIp6 = {"ip6", "arpa"};
  const bool reverse_zone = ends_with_labels(parsed->labels, kInAddr) ||
                            ends_with_labels(parsed->labels, kIp6);
  const bool digits_only =
      !parsed->subdomain_labels.empty() &&
      std::all_of(parsed->subdomain_labels.begin(),
                  parsed->subdomain_labels.end(),
                  [](const std::string& l) { return all_digits(l); });
  if (reverse_zone || digits_only) return DomainCategory::reverse_lookup;

  for (const auto& label : parsed->labels) {
    for (const auto& keyword : keywords) {
      if (label.find(keyword) != std::string::npos) {
        return DomainCategory::dns_service;
      }
    }
  }
  return DomainCategory::other;
}

std::string canonical_feature_key(const RawFeatures& features) {
  std::string key;
  key.reserve(kFeatureCount * 14);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (i > 0) key += '|';
    key += format_double_12(features.values[i]);
  }
  return key;
}

std::pair<std::vector<ReconstructionRecord>, CellStats> evaluate_pairing(
    const DecoderModel& model, const DomainSet& eval_set,
    const PublicSuffixList& psl, const std::string& training_name) {
  const FeatureExtractor extractor(psl);
  std::vector<FeatureVector> features;
  features.reserve(eval_set.size());
  for (const auto& raw : eval_set.domains) {
    const DomainName d = parse_domain(raw, psl);
    features.push_back(extractor.extract_normalized(d));
  }

  // Sample in slices so memory stays bounded for large sets.
  constexpr std::size_t kSliceSize = 512;
  std::vector<ReconstructionRecord> records;
  records.reserve(eval_set.size());
  for (std::size_t begin = 0; begin < features.size(); begin += kSliceSize) {
    const std::size_t end = std::min(begin + kSliceSize, features.size());
    const std::vector<FeatureVector> slice(features.begin() + static_cast<long>(begin),
                                           features.begin() + static_cast<long>(end));
    const auto reconstructed =
        sample_closed_loop_batch(model, slice, model.config.max_seq_len);
    for (std::size_t i = 0; i < reconstructed.size(); ++i) {
      ReconstructionRecord r;
      r.original = eval_set.domains[begin + i];
      r.reconstructed = reconstructed[i];
      const DistanceResult d = distance_result(r.original, r.reconstructed);
      r.edits = d.edits;
      r.normalized = d.normalized;
      records.push_back(std::move(r));
    }
  }

  CellStats stats;
  stats.training = training_name;
  stats.evaluation = eval_set.name;
  stats.count = records.size();
  CompensatedSum edits_sum;
  CompensatedSum norm_sum;
  for (const auto& r : records) {
    edits_sum.add(static_cast<double>(r.edits));
    norm_sum.add(r.normalized);
  }
  if (!records.empty()) {
    stats.mean_edits = edits_sum.value() / static_cast<double>(records.size());
    stats.mean_normalized = norm_sum.value() / static_cast<double>(records.size());
  }
  return {std::move(records), stats};
}

OverlapStats feature_overlap(const std::vector<std::string>& sources,
                             const std::vector<const DomainSet*>& sets,
                             const PublicSuffixList& psl) {
  if (sources.size() != sets.size()) {
    throw error(errc::dimension_mismatch, "source/set count mismatch");
  }
  const FeatureExtractor extractor(psl);
  const std::size_t n = sources.size();

  // Canonical feature keys per source, plus the per-domain key sequence so
  // sample coverage percentages can be computed.
  std::vector<std::unordered_set<std::string>> unique_keys(n);
  std::vector<std::vector<std::string>> domain_keys(n);
  for (std::size_t s = 0; s < n; ++s) {
    domain_keys[s].reserve(sets[s]->size());
    for (const auto& raw : sets[s]->domains) {
      const DomainName d = parse_domain(raw, psl);
      std::string key = canonical_feature_key(extractor.extract_raw(d));
      unique_keys[s].insert(key);
      domain_keys[s].push_back(std::move(key));
    }
  }

  // Feature vectors present in every source.
  std::unordered_set<std::string> global = unique_keys.empty()
                                               ? std::unordered_set<std::string>{}
                                               : unique_keys[0];
  for (std::size_t s = 1; s < n; ++s) {
    std::unordered_set<std::string> next;
    for (const auto& key : global) {
      if (unique_keys[s].count(key)) next.insert(key);
    }
    global = std::move(next);
  }

  OverlapStats out;
  out.global_unique_fv = global.size();
  for (std::size_t s = 0; s < n; ++s) {
    SourceOverlap so;
    so.name = sources[s];
    so.domain_count = sets[s]->size();
    so.unique_fv = unique_keys[s].size();
    std::size_t covered = 0;
    for (const auto& key : domain_keys[s]) {
      if (global.count(key)) ++covered;
    }
    so.percent_of_total =
        so.domain_count > 0
            ? 100.0 * static_cast<double>(covered) / static_cast<double>(so.domain_count)
            : 0.0;
    out.per_source.push_back(std::move(so));
  }

  for (std::size_t train = 0; train < n; ++train) {
    for (std::size_t eval = 0; eval < n; ++eval) {
      if (train == eval) continue;
      PairOverlap po;
      po.training = sources[train];
      po.evaluation = sources[eval];
      const auto& small = unique_keys[train].size() <= unique_keys[eval].size()
                              ? unique_keys[train]
                              : unique_keys[eval];
      const auto& large = unique_keys[train].size() <= unique_keys[eval].size()
                              ? unique_keys[eval]
                              : unique_keys[train];
      for (const auto& key : small) {
        if (large.count(key)) ++po.intersection;
      }
      std::size_t covered = 0;
      for (const auto& key : domain_keys[eval]) {
        if (unique_keys[train].count(key)) ++covered;
      }
      po.percent_of_eval =
          sets[eval]->size() > 0
              ? 100.0 * static_cast<double>(covered) /
                    static_cast<double>(sets[eval]->size())
              : 0.0;
      out.pairs.push_back(std::move(po));
    }
  }
  return out;
}

CategoryBreakdown top_fraction_analysis(std::vector<ReconstructionRecord> records,
                                        double fraction,
                                        const PublicSuffixList& psl,
                                        const std::vector<std::string>& keywords) {
  if (records.empty()) {
    throw error(errc::too_few_samples, "no records for top-fraction analysis");
  }
  if (fraction <= 0.0 || fraction > 1.0) {
    throw error(errc::bad_config, "fraction must lie in (0,1]");
  }
  std::sort(records.begin(), records.end(),
            [](const ReconstructionRecord& a, const ReconstructionRecord& b) {
              if (a.normalized != b.normalized) return a.normalized < b.normalized;
              return a.original < b.original;
            });
  const std::size_t take = static_cast<std::size_t>(std::ceil(
      fraction * static_cast<double>(records.size())));

  CategoryBreakdown out;
  out.selected = take;
  std::size_t reverse = 0, service = 0, other = 0;
  CompensatedSum norm_sum;
  for (std::size_t i = 0; i < take; ++i) {
    norm_sum.add(records[i].normalized);
    switch (categorize_domain(records[i].original, psl, keywords)) {
      case DomainCategory::reverse_lookup: ++reverse; break;
      case DomainCategory::dns_service: ++service; break;
      case DomainCategory::other: ++other; break;
    }
  }
  const double denom = static_cast<double>(take);
  out.share_reverse_lookup = static_cast<double>(reverse) / denom;
  out.share_dns_service = static_cast<double>(service) / denom;
  out.share_other = static_cast<double>(other) / denom;
  out.mean_normalized = norm_sum.value() / denom;
  return out;
}

EvaluationReport run_cross_evaluation(const std::vector<std::string>& sources,
                                      const std::vector<const DecoderModel*>& models,
                                      const std::vector<const DomainSet*>& sets,
                                      const PublicSuffixList& psl,
                                      const EvaluationOptions& options) {
  if (sources.empty() || sources.size() != models.size() ||
      sources.size() != sets.size()) {
    throw error(errc::dimension_mismatch,
                "need one model and one set per source");
  }
  const std::size_t n = sources.size();

  EvaluationReport report;
  report.top_fraction = options.top_fraction;
  report.matrix.sources = sources;
  report.matrix.cells.resize(n * n);
  report.records.resize(n * n);

  for (std::size_t train = 0; train < n; ++train) {
    for (std::size_t eval = 0; eval < n; ++eval) {
      auto [records, stats] =
          evaluate_pairing(*models[train], *sets[eval], psl, sources[train]);
      stats.evaluation = sources[eval];
      const std::size_t idx = train * n + eval;
      report.matrix.cells[idx] = stats;
      report.records[idx] = std::move(records);
    }
  }

  report.overlap = feature_overlap(sources, sets, psl);

  std::vector<ReconstructionRecord> pooled;
  for (std::size_t train = 0; train < n; ++train) {
    for (std::size_t eval = 0; eval < n; ++eval) {
      if (n > 1 && train == eval) continue;  // transferability cells only
      const auto& cell_records = report.records[train * n + eval];
      pooled.insert(pooled.end(), cell_records.begin(), cell_records.end());
    }
  }
  report.top = top_fraction_analysis(std::move(pooled), options.top_fraction,
                                     psl, options.service_keywords);
  return report;
}

namespace {

std::string fixed(double value, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << value;
  return os.str();
}

void pad_to(std::string& s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
}

}  // namespace

std::string render_report_text(const EvaluationReport& report) {
  const std::size_t n = report.matrix.sources.size();
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Training", "Evaluation", "Mean Dam-Leven.", "Mean norm.",
                  "#Unique FV (Training)", "Training x Evaluation",
                  "% of Eval Data", "#Unique FV (All)", "% of Total Data"});

  const auto pair_for = [&](std::size_t train, std::size_t eval) -> const PairOverlap* {
    for (const auto& p : report.overlap.pairs) {
      if (p.training == report.matrix.sources[train] &&
          p.evaluation == report.matrix.sources[eval]) {
        return &p;
      }
    }
    return nullptr;
  };

  for (std::size_t train = 0; train < n; ++train) {
    for (std::size_t eval = 0; eval < n; ++eval) {
      const auto& cell = report.matrix.cell(train, eval);
      std::vector<std::string> row;
      row.push_back(report.matrix.sources[train]);
      row.push_back(report.matrix.sources[eval]);
      row.push_back(fixed(cell.mean_edits, 2));
      row.push_back(fixed(cell.mean_normalized, 2));
      row.push_back(std::to_string(report.overlap.per_source[train].unique_fv));
      if (const PairOverlap* p = pair_for(train, eval)) {
        row.push_back(std::to_string(p->intersection));
        row.push_back(fixed(p->percent_of_eval, 1));
      } else {
        row.push_back("-");
        row.push_back("-");
      }
      row.push_back(std::to_string(report.overlap.global_unique_fv));
      row.push_back(fixed(report.overlap.per_source[train].percent_of_total, 1));
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }

  std::ostringstream os;
  os << "Closed-loop reconstruction performance & feature space overlap\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      std::string cell = rows[r][c];
      pad_to(cell, widths[c] + 2);
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : widths) total += w + 2;
      os << std::string(total - 2, '-') << '\n';
    }
  }

  os << '\n';
  os << "Top " << fixed(report.top_fraction * 100.0, 0)
     << "% reconstructions (" << report.top.selected << " samples)\n";
  os << "  mean normalized distance  " << fixed(report.top.mean_normalized, 4)
     << '\n';
  os << "  reverse-lookup share      " << fixed(report.top.share_reverse_lookup, 4)
     << '\n';
  os << "  dns-service share         " << fixed(report.top.share_dns_service, 4)
     << '\n';
  os << "  other share               " << fixed(report.top.share_other, 4) << '\n';
  return os.str();
}

std::string render_report_json(const EvaluationReport& report) {
  using nlohmann::json;
  json j;
  j["sources"] = report.matrix.sources;

  json cells = json::array();
  for (const auto& cell : report.matrix.cells) {
    cells.push_back(json{{"training", cell.training},
                         {"evaluation", cell.evaluation},
                         {"mean_dam_lev", cell.mean_edits},
                         {"mean_normalized", cell.mean_normalized},
                         {"samples", cell.count}});
  }
  j["cross_matrix"] = std::move(cells);

  json per_source = json::array();
  for (const auto& s : report.overlap.per_source) {
    per_source.push_back(json{{"source", s.name},
                              {"domains", s.domain_count},
                              {"unique_fv", s.unique_fv},
                              {"pct_of_total_data", s.percent_of_total}});
  }
  json pairs = json::array();
  for (const auto& p : report.overlap.pairs) {
    pairs.push_back(json{{"training", p.training},
                         {"evaluation", p.evaluation},
                         {"intersection", p.intersection},
                         {"pct_of_eval_data", p.percent_of_eval}});
  }
  j["feature_space_overlap"] = json{
      {"per_source", std::move(per_source)},
      {"pairs", std::move(pairs)},
      {"unique_fv_all_data", report.overlap.global_unique_fv},
  };

  j["top_fraction"] = json{
      {"fraction", report.top_fraction},
      {"selected", report.top.selected},
      {"mean_normalized", report.top.mean_normalized},
      {"shares",
       json{{"reverse-lookup", report.top.share_reverse_lookup},
            {"dns-service", report.top.share_dns_service},
            {"other", report.top.share_other}}},
  };
  return j.dump(1) + "\n";
}

}  // namespace fanci
