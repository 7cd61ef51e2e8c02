// Copyright 2026 The difftox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "difftox/comparators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "difftox/errors.hpp"

namespace difftox::comparators {

namespace {

// First min(k, size) entries with duplicate labels dropped (first occurrence
// wins). Ranked label lists are expected to be duplicate-free already; the
// dedup keeps rank arithmetic sound if a backend misbehaves.
std::vector<std::int64_t> top_k_unique(const std::vector<std::int64_t>& labels,
                                       int k) {
  std::vector<std::int64_t> out;
  std::unordered_set<std::int64_t> seen;
  for (std::int64_t label : labels) {
    if (out.size() >= static_cast<std::size_t>(k)) break;
    if (seen.insert(label).second) out.push_back(label);
  }
  return out;
}

std::string format_threshold(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

}  // namespace

double kendall_tau_topk(const std::vector<std::int64_t>& ref_labels,
                        const std::vector<std::int64_t>& test_labels, int k) {
  if (k <= 0) throw Error(Errc::InvalidK, "top-K must be positive");
  if (ref_labels.empty() && test_labels.empty()) {
    throw Error(Errc::ComparatorError,
                "Kendall tau undefined for two empty label lists");
  }

  const std::vector<std::int64_t> ref_top = top_k_unique(ref_labels, k);
  const std::vector<std::int64_t> test_top = top_k_unique(test_labels, k);
  if (ref_top == test_top) return 1.0;

  // Union, ref order first, then unseen test labels.
  std::vector<std::int64_t> all = ref_top;
  for (std::int64_t label : test_top) {
    if (std::find(ref_top.begin(), ref_top.end(), label) == ref_top.end()) {
      all.push_back(label);
    }
  }

  const int absent_rank = k + 1;
  auto ranks_in = [&](const std::vector<std::int64_t>& top) {
    std::vector<int> ranks(all.size(), absent_rank);
    for (std::size_t i = 0; i < all.size(); ++i) {
      auto it = std::find(top.begin(), top.end(), all[i]);
      if (it != top.end()) {
        ranks[i] = static_cast<int>(it - top.begin()) + 1;
      }
    }
    return ranks;
  };
  const std::vector<int> ref_rank = ranks_in(ref_top);
  const std::vector<int> test_rank = ranks_in(test_top);

  const std::size_t n = all.size();
  const std::int64_t n0 = static_cast<std::int64_t>(n) * (n - 1) / 2;
  // Ties occur only among absentees, which all share rank K+1.
  const std::int64_t absent_ref = static_cast<std::int64_t>(n - ref_top.size());
  const std::int64_t absent_test = static_cast<std::int64_t>(n - test_top.size());
  const std::int64_t n1 = absent_ref * (absent_ref - 1) / 2;
  const std::int64_t n2 = absent_test * (absent_test - 1) / 2;

  std::int64_t concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int dr = ref_rank[i] - ref_rank[j];
      const int dt = test_rank[i] - test_rank[j];
      if (dr == 0 || dt == 0) continue;
      if ((dr > 0) == (dt > 0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }

  const double denom = std::sqrt(static_cast<double>(n0 - n1) *
                                 static_cast<double>(n0 - n2));
  if (denom == 0.0) return 0.0;  // one side fully tied; lists are unequal here
  return static_cast<double>(concordant - discordant) / denom;
}

ClassificationComparison classification_divergence(
    const std::vector<std::int64_t>& ref_labels,
    const std::vector<std::int64_t>& test_labels,
    const std::vector<int>& top_k_values) {
  ClassificationComparison out;
  for (int k : top_k_values) {
    PerKDivergence entry;
    entry.k = k;
    entry.tau = kendall_tau_topk(ref_labels, test_labels, k);
    entry.diverged = entry.tau < 1.0;
    out.diverged = out.diverged || entry.diverged;
    out.per_k.push_back(entry);
  }
  out.top1_changed = ref_labels.empty() != test_labels.empty() ||
                     (!ref_labels.empty() && ref_labels[0] != test_labels[0]);
  return out;
}

double iou(const Box& a, const Box& b) {
  if (a.x1 > a.x2 || a.y1 > a.y2 || b.x1 > b.x2 || b.y1 > b.y2) {
    throw Error(Errc::InvalidBox, "box must satisfy x1<=x2 and y1<=y2");
  }
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double area_a = (a.x2 - a.x1) * (a.y2 - a.y1);
  const double area_b = (b.x2 - b.x1) * (b.y2 - b.y1);
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;  // degenerate zero-area boxes
  return inter / uni;
}

DetectionMatch match_detections(const std::vector<Detection>& ref,
                                const std::vector<Detection>& test,
                                double threshold) {
  DetectionMatch out;
  std::vector<std::size_t> order(test.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return test[a].score > test[b].score;
  });

  std::vector<bool> ref_claimed(ref.size(), false);
  std::vector<bool> test_matched(test.size(), false);
  for (std::size_t ti : order) {
    double best_iou = 0.0;
    std::optional<std::size_t> best_ref;
    for (std::size_t ri = 0; ri < ref.size(); ++ri) {
      if (ref_claimed[ri] || ref[ri].label != test[ti].label) continue;
      const double overlap = iou(ref[ri].box, test[ti].box);
      if (overlap >= threshold && overlap > best_iou) {
        best_iou = overlap;
        best_ref = ri;
      }
    }
    if (best_ref) {
      ref_claimed[*best_ref] = true;
      test_matched[ti] = true;
      out.pairs.push_back({*best_ref, ti, best_iou});
    }
  }
  for (std::size_t ri = 0; ri < ref.size(); ++ri) {
    if (!ref_claimed[ri]) out.unmatched_ref.push_back(ri);
  }
  for (std::size_t ti = 0; ti < test.size(); ++ti) {
    if (!test_matched[ti]) out.unmatched_test.push_back(ti);
  }
  return out;
}

namespace {

// All-point average precision: area under the exact precision envelope of
// the recall/precision staircase.
double average_precision(const std::vector<std::pair<double, bool>>& ranked,
                         std::size_t total_ref) {
  if (total_ref == 0) return 0.0;
  std::size_t tp = 0, fp = 0;
  std::vector<double> recalls, precisions;
  recalls.reserve(ranked.size());
  precisions.reserve(ranked.size());
  for (const auto& [score, is_tp] : ranked) {
    (void)score;
    if (is_tp) ++tp; else ++fp;
    recalls.push_back(static_cast<double>(tp) / static_cast<double>(total_ref));
    precisions.push_back(static_cast<double>(tp) /
                         static_cast<double>(tp + fp));
  }
  // Precision envelope from the right.
  for (std::size_t i = precisions.size(); i-- > 1;) {
    precisions[i - 1] = std::max(precisions[i - 1], precisions[i]);
  }
  double ap = 0.0, prev_recall = 0.0;
  for (std::size_t i = 0; i < recalls.size(); ++i) {
    if (recalls[i] > prev_recall) {
      ap += (recalls[i] - prev_recall) * precisions[i];
      prev_recall = recalls[i];
    }
  }
  return ap;
}

}  // namespace

DetectionMetrics detection_metrics(const std::vector<DetectionScene>& scenes,
                                   const std::vector<double>& thresholds) {
  DetectionMetrics out;

  std::size_t total_ref = 0, total_test = 0;
  for (const auto& scene : scenes) {
    total_ref += scene.ref.size();
    total_test += scene.test.size();
  }

  double recall_sum = 0.0;
  std::size_t recall_count = 0;

  for (double threshold : thresholds) {
    DetectionThresholdMetrics m;
    m.threshold = threshold;

    std::size_t matched = 0;
    double iou_sum = 0.0;
    // Per class: ranked (score, is_tp) test detections and ref totals.
    struct RankedDet {
      double score;
      bool is_tp;
      const std::string* input_id;
      std::size_t index;
    };
    std::map<std::int64_t, std::vector<RankedDet>> per_class_test;
    std::map<std::int64_t, std::size_t> per_class_ref;

    for (const auto& scene : scenes) {
      const DetectionMatch match =
          match_detections(scene.ref, scene.test, threshold);
      matched += match.pairs.size();
      std::vector<bool> is_tp(scene.test.size(), false);
      for (const auto& pair : match.pairs) {
        iou_sum += pair.iou;
        is_tp[pair.test_index] = true;
      }
      for (const auto& det : scene.ref) ++per_class_ref[det.label];
      for (std::size_t ti = 0; ti < scene.test.size(); ++ti) {
        per_class_test[scene.test[ti].label].push_back(
            {scene.test[ti].score, is_tp[ti], &scene.input_id, ti});
      }
    }

    if (total_ref > 0) {
      m.recall = static_cast<double>(matched) / static_cast<double>(total_ref);
      m.precision = total_test > 0 ? static_cast<double>(matched) /
                                         static_cast<double>(total_test)
                                   : 0.0;
      const double p = *m.precision, r = *m.recall;
      m.f1 = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
      if (matched > 0) m.mean_iou = iou_sum / static_cast<double>(matched);

      double ap_sum = 0.0;
      std::size_t class_count = 0;
      for (const auto& [label, ref_count] : per_class_ref) {
        auto it = per_class_test.find(label);
        std::vector<std::pair<double, bool>> ranked;
        if (it != per_class_test.end()) {
          auto dets = it->second;
          std::sort(dets.begin(), dets.end(),
                    [](const RankedDet& a, const RankedDet& b) {
                      if (a.score != b.score) return a.score > b.score;
                      if (*a.input_id != *b.input_id)
                        return *a.input_id < *b.input_id;
                      return a.index < b.index;
                    });
          for (const auto& det : dets) ranked.push_back({det.score, det.is_tp});
        }
        const double ap = average_precision(ranked, ref_count);
        m.ap_per_class[label] = ap;
        ap_sum += ap;
        ++class_count;
      }
      if (class_count > 0) m.mean_ap = ap_sum / static_cast<double>(class_count);

      recall_sum += *m.recall;
      ++recall_count;
    }

    out.per_threshold.push_back(std::move(m));
  }

  if (recall_count > 0) {
    out.average_recall = recall_sum / static_cast<double>(recall_count);
  }
  return out;
}

namespace {

std::vector<std::string> tokenize_folded(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::unordered_map<std::string, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) {
      if (j > 0) key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu(const std::string& reference_text,
            const std::string& candidate_text, int max_n) {
  if (max_n <= 0) {
    throw Error(Errc::ComparatorError, "BLEU max n-gram order must be positive");
  }
  const std::vector<std::string> ref = tokenize_folded(reference_text);
  const std::vector<std::string> cand = tokenize_folded(candidate_text);
  if (ref.empty()) {
    throw Error(Errc::ComparatorError, "BLEU reference must be non-empty");
  }
  if (cand.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand_grams = ngram_counts(cand, n);
    const auto ref_grams = ngram_counts(ref, n);
    std::int64_t total = 0, clipped = 0;
    for (const auto& [gram, count] : cand_grams) {
      total += count;
      auto it = ref_grams.find(gram);
      if (it != ref_grams.end()) clipped += std::min(count, it->second);
    }
    // Add-one smoothing only where the clipped count is zero; without it a
    // single missing n-gram order zeroes the whole score.
    const double p = clipped > 0
                         ? static_cast<double>(clipped) / static_cast<double>(total)
                         : 1.0 / static_cast<double>(total + 1);
    log_sum += std::log(p);
  }
  double score = std::exp(log_sum / max_n);
  if (cand.size() < ref.size()) {
    score *= std::exp(1.0 - static_cast<double>(ref.size()) /
                                static_cast<double>(cand.size()));
  }
  return score;
}

double binary_diff_rate(const std::vector<int>& ref_labels,
                        const std::vector<int>& test_labels) {
  if (ref_labels.size() != test_labels.size()) {
    throw Error(Errc::ComparatorError,
                "binary label lists must have equal length");
  }
  if (ref_labels.empty()) {
    throw Error(Errc::ComparatorError, "binary label lists must be non-empty");
  }
  std::size_t differing = 0;
  for (std::size_t i = 0; i < ref_labels.size(); ++i) {
    if (ref_labels[i] != test_labels[i]) ++differing;
  }
  return static_cast<double>(differing) /
         static_cast<double>(ref_labels.size());
}

TensorComparison tensor_compare(const TensorPayload& ref,
                                const TensorPayload& test, double abs_tol,
                                double rel_tol) {
  TensorComparison out;
  if (ref.shape != test.shape || ref.data.size() != test.data.size()) {
    out.shape_mismatch = true;
    out.diverged = true;
    return out;
  }
  for (std::size_t i = 0; i < ref.data.size(); ++i) {
    const double a = ref.data[i], b = test.data[i];
    const double diff = std::fabs(a - b);
    out.max_abs_diff = std::max(out.max_abs_diff, diff);
    if (diff > abs_tol + rel_tol * std::fabs(b)) out.diverged = true;
  }
  out.equal = !out.diverged;
  return out;
}

const char* comparator_id_name(ComparatorId id) {
  switch (id) {
    case ComparatorId::KendallTopK: return "kendall_topk";
    case ComparatorId::DetectionPipeline: return "detection_pipeline";
    case ComparatorId::Bleu: return "bleu";
    case ComparatorId::BinaryDiff: return "binary_diff";
    case ComparatorId::TensorCompare: return "tensor_compare";
  }
  return "unknown";
}

ComparatorId select_comparator(Task task) {
  switch (task) {
    case Task::Classification: return ComparatorId::KendallTopK;
    case Task::Detection: return ComparatorId::DetectionPipeline;
    case Task::TextGeneration: return ComparatorId::Bleu;
    case Task::Sentiment: return ComparatorId::BinaryDiff;
    case Task::QuestionAnswering: return ComparatorId::TensorCompare;
  }
  return ComparatorId::TensorCompare;
}

namespace {

std::vector<std::int64_t> ranked_labels(const ClassificationPayload& payload) {
  std::vector<std::int64_t> labels;
  labels.reserve(payload.labels.size());
  for (const auto& entry : payload.labels) labels.push_back(entry.label);
  return labels;
}

// Class ranking of a detection list: labels in score-descending order with
// duplicates dropped (the highest-scored instance represents its class).
std::vector<std::int64_t> ranked_detection_labels(
    const DetectionPayload& payload) {
  std::vector<std::size_t> order(payload.detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return payload.detections[a].score > payload.detections[b].score;
  });
  std::vector<std::int64_t> labels;
  std::unordered_set<std::int64_t> seen;
  for (std::size_t i : order) {
    const std::int64_t label = payload.detections[i].label;
    if (seen.insert(label).second) labels.push_back(label);
  }
  return labels;
}

void insert_per_k(ComparisonRecord& rec, const ClassificationComparison& cmp) {
  for (const auto& entry : cmp.per_k) {
    rec.metrics["kendall_tau@" + std::to_string(entry.k)] = entry.tau;
  }
  rec.metrics["top1_changed"] = cmp.top1_changed ? 1.0 : 0.0;
}

}  // namespace

ComparisonRecord compare_records(const InferenceRecord& ref,
                                 const InferenceRecord& test, Task task,
                                 const ComparatorConfig& config) {
  if (ref.input_id != test.input_id) {
    throw Error(Errc::PipelineError,
                "comparison requires records of the same input: " +
                    ref.input_id + " vs " + test.input_id);
  }
  ComparisonRecord rec;
  rec.input_id = ref.input_id;

  const bool ref_error = std::holds_alternative<ErrorPayload>(ref.payload);
  const bool test_error = std::holds_alternative<ErrorPayload>(test.payload);
  if (ref_error || test_error || ref.payload.index() != test.payload.index()) {
    rec.metrics["payload_error"] = 1.0;
    rec.diverged = true;
    return rec;
  }

  switch (select_comparator(task)) {
    case ComparatorId::KendallTopK: {
      const auto& a = std::get<ClassificationPayload>(ref.payload);
      const auto& b = std::get<ClassificationPayload>(test.payload);
      const auto cmp = classification_divergence(
          ranked_labels(a), ranked_labels(b), config.top_k_values);
      insert_per_k(rec, cmp);
      rec.diverged = cmp.diverged;
      break;
    }
    case ComparatorId::DetectionPipeline: {
      const auto& a = std::get<DetectionPayload>(ref.payload);
      const auto& b = std::get<DetectionPayload>(test.payload);

      if (a.detections.empty() && b.detections.empty()) {
        // Vacuous agreement; there is no ranking or box set to compare.
        rec.metrics["empty_both"] = 1.0;
        rec.diverged = false;
        break;
      }

      const auto rank_cmp = classification_divergence(
          ranked_detection_labels(a), ranked_detection_labels(b),
          config.top_k_values);
      insert_per_k(rec, rank_cmp);
      rec.diverged = rank_cmp.diverged;

      if (a.detections.empty() != b.detections.empty()) {
        rec.diverged = true;
      }
      for (double threshold : config.iou_thresholds) {
        const auto match = match_detections(a.detections, b.detections, threshold);
        const std::string suffix = "@" + format_threshold(threshold);
        const double matched = static_cast<double>(match.pairs.size());
        if (!a.detections.empty()) {
          const double recall = matched / static_cast<double>(a.detections.size());
          const double precision =
              b.detections.empty()
                  ? 0.0
                  : matched / static_cast<double>(b.detections.size());
          rec.metrics["recall" + suffix] = recall;
          rec.metrics["precision" + suffix] = precision;
          rec.metrics["f1" + suffix] =
              (precision + recall) > 0.0
                  ? 2.0 * precision * recall / (precision + recall)
                  : 0.0;
          if (!match.pairs.empty()) {
            double iou_sum = 0.0;
            for (const auto& pair : match.pairs) iou_sum += pair.iou;
            const double mean_iou = iou_sum / matched;
            rec.metrics["mean_iou" + suffix] = mean_iou;
            if (mean_iou < 1.0) rec.diverged = true;
          }
          if (recall < 1.0 || precision < 1.0) rec.diverged = true;
        }
      }
      break;
    }
    case ComparatorId::Bleu: {
      const auto& a = std::get<TextPayload>(ref.payload);
      const auto& b = std::get<TextPayload>(test.payload);
      const double score = bleu(a.text, b.text, config.bleu_max_n);
      rec.metrics["bleu"] = score;
      rec.diverged = score < 1.0;
      break;
    }
    case ComparatorId::BinaryDiff: {
      const auto& a = std::get<BinaryPayload>(ref.payload);
      const auto& b = std::get<BinaryPayload>(test.payload);
      const double rate = binary_diff_rate({a.value}, {b.value});
      rec.metrics["binary_diff_rate"] = rate;
      rec.diverged = rate > 0.0;
      break;
    }
    case ComparatorId::TensorCompare: {
      const auto& a = std::get<TensorPayload>(ref.payload);
      const auto& b = std::get<TensorPayload>(test.payload);
      const auto cmp = tensor_compare(a, b, config.tensor_abs_tol,
                                      config.tensor_rel_tol);
      rec.metrics["max_abs_diff"] = cmp.max_abs_diff;
      rec.metrics["shape_mismatch"] = cmp.shape_mismatch ? 1.0 : 0.0;
      rec.diverged = cmp.diverged;
      break;
    }
  }
  return rec;
}

}  // namespace difftox::comparators
