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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "difftox/core_types.hpp"

// Pure metric functions and per-task divergence predicates comparing
// original ("ref") against optimized ("test") model outputs. Everything here
// is stateless and callable from any worker thread.

namespace difftox::comparators {

// ---------------------------------------------------------------------------
// Rank correlation
// ---------------------------------------------------------------------------

// Kendall tau-b over the union of the two top-K label sets. A label absent
// from one list receives rank K+1 in that list; all absentees of a list tie
// at that rank, and the tau-b denominator corrects for the ties. The result
// is 1 exactly when the two top-K lists are identical as ordered sequences.
//
// Degenerate cases (fewer than two comparable pairs, or one side fully
// tied): 1 when the ordered top-K lists are equal, else 0.
//
// Throws Error(InvalidK) for K <= 0 and Error(ComparatorError) when both
// lists are empty.
double kendall_tau_topk(const std::vector<std::int64_t>& ref_labels,
                        const std::vector<std::int64_t>& test_labels, int k);

struct PerKDivergence {
  int k = 0;
  double tau = 0.0;
  bool diverged = false;  // tau < 1
  bool operator==(const PerKDivergence&) const = default;
};

struct ClassificationComparison {
  std::vector<PerKDivergence> per_k;
  bool top1_changed = false;
  bool diverged = false;  // any K diverged
};

// Ranked-label divergence: diverged at K whenever tau(K) < 1.
ClassificationComparison classification_divergence(
    const std::vector<std::int64_t>& ref_labels,
    const std::vector<std::int64_t>& test_labels,
    const std::vector<int>& top_k_values);

// ---------------------------------------------------------------------------
// Detection metrics
// ---------------------------------------------------------------------------

// Intersection over union of two corner-coordinate boxes. Degenerate
// zero-area boxes score 0. Throws Error(InvalidBox) on x1 > x2 or y1 > y2.
double iou(const Box& a, const Box& b);

struct MatchedPair {
  std::size_t ref_index = 0;
  std::size_t test_index = 0;
  double iou = 0.0;
  bool operator==(const MatchedPair&) const = default;
};

struct DetectionMatch {
  std::vector<MatchedPair> pairs;
  std::vector<std::size_t> unmatched_ref;
  std::vector<std::size_t> unmatched_test;
};

// Greedy one-to-one matching with the original model as the reference: test
// detections in score-descending order (ties by index) each claim the
// unclaimed same-label ref detection of highest IoU >= threshold.
DetectionMatch match_detections(const std::vector<Detection>& ref,
                                const std::vector<Detection>& test,
                                double threshold);

// One input's detections on both sides; inputs are aggregated by
// detection_metrics below.
struct DetectionScene {
  std::string input_id;
  std::vector<Detection> ref;
  std::vector<Detection> test;
};

struct DetectionThresholdMetrics {
  double threshold = 0.0;
  // Absent (not zero) when there are no ref detections at all.
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> mean_ap;   // mean AP over classes present in ref
  std::optional<double> mean_iou;  // mean IoU over matched pairs
  std::map<std::int64_t, double> ap_per_class;
};

struct DetectionMetrics {
  std::vector<DetectionThresholdMetrics> per_threshold;
  // Mean recall over the configured thresholds.
  std::optional<double> average_recall;
};

// Dataset-level detection metrics. Precision/recall/F1 are micro-averaged
// over all scenes; AP per class uses all-point precision-recall integration
// over score-ranked test detections across the dataset.
DetectionMetrics detection_metrics(const std::vector<DetectionScene>& scenes,
                                   const std::vector<double>& thresholds);

// ---------------------------------------------------------------------------
// Text metrics
// ---------------------------------------------------------------------------

// BLEU with clipped n-gram precisions for n = 1..max_n (uniform weights),
// brevity penalty exp(1 - ref_len/cand_len) when the candidate is shorter,
// and add-one smoothing applied only to zero-count n-gram precisions.
// Tokenization is whitespace splitting after ASCII case folding.
//
// Empty candidate scores 0; empty reference throws Error(ComparatorError).
double bleu(const std::string& reference_text,
            const std::string& candidate_text, int max_n);

// Fraction of positions at which the two binary label lists differ.
// Throws Error(ComparatorError) on length mismatch.
double binary_diff_rate(const std::vector<int>& ref_labels,
                        const std::vector<int>& test_labels);

// ---------------------------------------------------------------------------
// Tensor comparison
// ---------------------------------------------------------------------------

struct TensorComparison {
  bool equal = false;
  double max_abs_diff = 0.0;
  bool diverged = false;
  bool shape_mismatch = false;
};

// Elementwise |a - b| <= abs_tol + rel_tol * |b| with a from ref and b from
// test. A shape mismatch is reported as divergence evidence, not an error.
TensorComparison tensor_compare(const TensorPayload& ref,
                                const TensorPayload& test, double abs_tol,
                                double rel_tol);

// ---------------------------------------------------------------------------
// Comparator selection and record-level comparison
// ---------------------------------------------------------------------------

enum class ComparatorId {
  KendallTopK,        // classification
  DetectionPipeline,  // detection metrics + ranked-label Kendall
  Bleu,               // text generation; diverged when BLEU < 1
  BinaryDiff,         // sentiment; diverged when rate > 0
  TensorCompare,      // question answering
};

const char* comparator_id_name(ComparatorId id);

// Total over task values.
ComparatorId select_comparator(Task task);

// Compares one input's records under the task-appropriate comparator and
// returns the per-input metric map plus the divergence flag. Mismatched or
// error payloads are themselves divergence evidence.
ComparisonRecord compare_records(const InferenceRecord& ref,
                                 const InferenceRecord& test, Task task,
                                 const ComparatorConfig& config);

}  // namespace difftox::comparators
