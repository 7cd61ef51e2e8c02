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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace difftox {

// ---------------------------------------------------------------------------
// Tasks and pass vocabulary
// ---------------------------------------------------------------------------

enum class Task {
  Classification,
  Detection,
  TextGeneration,
  QuestionAnswering,
  Sentiment,
};

const char* task_name(Task task);
std::optional<Task> task_from_name(const std::string& name);

enum class PassCategory { Fuse, Eliminate, Rewrite, Other };

const char* pass_category_name(PassCategory category);
std::optional<PassCategory> pass_category_from_name(const std::string& name);

// One named optimization pass of the backend under test; the unit of fault
// attribution.
struct PassSpec {
  std::string name;
  PassCategory category = PassCategory::Other;
  bool in_default_bundle = false;
  // Documented by the optimizer as not fully format-compliant. Such passes
  // are flagged in reports but never counted as faults.
  bool known_unstable = false;

  bool operator==(const PassSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Outcome classification
// ---------------------------------------------------------------------------

// Primary classification of one (model, pass-set) evaluation. Ordered by
// severity ascending so the worst of a set is std::max.
enum class OutcomeClass {
  Clean = 0,
  Warning,   // clean behavior, but warnings were observed
  Divergent,
  RunCrash,
  Malformed,
  OptCrash,
};

const char* outcome_class_name(OutcomeClass value);
std::optional<OutcomeClass> outcome_class_from_name(const std::string& name);

enum class WarningFlag {
  UnusedInitializer,
  VersionChange,
  Other,
};

const char* warning_flag_name(WarningFlag flag);
std::optional<WarningFlag> warning_flag_from_name(const std::string& name);

// Primary class plus the warning flag set. Flags never accompany crash
// classes: a crash preempts warning analysis. A flag set on otherwise clean
// behavior makes the primary class Warning.
struct Outcome {
  OutcomeClass primary = OutcomeClass::Clean;
  std::vector<WarningFlag> flags;

  bool is_clean() const { return primary == OutcomeClass::Clean; }
  bool operator==(const Outcome&) const = default;
};

// ---------------------------------------------------------------------------
// Model configuration
// ---------------------------------------------------------------------------

struct ImagePreprocess {
  int target_height = 224;
  int target_width = 224;
  std::string channel_order = "RGB";  // or "BGR"
  std::vector<double> mean;           // per channel; empty = no normalization
  std::vector<double> std;            // same length as mean
  std::string layout = "NCHW";        // or "NHWC"
  std::string resize_policy = "bilinear";

  bool operator==(const ImagePreprocess&) const = default;
};

struct TextPreprocess {
  std::string tokenizer_id;
  int max_sequence_length = 512;
  std::string truncation_policy = "tail";  // or "head"

  bool operator==(const TextPreprocess&) const = default;
};

struct PreprocessConfig {
  std::optional<ImagePreprocess> image;
  std::optional<TextPreprocess> text;
  // When true the model emits logits and the runner normalizes
  // classification scores with a softmax.
  bool output_is_logits = false;

  void validate() const;  // throws Error(ConfigError)
  bool operator==(const PreprocessConfig&) const = default;
};

struct ComparatorConfig {
  std::vector<int> top_k_values = {1, 5, 10};
  std::vector<double> iou_thresholds = {0.5, 0.75, 0.9};
  int bleu_max_n = 4;
  double tensor_abs_tol = 0.0;
  double tensor_rel_tol = 0.0;

  void validate() const;
  bool operator==(const ComparatorConfig&) const = default;
};

struct LocalSource {
  std::string path;
  bool operator==(const LocalSource&) const = default;
};

struct HubSource {
  std::string name;
  std::optional<int> opset;  // absent = highest available
  bool operator==(const HubSource&) const = default;
};

using ModelSource = std::variant<LocalSource, HubSource>;

// Identity and configuration of one model under test.
struct ModelDescriptor {
  std::string id;
  Task task = Task::Classification;
  int opset = 7;
  ModelSource source = LocalSource{};
  std::optional<std::string> checksum;  // sha256 hex, verified when present
  PreprocessConfig preprocess;
  ComparatorConfig comparator_config;

  void validate() const;
  bool operator==(const ModelDescriptor&) const = default;
};

// ---------------------------------------------------------------------------
// Optimization results
// ---------------------------------------------------------------------------

enum class OptStatus { Ok, Crashed };

struct OptimizationResult {
  OptStatus status = OptStatus::Ok;
  std::optional<std::string> optimized_model;  // artifact path
  // Captured error/output streams of the optimizer, verbatim.
  std::string diagnostics;
  std::vector<std::string> applied_passes;
  std::optional<std::int64_t> ir_version_before;
  std::optional<std::int64_t> ir_version_after;

  void validate() const;
  bool operator==(const OptimizationResult&) const = default;
};

struct ValidationResult {
  bool valid = true;
  std::vector<std::string> reasons;

  bool operator==(const ValidationResult&) const = default;
};

struct VersionChangeWarning {
  std::int64_t before = 0;
  std::int64_t after = 0;

  bool operator==(const VersionChangeWarning&) const = default;
};

// ---------------------------------------------------------------------------
// Inference payloads
// ---------------------------------------------------------------------------

struct RankedLabel {
  std::int64_t label = 0;
  double score = 0.0;
  bool operator==(const RankedLabel&) const = default;
};

// Full ranked label list, sorted by score descending; score ties broken by
// ascending label so top-K membership is deterministic.
struct ClassificationPayload {
  std::vector<RankedLabel> labels;
  bool operator==(const ClassificationPayload&) const = default;
};

// Corner coordinates in pixels, x1 <= x2 and y1 <= y2.
struct Box {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
  bool operator==(const Box&) const = default;
};

struct Detection {
  std::int64_t label = 0;
  double score = 0.0;
  Box box;
  bool operator==(const Detection&) const = default;
};

struct DetectionPayload {
  std::vector<Detection> detections;
  bool operator==(const DetectionPayload&) const = default;
};

struct TextPayload {
  std::string text;
  bool operator==(const TextPayload&) const = default;
};

struct TensorPayload {
  std::vector<std::int64_t> shape;
  std::vector<double> data;
  bool operator==(const TensorPayload&) const = default;
};

struct BinaryPayload {
  int value = 0;  // 0 or 1
  bool operator==(const BinaryPayload&) const = default;
};

// A per-input inference failure that did not abort the run.
struct ErrorPayload {
  std::string message;
  bool operator==(const ErrorPayload&) const = default;
};

using Payload = std::variant<ClassificationPayload, DetectionPayload,
                             TextPayload, TensorPayload, BinaryPayload,
                             ErrorPayload>;

const char* payload_kind_name(const Payload& payload);

// Per-input model output plus captured runtime warnings.
struct InferenceRecord {
  std::string input_id;
  Payload payload;
  std::vector<std::string> runtime_warnings;
  double wall_time = 0.0;  // seconds

  void validate() const;
  bool operator==(const InferenceRecord&) const = default;
};

// Equality that ignores timing; this is the notion chunk invariance and
// determinism properties are stated over.
bool payload_equal(const InferenceRecord& a, const InferenceRecord& b);

// ---------------------------------------------------------------------------
// Comparison results
// ---------------------------------------------------------------------------

struct ComparisonRecord {
  std::string input_id;
  std::map<std::string, double> metrics;
  bool diverged = false;

  bool operator==(const ComparisonRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Fault reports
// ---------------------------------------------------------------------------

struct Evidence {
  std::vector<std::string> diverged_input_ids;
  std::string diagnostics;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;

  bool empty() const {
    return diverged_input_ids.empty() && diagnostics.empty() &&
           warnings.empty() && notes.empty();
  }
  bool operator==(const Evidence&) const = default;
};

struct PassOutcome {
  std::string pass_name;
  PassCategory category = PassCategory::Other;
  Outcome outcome;
  Evidence evidence;

  bool operator==(const PassOutcome&) const = default;
};

struct SweepIncompleteness {
  std::string failing_pass;
  std::string reason;
  bool operator==(const SweepIncompleteness&) const = default;
};

struct FaultReport {
  std::string model_id;
  Outcome trigger;
  Evidence trigger_evidence;
  // One entry per registry pass, in registry order.
  std::vector<PassOutcome> per_pass;
  // Non-known-unstable passes with a non-clean per-pass outcome.
  std::vector<std::string> attributed_passes;
  // Known-unstable passes with a non-clean per-pass outcome; informative,
  // never counted as faults.
  std::vector<std::string> excluded_passes;
  std::optional<SweepIncompleteness> incomplete;

  void validate() const;
  bool operator==(const FaultReport&) const = default;
};

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

enum class DatasetKind { ImageDir, TextFilePairs, PackagedDatasetRef };

const char* dataset_kind_name(DatasetKind kind);
std::optional<DatasetKind> dataset_kind_from_name(const std::string& name);

struct DatasetSpec {
  DatasetKind kind = DatasetKind::ImageDir;
  std::string location;
  std::optional<std::size_t> limit;
  // Per-task field mapping for structured datasets, e.g.
  // {"question": "q", "context": "ctx"}.
  std::map<std::string, std::string> input_schema;

  void validate() const;
  bool operator==(const DatasetSpec&) const = default;
};

struct BackendConfig {
  std::string id = "mock";  // "mock" | "process" | "reference"
  std::map<std::string, std::string> settings;

  bool operator==(const BackendConfig&) const = default;
};

struct RunConfig {
  std::vector<ModelDescriptor> models;
  DatasetSpec dataset;
  int chunks = 1;
  std::vector<int> top_k_values = {1, 5, 10};
  std::vector<double> iou_thresholds = {0.5, 0.75, 0.9};
  BackendConfig optimizer_backend;
  BackendConfig runner_backend;
  std::string output_dir = "difftox-out";
  std::optional<std::vector<std::string>> pass_subset;
  unsigned workers = 0;  // 0 = hardware concurrency
  // Cap on the localization sweep input subset (triggering diverged inputs
  // are always included).
  std::size_t sweep_sample_size = 50;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

}  // namespace difftox
