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

#include "difftox/core_types.hpp"

#include <algorithm>
#include <cmath>

#include "difftox/errors.hpp"

namespace difftox {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotFound: return "NotFound";
    case Errc::InvalidArtifact: return "InvalidArtifact";
    case Errc::HubUnavailable: return "HubUnavailable";
    case Errc::ModelNotInHub: return "ModelNotInHub";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::ConfigError: return "ConfigError";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::BackendUnavailable: return "BackendUnavailable";
    case Errc::UnknownPass: return "UnknownPass";
    case Errc::InvalidK: return "InvalidK";
    case Errc::ComparatorError: return "ComparatorError";
    case Errc::InvalidBox: return "InvalidBox";
    case Errc::PipelineError: return "PipelineError";
    case Errc::IOError: return "IOError";
    case Errc::ReportError: return "ReportError";
  }
  return "UnknownError";
}

const char* task_name(Task task) {
  switch (task) {
    case Task::Classification: return "classification";
    case Task::Detection: return "detection";
    case Task::TextGeneration: return "text_generation";
    case Task::QuestionAnswering: return "question_answering";
    case Task::Sentiment: return "sentiment";
  }
  return "unknown";
}

std::optional<Task> task_from_name(const std::string& name) {
  if (name == "classification") return Task::Classification;
  if (name == "detection") return Task::Detection;
  if (name == "text_generation") return Task::TextGeneration;
  if (name == "question_answering") return Task::QuestionAnswering;
  if (name == "sentiment") return Task::Sentiment;
  return std::nullopt;
}

const char* pass_category_name(PassCategory category) {
  switch (category) {
    case PassCategory::Fuse: return "fuse";
    case PassCategory::Eliminate: return "eliminate";
    case PassCategory::Rewrite: return "rewrite";
    case PassCategory::Other: return "other";
  }
  return "unknown";
}

std::optional<PassCategory> pass_category_from_name(const std::string& name) {
  if (name == "fuse") return PassCategory::Fuse;
  if (name == "eliminate") return PassCategory::Eliminate;
  if (name == "rewrite") return PassCategory::Rewrite;
  if (name == "other") return PassCategory::Other;
  return std::nullopt;
}

const char* outcome_class_name(OutcomeClass value) {
  switch (value) {
    case OutcomeClass::Clean: return "CLEAN";
    case OutcomeClass::Warning: return "WARNING";
    case OutcomeClass::Divergent: return "DIVERGENT";
    case OutcomeClass::RunCrash: return "RUN_CRASH";
    case OutcomeClass::Malformed: return "MALFORMED";
    case OutcomeClass::OptCrash: return "OPT_CRASH";
  }
  return "UNKNOWN";
}

std::optional<OutcomeClass> outcome_class_from_name(const std::string& name) {
  if (name == "CLEAN") return OutcomeClass::Clean;
  if (name == "WARNING") return OutcomeClass::Warning;
  if (name == "DIVERGENT") return OutcomeClass::Divergent;
  if (name == "RUN_CRASH") return OutcomeClass::RunCrash;
  if (name == "MALFORMED") return OutcomeClass::Malformed;
  if (name == "OPT_CRASH") return OutcomeClass::OptCrash;
  return std::nullopt;
}

const char* warning_flag_name(WarningFlag flag) {
  switch (flag) {
    case WarningFlag::UnusedInitializer: return "UNUSED_INITIALIZER";
    case WarningFlag::VersionChange: return "VERSION_CHANGE";
    case WarningFlag::Other: return "OTHER";
  }
  return "UNKNOWN";
}

std::optional<WarningFlag> warning_flag_from_name(const std::string& name) {
  if (name == "UNUSED_INITIALIZER") return WarningFlag::UnusedInitializer;
  if (name == "VERSION_CHANGE") return WarningFlag::VersionChange;
  if (name == "OTHER") return WarningFlag::Other;
  return std::nullopt;
}

const char* dataset_kind_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::ImageDir: return "image_dir";
    case DatasetKind::TextFilePairs: return "text_file_pairs";
    case DatasetKind::PackagedDatasetRef: return "packaged_dataset_ref";
  }
  return "unknown";
}

std::optional<DatasetKind> dataset_kind_from_name(const std::string& name) {
  if (name == "image_dir") return DatasetKind::ImageDir;
  if (name == "text_file_pairs") return DatasetKind::TextFilePairs;
  if (name == "packaged_dataset_ref") return DatasetKind::PackagedDatasetRef;
  return std::nullopt;
}

const char* payload_kind_name(const Payload& payload) {
  struct Visitor {
    const char* operator()(const ClassificationPayload&) { return "classification"; }
    const char* operator()(const DetectionPayload&) { return "detection"; }
    const char* operator()(const TextPayload&) { return "text"; }
    const char* operator()(const TensorPayload&) { return "tensor"; }
    const char* operator()(const BinaryPayload&) { return "binary"; }
    const char* operator()(const ErrorPayload&) { return "error"; }
  };
  return std::visit(Visitor{}, payload);
}

void PreprocessConfig::validate() const {
  if (image) {
    if (image->target_height <= 0 || image->target_width <= 0) {
      throw Error(Errc::ConfigError, "image target size must be positive");
    }
    if (image->mean.size() != image->std.size()) {
      throw Error(Errc::ConfigError,
                  "image mean and std must have equal length");
    }
    if (image->layout != "NCHW" && image->layout != "NHWC") {
      throw Error(Errc::ConfigError, "image layout must be NCHW or NHWC");
    }
  }
  if (text && text->max_sequence_length <= 0) {
    throw Error(Errc::ConfigError, "max sequence length must be positive");
  }
}

namespace {

template <typename T>
void require_strictly_increasing(const std::vector<T>& values,
                                 const char* what) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i - 1] < values[i])) {
      throw Error(Errc::ConfigError,
                  std::string(what) + " must be strictly increasing");
    }
  }
}

}  // namespace

void ComparatorConfig::validate() const {
  if (top_k_values.empty()) {
    throw Error(Errc::ConfigError, "top_k_values must be non-empty");
  }
  for (int k : top_k_values) {
    if (k <= 0) throw Error(Errc::ConfigError, "top_k values must be positive");
  }
  require_strictly_increasing(top_k_values, "top_k_values");
  for (double t : iou_thresholds) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw Error(Errc::ConfigError, "iou_thresholds must lie in (0, 1]");
    }
  }
  require_strictly_increasing(iou_thresholds, "iou_thresholds");
  if (bleu_max_n <= 0) {
    throw Error(Errc::ConfigError, "bleu_max_n must be positive");
  }
  if (!(tensor_abs_tol >= 0.0) || !std::isfinite(tensor_abs_tol) ||
      !(tensor_rel_tol >= 0.0) || !std::isfinite(tensor_rel_tol)) {
    throw Error(Errc::ConfigError, "tensor tolerances must be finite and >= 0");
  }
}

void ModelDescriptor::validate() const {
  if (id.empty()) throw Error(Errc::ConfigError, "model id must be non-empty");
  if (opset <= 0) throw Error(Errc::ConfigError, "opset must be positive");
  if (std::holds_alternative<HubSource>(source) && opset < 7) {
    throw Error(Errc::ConfigError,
                "hub models require opset >= 7 (runtime compatibility)");
  }
  preprocess.validate();
  comparator_config.validate();
}

void OptimizationResult::validate() const {
  if (status == OptStatus::Ok && !optimized_model) {
    throw Error(Errc::PipelineError,
                "successful optimization must produce an artifact");
  }
  if (status == OptStatus::Crashed && diagnostics.empty()) {
    throw Error(Errc::PipelineError,
                "crashed optimization must carry diagnostics");
  }
}

void InferenceRecord::validate() const {
  if (const auto* cls = std::get_if<ClassificationPayload>(&payload)) {
    for (std::size_t i = 1; i < cls->labels.size(); ++i) {
      const auto& prev = cls->labels[i - 1];
      const auto& cur = cls->labels[i];
      bool ordered = prev.score > cur.score ||
                     (prev.score == cur.score && prev.label < cur.label);
      if (!ordered) {
        throw Error(Errc::PipelineError,
                    "ranked labels must be sorted by score desc, ties by label");
      }
    }
  }
  if (const auto* det = std::get_if<DetectionPayload>(&payload)) {
    for (const auto& d : det->detections) {
      if (d.box.x1 > d.box.x2 || d.box.y1 > d.box.y2) {
        throw Error(Errc::InvalidBox, "detection box must satisfy x1<=x2, y1<=y2");
      }
    }
  }
}

bool payload_equal(const InferenceRecord& a, const InferenceRecord& b) {
  return a.input_id == b.input_id && a.payload == b.payload;
}

void FaultReport::validate() const {
  for (const auto& name : attributed_passes) {
    auto it = std::find_if(per_pass.begin(), per_pass.end(),
                           [&](const PassOutcome& p) { return p.pass_name == name; });
    if (it == per_pass.end()) {
      throw Error(Errc::ReportError,
                  "attributed pass missing from per-pass table: " + name);
    }
    if (it->outcome.is_clean()) {
      throw Error(Errc::ReportError,
                  "attributed pass has a clean outcome: " + name);
    }
  }
}

void DatasetSpec::validate() const {
  if (location.empty()) {
    throw Error(Errc::ConfigError, "dataset location must be non-empty");
  }
  if (limit && *limit == 0) {
    throw Error(Errc::ConfigError, "dataset limit must be positive");
  }
}

void RunConfig::validate() const {
  if (chunks < 1) throw Error(Errc::ConfigError, "chunks must be >= 1");
  for (int k : top_k_values) {
    if (k <= 0) throw Error(Errc::ConfigError, "top_k values must be positive");
  }
  require_strictly_increasing(top_k_values, "top_k_values");
  require_strictly_increasing(iou_thresholds, "iou_thresholds");
  dataset.validate();
  for (const auto& model : models) model.validate();
}

}  // namespace difftox
