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

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "difftox/core_types.hpp"
#include "difftox/orchestrator.hpp"

namespace difftox::runner {

// Half-open dataset slice. Chunks partition [0, dataset_len); every chunk
// except the last has length floor(len/N), the last also absorbs the
// remainder.
struct ChunkRange {
  std::size_t index = 0;
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive

  std::size_t size() const { return end - start; }
  bool operator==(const ChunkRange&) const = default;
};

std::vector<ChunkRange> plan_chunks(std::size_t dataset_len, int n);

// Outcome of executing one batch: either records, or a crash of the
// inference backend itself. A run crash is evidence about the model under
// test, not a framework error.
struct RunOutcome {
  bool crashed = false;
  std::string diagnostics;
  std::vector<InferenceRecord> records;
};

// Inference abstraction. Implementations: the synthetic mock backend and
// the external-process adapter backend.
class RunnerBackend {
 public:
  virtual ~RunnerBackend() = default;
  virtual std::string id() const = 0;
  virtual RunOutcome run_batch(const std::string& model_path,
                               std::span<const orchestrator::DatasetEntry> inputs,
                               Task task) = 0;
};

// Executes one chunk of the dataset through the backend and applies
// framework-side postprocessing (softmax normalization when the model
// declares logit outputs, ranked-label ordering enforcement).
RunOutcome run_inference(RunnerBackend& backend, const std::string& model_path,
                         const orchestrator::Dataset& dataset,
                         const ChunkRange& chunk, const PreprocessConfig& pre,
                         Task task);

// Merges per-chunk records into dataset order. Records are keyed by
// input_id, so chunk execution order does not matter.
std::vector<InferenceRecord> merge_chunk_records(
    const orchestrator::Dataset& dataset,
    std::vector<std::vector<InferenceRecord>> per_chunk);

// Softmax over a score vector; subtracts the max for stability. Exposed for
// tests.
std::vector<double> softmax(std::span<const double> scores);

enum class WarningKind { UnusedInitializer, Other };

const char* warning_kind_name(WarningKind kind);

struct ParsedWarning {
  std::string input_id;
  WarningKind kind = WarningKind::Other;
  // Initializer name for UnusedInitializer warnings.
  std::string subject;
  std::string raw;

  bool operator==(const ParsedWarning&) const = default;
};

// Classifies captured runtime warning lines. Lines matching the runtime's
// unused-initializer message ("Removing initializer 'X'. It is not used by
// any node...") become UnusedInitializer with the initializer id extracted;
// everything else is Other with the raw text preserved.
std::vector<ParsedWarning> parse_runtime_warnings(
    const std::vector<InferenceRecord>& records);

}  // namespace difftox::runner
