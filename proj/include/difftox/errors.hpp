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

#include <stdexcept>
#include <string>

namespace difftox {

// Framework error identities. Expected behaviors of the system under test
// (optimizer crashes, run crashes) are values, never exceptions; these codes
// cover caller mistakes and environment failures only.
enum class Errc {
  NotFound,
  InvalidArtifact,
  HubUnavailable,
  ModelNotInHub,
  ChecksumMismatch,
  ConfigError,
  EmptyDataset,
  BackendUnavailable,
  UnknownPass,
  InvalidK,
  ComparatorError,
  InvalidBox,
  PipelineError,
  IOError,
  ReportError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace difftox
