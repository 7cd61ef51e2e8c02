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
#include <string>
#include <string_view>

namespace difftox {

// SHA-256 of a byte string, lowercase hex (64 chars).
std::string sha256_hex(std::string_view bytes);

// SHA-256 of a file's contents. Throws Error(IOError) when unreadable.
std::string sha256_file_hex(const std::filesystem::path& path);

// Deterministic 64-bit hash with a fixed algorithm (FNV-1a + splitmix64
// finalizer). Identical across platforms and runs, unlike std::hash.
std::uint64_t stable_hash(std::string_view bytes);
std::uint64_t stable_hash_combine(std::uint64_t seed, std::uint64_t value);
std::uint64_t stable_hash_combine(std::uint64_t seed, std::string_view bytes);

// Uniform double in [0, 1) derived from a stable hash value.
double unit_from_hash(std::uint64_t h);

std::string to_hex(std::uint64_t value, int digits = 16);

}  // namespace difftox
