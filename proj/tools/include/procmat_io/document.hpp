// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <string_view>

#include <nlohmann/json.hpp>

#include "procmat/basis.hpp"
#include "procmat/errors.hpp"
#include "procmat/process.hpp"
#include "procmat/separability.hpp"

namespace procmat::io {

/// Malformed or inconsistent input document.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while reading or writing.
class IoError : public Error {
 public:
  using Error::Error;
};

struct Metadata {
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> provenance;
};

struct ProcessDocument {
  ProcessMatrix process;
  Metadata metadata;
};

/// Matrix as rows of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j, std::string_view what);

nlohmann::json to_json(const ProcessDocument& doc);
ProcessDocument from_json(const nlohmann::json& j);

/// Serialized with round-trip precision; decode(encode(doc)) reproduces
/// every matrix entry exactly.
std::string encode(const ProcessDocument& doc);

/// Throws DecodeError naming the byte offset for malformed JSON, and for
/// layout mismatches or a non-Hermitian payload.
ProcessDocument decode(std::string_view text);

/// Per-factor measurement bases, all computational unless given.
struct BasisSet {
  MeasurementBasis a1;
  MeasurementBasis a2;
  MeasurementBasis b1;
  MeasurementBasis b2;
};

BasisSet computational_bases(const SystemLayout& layout);

/// `{"A1": U, "B1": U, ...}` with U a unitary in matrix_to_json form; missing
/// keys fall back to the computational basis. Dimensions are checked against
/// `layout`, orthonormality at 1e-10.
BasisSet decode_bases(std::string_view text, const SystemLayout& layout);

nlohmann::json decomposition_to_json(const CausalDecomposition& dec);

/// 64-bit FNV-1a of the raw bytes, as "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

/// Whole file, or standard input for an empty path or "-".
std::string read_input(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it into place, so an
/// interrupted run leaves no partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace procmat::io
