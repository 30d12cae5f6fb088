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


#include "procmat_io/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "procmat/matrix.hpp"

namespace procmat::io {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "procmat.process/1";

double finite_number(const json& j, std::string_view what) {
  if (!j.is_number()) throw DecodeError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw DecodeError(std::string(what) + ": non-finite number");
  return v;
}

std::size_t positive_dim(const json& j, std::string_view what) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw DecodeError(std::string(what) + ": expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

json parse_or_throw(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DecodeError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, std::string_view what) {
  const std::string name(what);
  if (!j.is_array() || j.empty()) throw DecodeError(name + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw DecodeError(name + ": row 0 is not a non-empty array");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw DecodeError(name + ": row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = row[c];
      const std::string at = name + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2) throw DecodeError(at + ": expected [re, im]");
      m(r, c) = complex(finite_number(e[0], at), finite_number(e[1], at));
    }
  }
  return m;
}

json to_json(const ProcessDocument& doc) {
  const SystemLayout& l = doc.process.layout();
  json j;
  j["format"] = kFormat;
  j["layout"] = {l.d_a1(), l.d_a2(), l.d_b1(), l.d_b2()};
  json meta = json::object();
  if (doc.metadata.name) meta["name"] = *doc.metadata.name;
  if (doc.metadata.seed) meta["seed"] = *doc.metadata.seed;
  if (doc.metadata.provenance) meta["provenance"] = *doc.metadata.provenance;
  j["metadata"] = std::move(meta);
  j["matrix"] = matrix_to_json(doc.process.matrix());
  return j;
}

ProcessDocument from_json(const json& j) {
  if (!j.is_object()) throw DecodeError("document: expected a JSON object");
  if (j.contains("format") && j["format"] != kFormat)
    throw DecodeError("document: unsupported format " + j["format"].dump());
  if (!j.contains("layout") || !j["layout"].is_array() || j["layout"].size() != 4)
    throw DecodeError("document: layout must be [dA1, dA2, dB1, dB2]");
  const json& lj = j["layout"];
  const SystemLayout layout(positive_dim(lj[0], "layout[0]"), positive_dim(lj[1], "layout[1]"),
                            positive_dim(lj[2], "layout[2]"), positive_dim(lj[3], "layout[3]"));
  if (!j.contains("matrix")) throw DecodeError("document: missing matrix");
  CMatrix m = matrix_from_json(j["matrix"], "matrix");
  const std::size_t n = layout.d_total();
  if (m.rows() != n || m.cols() != n)
    throw DecodeError("document: matrix is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " but the layout needs " + std::to_string(n) +
                      "x" + std::to_string(n));
  if (hermiticity_defect(m) > 1e-10)
    throw DecodeError("document: matrix is not Hermitian (defect " +
                      std::to_string(hermiticity_defect(m)) + ")");

  Metadata meta;
  if (j.contains("metadata")) {
    const json& mj = j["metadata"];
    if (!mj.is_object()) throw DecodeError("document: metadata must be an object");
    if (mj.contains("name") && mj["name"].is_string()) meta.name = mj["name"].get<std::string>();
    if (mj.contains("seed") && mj["seed"].is_number_unsigned())
      meta.seed = mj["seed"].get<std::uint64_t>();
    if (mj.contains("provenance") && mj["provenance"].is_string())
      meta.provenance = mj["provenance"].get<std::string>();
  }
  return {ProcessMatrix(layout, std::move(m)), std::move(meta)};
}

std::string encode(const ProcessDocument& doc) { return to_json(doc).dump() + "\n"; }

ProcessDocument decode(std::string_view text) { return from_json(parse_or_throw(text)); }

BasisSet computational_bases(const SystemLayout& layout) {
  return {MeasurementBasis::computational(layout.d_a1()),
          MeasurementBasis::computational(layout.d_a2()),
          MeasurementBasis::computational(layout.d_b1()),
          MeasurementBasis::computational(layout.d_b2())};
}

BasisSet decode_bases(std::string_view text, const SystemLayout& layout) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw DecodeError("bases: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "A1" && key != "A2" && key != "B1" && key != "B2")
      throw DecodeError("bases: unknown factor key '" + key + "'");
  }
  BasisSet set = computational_bases(layout);
  auto load = [&](const char* key, std::size_t dim, MeasurementBasis& out) {
    if (!j.contains(key)) return;
    CMatrix u = matrix_from_json(j[key], std::string("bases.") + key);
    if (u.rows() != dim || u.cols() != dim)
      throw DecodeError(std::string("bases.") + key + ": expected " + std::to_string(dim) + "x" +
                        std::to_string(dim));
    try {
      out = MeasurementBasis(std::move(u));
    } catch (const ContractViolation& e) {
      throw DecodeError(std::string("bases.") + key + ": " + e.what());
    }
  };
  load("A1", layout.d_a1(), set.a1);
  load("A2", layout.d_a2(), set.a2);
  load("B1", layout.d_b1(), set.b1);
  load("B2", layout.d_b2(), set.b2);
  return set;
}

json decomposition_to_json(const CausalDecomposition& dec) {
  json j;
  j["p"] = dec.p;
  j["w_ab"] = dec.w_ab ? matrix_to_json(dec.w_ab->matrix()) : json(nullptr);
  j["w_ba"] = dec.w_ba ? matrix_to_json(dec.w_ba->matrix()) : json(nullptr);
  return j;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_input(const std::filesystem::path& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

}  // namespace procmat::io
