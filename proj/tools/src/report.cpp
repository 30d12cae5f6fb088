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


#include "procmat_io/report.hpp"

#include <cstdio>
#include <sstream>

namespace procmat::io {

using nlohmann::json;

const char* status_name(ExitCode code) {
  switch (code) {
    case ExitCode::ok:
      return "ok";
    case ExitCode::invalid_input:
      return "invalid-input";
    case ExitCode::check_failed:
      return "check-failed";
  }
  return "unknown";
}

RunReport::RunReport(std::string command_line) : command_(std::move(command_line)) {}

void RunReport::add_input(std::string_view source, std::string_view digest) {
  inputs_.push_back({{"source", source}, {"digest", digest}});
}

void RunReport::set_tolerance(const std::string& key, double value) { tolerances_[key] = value; }

void RunReport::set_exit(ExitCode code, std::string message) {
  code_ = code;
  message_ = std::move(message);
}

json RunReport::to_json() const {
  json j;
  j["command"] = command_;
  j["inputs"] = inputs_;
  j["tolerances"] = tolerances_;
  j["results"] = results_;
  j["status"] = status_name(code_);
  j["exit_code"] = static_cast<int>(code_);
  if (!message_.empty()) j["message"] = message_;
  return j;
}

namespace {

std::string scalar(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(std::ostream& os, const json& v, const std::string& prefix) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items())
      flatten(os, child, prefix.empty() ? key : prefix + "." + key);
    return;
  }
  os << "  " << prefix << ": " << scalar(v) << "\n";
}

}  // namespace

std::string RunReport::render(bool as_json) const {
  if (as_json) return to_json().dump(2) + "\n";
  std::ostringstream os;
  os << "command: " << command_ << "\n";
  for (const auto& in : inputs_)
    os << "input: " << in["source"].get<std::string>() << " " << in["digest"].get<std::string>()
       << "\n";
  if (!tolerances_.empty()) {
    os << "tolerances:\n";
    flatten(os, tolerances_, "");
  }
  if (!results_.empty()) {
    os << "results:\n";
    flatten(os, results_, "");
  }
  os << "status: " << status_name(code_);
  if (!message_.empty()) os << " (" << message_ << ")";
  os << "\n";
  return os.str();
}

}  // namespace procmat::io
