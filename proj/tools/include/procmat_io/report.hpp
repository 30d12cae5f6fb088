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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace procmat::io {

enum class ExitCode : int { ok = 0, invalid_input = 1, check_failed = 2 };

const char* status_name(ExitCode code);

/// Everything a command reports. Contains no clock readings, so identical
/// inputs and seeds give identical output.
class RunReport {
 public:
  explicit RunReport(std::string command_line);

  void add_input(std::string_view source, std::string_view digest);
  void set_tolerance(const std::string& key, double value);
  nlohmann::json& results() { return results_; }
  const nlohmann::json& results() const { return results_; }
  void set_exit(ExitCode code, std::string message = {});
  ExitCode exit_code() const { return code_; }

  nlohmann::json to_json() const;
  std::string render(bool as_json) const;

 private:
  std::string command_;
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json tolerances_ = nlohmann::json::object();
  nlohmann::json results_ = nlohmann::json::object();
  ExitCode code_ = ExitCode::ok;
  std::string message_;
};

}  // namespace procmat::io
