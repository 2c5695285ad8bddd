// Copyright 2026 The qheat Authors
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

// Flat key = value configuration with dotted namespaces.
//
//   # comment
//   scenario = qubit-theta-eta
//   state.beta_C = 1.13
//   sweep.axis1.max = pi
//
// Numbers accept a small pi notation: "pi", "2*pi", "pi/4", "3*pi/4".

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qheat::scan {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a number with the optional pi notation; throws ConfigError.
double parse_number(std::string_view text, std::string_view what = "value");

class Config {
 public:
  static Config parse(std::string_view text, const std::string& source = "<string>");
  static Config load(const std::string& path);

  /// "key=value" as given on the command line.
  void apply_override(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return entries_.contains(key); }
  std::optional<std::string> raw(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace qheat::scan
