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

#include "qheat/scan/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qheat::scan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
  });
}

std::optional<double> plain_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  auto fail = [&]() -> double {
    throw ConfigError("malformed number for " + std::string(what) + ": '" + std::string(text) + "'");
  };
  if (auto v = plain_number(s)) return *v;
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return fail();
  double factor = 1.0;
  std::string_view head = trim(s.substr(0, pi_pos));
  if (!head.empty()) {
    if (head == "-") {
      factor = -1.0;
    } else {
      if (head.back() != '*') return fail();
      head.remove_suffix(1);
      const auto f = plain_number(head);
      if (!f) return fail();
      factor = *f;
    }
  }
  double divisor = 1.0;
  std::string_view tail = trim(s.substr(pi_pos + 2));
  if (!tail.empty()) {
    if (tail.front() != '/') return fail();
    const auto dv = plain_number(tail.substr(1));
    if (!dv || *dv == 0) return fail();
    divisor = *dv;
  }
  return factor * std::numbers::pi / divisor;
}

Config Config::parse(std::string_view text, const std::string& source) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    const std::string where = source + ":" + std::to_string(number);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(v.substr(0, eq)));
    const std::string value(trim(v.substr(eq + 1)));
    if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
    if (cfg.entries_.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    cfg.entries_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  if (!valid_key(key)) throw ConfigError("invalid key '" + key + "' in override");
  entries_[key] = std::string(trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

std::optional<std::string> Config::raw(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double Config::number(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  return parse_number(*v, key);
}

double Config::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long Config::integer(const std::string& key, long long fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  const std::string_view s = trim(*v);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("malformed integer for " + key + ": '" + *v + "'");
  }
  return out;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return raw(key).value_or(fallback);
}

bool Config::flag(const std::string& key, bool fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError("malformed flag for " + key + ": '" + *v + "'");
}

std::vector<double> Config::numbers(const std::string& key) const {
  const auto v = raw(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  std::vector<double> out;
  std::string_view rest = *v;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(rest.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace qheat::scan
