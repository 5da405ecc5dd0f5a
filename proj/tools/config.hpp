// Copyright 2026 The medol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEDOL_TOOLS_CONFIG_HPP
#define MEDOL_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace medol::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key = value text with [section] headers; keys are stored as
/// "section.key". '#' starts a comment; blank lines are skipped.
/// Duplicate keys are rejected.
class KvConfig {
 public:
  static KvConfig parse(const std::string& text);
  static KvConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.contains(key); }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::optional<double> maybe_double(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Directory of the file this config was loaded from ("" if parsed
  /// from text); relative paths inside the config resolve against it.
  const std::string& base_dir() const { return base_dir_; }
  std::string resolve_path(const std::string& path) const;

 private:
  std::map<std::string, std::string> values_;
  std::string base_dir_;
};

}  // namespace medol::harness

#endif  // MEDOL_TOOLS_CONFIG_HPP
