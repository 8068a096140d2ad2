#pragma once

// Line-oriented `key = value` reports.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pkflat {

class Report {
 public:
  void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  /// First value stored under `key`, or an empty string.
  std::string get(std::string_view key) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Lowercase hex SHA-256 of the input bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace pkflat
