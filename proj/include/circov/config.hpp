#pragma once

#include <map>
#include <optional>
#include <string>

namespace circov {

/// Flat view of a small key-value tree. Text form:
///
///     # comment
///     seed = 7
///     [tree]
///     L = 1013
///     mode = plain
///
/// Keys under a [section] are stored as "section.key". Values are trimmed;
/// double quotes keep leading/trailing spaces and allow \" and \\ escapes.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  /// Canonical text: top-level keys first, then sections in key order.
  std::string serialize() const;

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  /// Entries of `other` replace ours.
  void merge(const Config& other);
  const std::map<std::string, std::string>& values() const { return values_; }
  bool operator==(const Config& o) const { return values_ == o.values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace circov
