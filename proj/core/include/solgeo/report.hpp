/// @file report.hpp
/// @brief Deterministic nested key-value report writer.
///
/// Reports are plain text trees: `key: value` lines grouped under section
/// headers by two-space indentation, list entries introduced with `- `.
/// The format is fixed (schema_version 1), values are printed with %.10g,
/// and sections appear in insertion order, so a given sequence of writer
/// calls always produces byte-identical output — which makes reports
/// diffable artifacts in CI.

#pragma once

#include <string>
#include <vector>

namespace solgeo {

class ReportWriter {
public:
  /// Starts the document with the schema header.
  ReportWriter();

  /// `key:` section header; subsequent lines are indented one level deeper.
  void begin(const std::string& key);
  void end();

  /// `- ` list item acting as a section (fields of the item go one level in).
  void begin_item();
  void end_item();

  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, const char* value);
  void kv(const std::string& key, double value);
  void kv(const std::string& key, int value);
  void kv(const std::string& key, long long value);
  void kv(const std::string& key, std::size_t value);
  void kv(const std::string& key, bool value);

  /// Locale-independent %.10g with stable spellings for nan/inf.
  static std::string format_double(double value);

  const std::string& str() const { return text_; }

private:
  void line(const std::string& content);

  std::string text_;
  int indent_ = 0;
  /// Depth levels whose next emitted line should carry the `- ` marker.
  std::vector<int> pending_item_;
};

}  // namespace solgeo
