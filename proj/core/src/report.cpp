#include "solgeo/report.hpp"

#include <cmath>
#include <cstdio>

namespace solgeo {

ReportWriter::ReportWriter() { kv("schema_version", "1"); }

void ReportWriter::line(const std::string& content) {
  int level = indent_;
  bool marker = false;
  if (!pending_item_.empty() && pending_item_.back() >= 0) {
    level = pending_item_.back();
    pending_item_.back() = -1;  // marker consumed
    marker = true;
  }
  for (int i = 0; i < level; ++i) text_ += "  ";
  if (marker) text_ += "- ";
  text_ += content;
  text_ += '\n';
}

void ReportWriter::begin(const std::string& key) {
  line(key + ":");
  ++indent_;
}

void ReportWriter::end() { --indent_; }

void ReportWriter::begin_item() {
  if (!pending_item_.empty() && pending_item_.back() >= 0) line("-");  // empty item
  pending_item_.push_back(indent_);
  ++indent_;
}

void ReportWriter::end_item() {
  if (pending_item_.back() >= 0) line("-");  // item closed without content
  pending_item_.pop_back();
  --indent_;
}

void ReportWriter::kv(const std::string& key, const std::string& value) {
  line(key + ": " + value);
}

void ReportWriter::kv(const std::string& key, const char* value) {
  kv(key, std::string(value));
}

void ReportWriter::kv(const std::string& key, double value) {
  kv(key, format_double(value));
}

void ReportWriter::kv(const std::string& key, int value) {
  kv(key, std::to_string(value));
}

void ReportWriter::kv(const std::string& key, long long value) {
  kv(key, std::to_string(value));
}

void ReportWriter::kv(const std::string& key, std::size_t value) {
  kv(key, std::to_string(value));
}

void ReportWriter::kv(const std::string& key, bool value) {
  kv(key, value ? "true" : "false");
}

std::string ReportWriter::format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

}  // namespace solgeo
