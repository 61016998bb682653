#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gabkron/audit.hpp"

namespace gabkron::cli {

enum class Format { text, json };

/// Collects command output. Text mode prints one key=value record per line;
/// JSON mode prints a single object keyed by section.
class Report {
 public:
  explicit Report(Format f);
  ~Report();
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;

  void sizes(const audit::SizeReport& r);
  void table(const std::vector<audit::TableRow>& rows);
  void feasibility(const audit::FeasibilityReport& r);
  void flaw(const audit::FlawReport& r, bool planted_found);
  void lemmas(const std::vector<audit::LemmaResult>& rows);
  void value(const std::string& key, const std::string& v);
  void value(const std::string& key, std::uint64_t v);

  std::string render() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gabkron::cli
