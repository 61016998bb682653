#include "cli/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace gabkron::cli {

using nlohmann::json;

struct Report::Impl {
  Format format;
  std::vector<std::string> lines;
  json doc = json::object();

  void record(const std::string& section, const json& obj, bool array) {
    if (format == Format::json) {
      if (array) {
        doc[section].push_back(obj);
      } else {
        doc[section] = obj;
      }
      return;
    }
    std::ostringstream line;
    line << section;
    for (const auto& [k, v] : obj.items()) {
      line << ' ' << k << '=';
      if (v.is_string()) {
        line << v.get<std::string>();
      } else if (v.is_array()) {
        std::string joined;
        for (const auto& e : v) joined += (joined.empty() ? "" : ";") + e.get<std::string>();
        line << '[' << joined << ']';
      } else {
        line << v.dump();
      }
    }
    lines.push_back(line.str());
  }
};

Report::Report(Format f) : impl_(std::make_unique<Impl>()) { impl_->format = f; }
Report::~Report() = default;

void Report::sizes(const audit::SizeReport& r) {
  json o = {{"set", r.set_name},
            {"variant", std::string(variant_name(r.variant))},
            {"formula", r.formula},
            {"pk_bits", r.pk_bits},
            {"pk_bytes", r.pk_bytes()}};
  if (r.sk_bits) {
    o["sk_bits"] = *r.sk_bits;
    o["sk_bytes"] = r.sk_bytes();
  }
  impl_->record("size", o, true);
}

void Report::table(const std::vector<audit::TableRow>& rows) {
  for (const auto& row : rows) {
    impl_->record("table",
                  {{"table", row.table},
                   {"set", row.set_name},
                   {"quantity", row.quantity},
                   {"expected", row.expected},
                   {"computed", row.computed},
                   {"match", row.match()}},
                  true);
  }
}

void Report::feasibility(const audit::FeasibilityReport& r) {
  impl_->record("feasibility",
                {{"set", r.set_name},
                 {"claimed_t", r.claimed_t},
                 {"bound", r.bound},
                 {"verdict", r.feasible ? "feasible" : "infeasible"},
                 {"violated", r.violated}},
                true);
}

void Report::flaw(const audit::FlawReport& r, bool planted_found) {
  impl_->record("circulant_scrambler",
                {{"trials", r.trials},
                 {"circulant_s_found", r.circulant_found},
                 {"noncirculant_leading_block", r.noncirculant_leading},
                 {"singular_circulant_leading_block", r.singular_leading},
                 {"planted_control_found", planted_found}},
                false);
}

void Report::lemmas(const std::vector<audit::LemmaResult>& rows) {
  for (const auto& l : rows) {
    impl_->record("lemma", {{"name", l.name}, {"trials", l.trials}, {"passes", l.passes}, {"ok", l.ok()}},
                  true);
  }
}

void Report::value(const std::string& key, const std::string& v) {
  if (impl_->format == Format::json) {
    impl_->doc[key] = v;
  } else {
    impl_->lines.push_back(key + "=" + v);
  }
}

void Report::value(const std::string& key, std::uint64_t v) {
  if (impl_->format == Format::json) {
    impl_->doc[key] = v;
  } else {
    impl_->lines.push_back(key + "=" + std::to_string(v));
  }
}

std::string Report::render() const {
  if (impl_->format == Format::json) return impl_->doc.dump(2) + "\n";
  std::string out;
  for (const auto& l : impl_->lines) out += l + "\n";
  return out;
}

}  // namespace gabkron::cli
