#pragma once

// Serialized report records (JSON lines) and the registry export.

#include <map>
#include <string>

#include <json.hpp>

#include "hgv/congruence.hpp"
#include "hgv/registry.hpp"

namespace hgv {

struct ReportRecord {
  std::string id;
  std::map<std::string, std::string> bindings;  // symbol -> "num/den"
  long digits = 0;
  std::string lhs;
  std::string rhs;
  std::string abs_residual;
  long terms_used = 0;
  double elapsed_ms = 0;
  std::string status;
  std::string message;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

void to_json(nlohmann::json& j, const ReportRecord& r);
void from_json(const nlohmann::json& j, ReportRecord& r);

ReportRecord make_record(const VerificationReport& report);
ReportRecord make_record(const CongruenceRecord& record);

/// One entry per identity: id, anchor, kind, params, constraints.
nlohmann::json export_registry();

}  // namespace hgv
