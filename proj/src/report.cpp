#include "hgv/report.hpp"

namespace hgv {

void to_json(nlohmann::json& j, const ReportRecord& r) {
  j = nlohmann::json{{"id", r.id},
                     {"bindings", r.bindings},
                     {"digits", r.digits},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"abs_residual", r.abs_residual},
                     {"terms_used", r.terms_used},
                     {"elapsed_ms", r.elapsed_ms},
                     {"status", r.status}};
  if (!r.message.empty()) j["message"] = r.message;
}

void from_json(const nlohmann::json& j, ReportRecord& r) {
  j.at("id").get_to(r.id);
  j.at("bindings").get_to(r.bindings);
  j.at("digits").get_to(r.digits);
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  j.at("abs_residual").get_to(r.abs_residual);
  j.at("terms_used").get_to(r.terms_used);
  j.at("elapsed_ms").get_to(r.elapsed_ms);
  j.at("status").get_to(r.status);
  r.message = j.value("message", std::string());
}

ReportRecord make_record(const VerificationReport& report) {
  ReportRecord r;
  r.id = report.id;
  for (const auto& [name, v] : report.bindings) {
    r.bindings[name] = v.get_den() == 1 ? v.get_str() + "/1" : v.get_str();
  }
  r.digits = report.digits;
  const bool evaluated = report.status == Status::Ok || report.status == Status::Fail;
  if (evaluated) {
    r.lhs = report.lhs.value.to_fixed(static_cast<int>(report.digits));
    r.rhs = report.rhs.value.to_fixed(static_cast<int>(report.digits));
    r.abs_residual = report.residual.to_scientific(3);
  }
  r.terms_used = report.terms_used;
  r.elapsed_ms = report.elapsed_ms;
  r.status = to_string(report.status);
  r.message = report.message;
  return r;
}

ReportRecord make_record(const CongruenceRecord& record) {
  ReportRecord r;
  r.id = "supercongruence-" + std::to_string(record.which);
  r.bindings["p"] = std::to_string(record.p) + "/1";
  r.lhs = std::to_string(record.lhs);
  r.rhs = std::to_string(record.rhs);
  const std::uint64_t m = static_cast<std::uint64_t>(record.p) * static_cast<std::uint64_t>(record.p);
  const std::uint64_t diff = record.lhs >= record.rhs ? record.lhs - record.rhs
                                                      : record.lhs + (m - record.rhs);
  r.abs_residual = std::to_string(diff);
  r.status = to_string(record.result);
  return r;
}

nlohmann::json export_registry() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& id : catalog()) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : id.params) {
      params.push_back({{"symbol", p.symbol}, {"constraint", p.constraint}});
    }
    nlohmann::json entry = {{"id", id.id},
                            {"anchor", id.anchor},
                            {"kind", to_string(id.kind)},
                            {"params", params},
                            {"constraints", id.constraints()}};
    if (id.terminating_param) entry["terminating_param"] = *id.terminating_param;
    if (id.limit) {
      entry["limit"] = id.limit->function.to_string();
    } else {
      entry["lhs"] = id.lhs.to_string();
      std::string rhs;
      for (const auto& t : id.rhs) {
        if (!rhs.empty()) rhs += " + ";
        rhs += "[" + t.factor.to_string() + "]";
        if (t.series) rhs += " * sum " + t.series->to_string();
      }
      entry["rhs"] = rhs;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace hgv
