// Command-line front end: list, verify, verify-all, sweep, constants,
// congruence, export-registry.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgv/congruence.hpp"
#include "hgv/registry.hpp"
#include "hgv/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

hgv::Rational parse_value(const std::string& text) {
  try {
    return hgv::parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

hgv::Bindings parse_params(const std::vector<std::string>& params) {
  hgv::Bindings out;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected name=num/den, got '" + p + "'");
    out[p.substr(0, eq)] = parse_value(p.substr(eq + 1));
  }
  return out;
}

std::vector<hgv::Rational> parse_values(const std::string& csv) {
  std::vector<hgv::Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_value(item));
  if (out.empty()) throw UsageError("no values given");
  return out;
}

const hgv::Identity& lookup(const std::string& id) {
  const hgv::Identity* found = hgv::find_identity(id);
  if (found == nullptr) throw UsageError("unknown identity '" + id + "'");
  return *found;
}

void print_report(const hgv::VerificationReport& r, bool json) {
  const hgv::ReportRecord rec = hgv::make_record(r);
  if (json) {
    std::cout << nlohmann::json(rec).dump() << '\n';
    return;
  }
  std::cout << std::left << std::setw(18) << rec.id << ' ' << std::setw(17) << rec.status;
  if (!rec.bindings.empty()) {
    std::cout << " {";
    bool first = true;
    for (const auto& [k, v] : rec.bindings) {
      std::cout << (first ? "" : ", ") << k << '=' << v;
      first = false;
    }
    std::cout << '}';
  }
  if (!rec.abs_residual.empty()) std::cout << " residual " << rec.abs_residual;
  std::cout << " terms " << rec.terms_used << " (" << std::fixed << std::setprecision(1)
            << rec.elapsed_ms << " ms)\n";
  std::cout.unsetf(std::ios::floatfield);
  if (!rec.lhs.empty()) {
    std::cout << "  lhs " << rec.lhs << "\n  rhs " << rec.rhs << '\n';
  }
  if (!rec.message.empty()) std::cout << "  " << rec.message << '\n';
}

int report_all(const std::vector<hgv::VerificationReport>& reports, bool json) {
  bool all_ok = true;
  for (const auto& r : reports) {
    print_report(r, json);
    all_ok = all_ok && r.status == hgv::Status::Ok;
  }
  return all_ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arbitrary-precision verifier for hypergeometric and harmonic-number identities"};
  app.require_subcommand(1);

  long digits = 30;
  bool json = false;

  auto* list = app.add_subcommand("list", "List catalog identities");

  std::string verify_id;
  std::vector<std::string> verify_params;
  auto* verify = app.add_subcommand("verify", "Verify one identity instance");
  verify->add_option("--id", verify_id, "Identity id")->required();
  verify->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1L, 100000L));
  verify->add_option("--param", verify_params, "Binding name=num/den (repeatable)");
  verify->add_flag("--json", json, "Emit JSON lines");

  bool serial = false;
  auto* verify_all = app.add_subcommand("verify-all", "Verify every catalog sample");
  verify_all->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1L, 100000L));
  verify_all->add_flag("--json", json, "Emit JSON lines");
  verify_all->add_flag("--serial", serial, "Run without the worker pool");

  std::string sweep_id;
  std::string sweep_param;
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Verify one identity over several parameter values");
  sweep->add_option("--id", sweep_id, "Identity id")->required();
  sweep->add_option("--param", sweep_param, "Parameter to vary")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated num/den values")
      ->required()
      ->allow_extra_args(false);
  sweep->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1L, 100000L));
  sweep->add_flag("--json", json, "Emit JSON lines");
  sweep->add_flag("--serial", serial, "Run without the worker pool");

  std::string constant_name;
  auto* constants = app.add_subcommand("constants", "Evaluate a named constant");
  constants->add_option("--name", constant_name,
                        "pi, catalan, gamma_quarter, sqrt_pi, log(q), sqrt(q), gamma(q), "
                        "polygamma(n,q), sin_pi(q), cos_pi(q), tan_pi(q), pow(q,r)")
      ->required();
  constants->add_option("--digits", digits, "Decimal digits")->check(CLI::Range(1L, 100000L));

  long pmax = 100;
  int which = 0;
  auto* congruence = app.add_subcommand("congruence", "Check the mod p^2 supercongruences");
  congruence->add_option("--pmax", pmax, "Largest prime to test");
  congruence->add_option("--which", which, "Restrict to one case (1-4)")->check(CLI::Range(1, 4));
  congruence->add_flag("--json", json, "Emit JSON lines");
  congruence->add_flag("--serial", serial, "Run without the worker pool");

  std::string output;
  auto* export_registry = app.add_subcommand("export-registry", "Write the catalog as JSON");
  export_registry->add_option("--output", output, "File to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list->parsed()) {
      for (const auto& id : hgv::catalog()) {
        std::cout << std::left << std::setw(18) << id.id << "  " << id.anchor << "\n"
                  << std::setw(18) << "" << "  params: " << id.constraints() << '\n';
      }
      return kExitOk;
    }
    if (verify->parsed()) {
      const hgv::Identity& id = lookup(verify_id);
      hgv::Bindings bindings;
      try {
        bindings = hgv::resolve_bindings(id, parse_params(verify_params));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      return report_all({hgv::verify(id, bindings, digits)}, json);
    }
    if (verify_all->parsed()) {
      return report_all(serial ? hgv::verify_all_serial(digits) : hgv::verify_all(digits), json);
    }
    if (sweep->parsed()) {
      const hgv::Identity& id = lookup(sweep_id);
      const auto values = parse_values(sweep_values);
      std::vector<hgv::VerificationReport> reports;
      try {
        reports = serial ? hgv::sweep_serial(id, sweep_param, values, digits)
                         : hgv::sweep(id, sweep_param, values, digits);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      return report_all(reports, json);
    }
    if (constants->parsed()) {
      const auto name = hgv::parse_constant_name(constant_name);
      if (!name) throw UsageError("unknown constant '" + constant_name + "'");
      try {
        const hgv::Approx v = hgv::constant(*name, digits);
        std::cout << v.value.to_fixed(static_cast<int>(digits)) << '\n';
        return kExitOk;
      } catch (const std::domain_error& e) {
        std::cerr << "domain_error: " << e.what() << '\n';
        return kExitFail;
      }
    }
    if (congruence->parsed()) {
      const auto records = serial ? hgv::scan_serial(pmax, which ? std::optional<int>(which)
                                                                 : std::nullopt)
                                  : hgv::scan(pmax, which ? std::optional<int>(which)
                                                          : std::nullopt);
      bool all_hold = true;
      for (const auto& r : records) {
        all_hold = all_hold && r.result == hgv::CongruenceResult::Holds;
        if (json) {
          std::cout << nlohmann::json(hgv::make_record(r)).dump() << '\n';
        } else {
          std::cout << "case " << r.which << "  p=" << std::setw(5) << std::left << r.p << "  "
                    << hgv::to_string(r.result) << "  (symbol " << r.symbol << ")\n";
        }
      }
      if (!json) std::cout << records.size() << " applicable checks\n";
      return all_hold ? kExitOk : kExitFail;
    }
    if (export_registry->parsed()) {
      const std::string text = hgv::export_registry().dump(2);
      if (output.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream out(output);
        if (!out) throw UsageError("cannot write '" + output + "'");
        out << text << '\n';
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
