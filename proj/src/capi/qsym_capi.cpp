#include "qsym.h"

#include <new>
#include <string>

#include "../core/commands.hpp"

struct qsym_report {
  std::string json_text;
  int status = QSYM_OK;
};

extern "C" {

int qsym_execute(const char* command, const char* request_json,
                 qsym_report** out) {
  if (out == nullptr) return QSYM_USAGE;
  *out = nullptr;
  auto* report = new (std::nothrow) qsym_report;
  if (report == nullptr) return QSYM_NUMERIC;

  try {
    nlohmann::json request = nlohmann::json::object();
    if (request_json != nullptr && request_json[0] != '\0') {
      request = nlohmann::json::parse(request_json, nullptr, false);
      if (request.is_discarded()) {
        report->status = QSYM_USAGE;
        report->json_text =
            nlohmann::json{{"error", "request is not valid JSON"}}.dump();
        *out = report;
        return report->status;
      }
    }
    const qsym::cmd::CommandResult result = qsym::cmd::run_command(
        command != nullptr ? command : "", request);
    report->status = result.exit_code;
    report->json_text = result.report.dump(2);
  } catch (const std::exception& e) {
    report->status = QSYM_NUMERIC;
    report->json_text = nlohmann::json{{"error", e.what()}}.dump();
  }
  *out = report;
  return report->status;
}

const char* qsym_report_json(const qsym_report* report) {
  return report != nullptr ? report->json_text.c_str() : "";
}

int qsym_report_status(const qsym_report* report) {
  return report != nullptr ? report->status : QSYM_USAGE;
}

void qsym_report_free(qsym_report* report) { delete report; }

const char* qsym_version(void) { return "0.1.0"; }

}  // extern "C"
