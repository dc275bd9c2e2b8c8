#include "opdf.h"

#include <new>
#include <string>

#include "dispatch.hpp"

struct opdf_report {
  std::string json;
  std::string verdict;
  opdf_status status = OPDF_OK;
};

extern "C" {

const char* opdf_version(void) { return "1.0.0"; }

const char* opdf_commands(void) {
  static const std::string joined = [] {
    std::string s;
    for (const auto& c : opdf::command_list()) {
      if (!s.empty()) s += ' ';
      s += c;
    }
    return s;
  }();
  return joined.c_str();
}

opdf_status opdf_run(const char* command, const char* spec_json, const char* options_json,
                     opdf_report** out) {
  if (out) *out = nullptr;
  opdf_report* report = new (std::nothrow) opdf_report;
  if (!report) return OPDF_ERROR_INTERNAL;
  try {
    opdf::RunOptions options;
    if (options_json && options_json[0] != '\0')
      options = opdf::options_from_json(options_json);
    const opdf::RunResult result = opdf::run_command(
        command ? command : "", spec_json ? spec_json : "", options);
    report->json = result.report_json;
    report->verdict = result.verdict;
    report->status = static_cast<opdf_status>(result.status);
  } catch (const opdf::Error& e) {
    // Option parsing failures land here; command execution errors are
    // already folded into the report by run_command.
    opdf::Json err;
    err["error"] = {{"kind", opdf::error_kind_name(e.kind())}, {"message", e.what()}};
    report->json = err.dump(2) + "\n";
    report->verdict = "error";
    report->status = static_cast<opdf_status>(static_cast<int>(e.kind()));
  } catch (const std::exception& e) {
    opdf::Json err;
    err["error"] = {{"kind", "internal"}, {"message", e.what()}};
    report->json = err.dump(2) + "\n";
    report->verdict = "error";
    report->status = OPDF_ERROR_INTERNAL;
  } catch (...) {
    report->json = "{\"error\":{\"kind\":\"internal\",\"message\":\"unknown error\"}}\n";
    report->verdict = "error";
    report->status = OPDF_ERROR_INTERNAL;
  }
  if (out) {
    *out = report;
  } else {
    delete report;
  }
  return out && *out ? (*out)->status : OPDF_ERROR_INTERNAL;
}

const char* opdf_report_json(const opdf_report* report) {
  return report ? report->json.c_str() : "";
}

const char* opdf_report_verdict(const opdf_report* report) {
  return report ? report->verdict.c_str() : "";
}

opdf_status opdf_report_status(const opdf_report* report) {
  return report ? report->status : OPDF_ERROR_INTERNAL;
}

void opdf_report_free(opdf_report* report) { delete report; }

}  // extern "C"
