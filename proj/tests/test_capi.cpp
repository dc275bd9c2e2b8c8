#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "opdf.h"

namespace {

std::string slurp(const std::string& name) {
  const std::filesystem::path path = std::filesystem::path(OPDF_SPEC_DIR) / name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing bundled spec ", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("version and command list") {
  CHECK(std::strlen(opdf_version()) > 0);
  const std::string commands = opdf_commands();
  for (const char* expected :
       {"check-pd", "dilate", "verify-dilation", "compression", "power-pd", "power-compat",
        "gamma", "three-by-three", "z2", "z3", "z4", "klein", "half-power", "z-trunc",
        "zz-trunc", "brehmer", "doubly-commuting", "rep-verify", "rep-structure", "rep-power",
        "counterexample-det"})
    CHECK_MESSAGE(commands.find(expected) != std::string::npos, "missing command ", expected);
}

TEST_CASE("run through the C surface") {
  const std::string spec = slurp("counterexample_z2.json");

  opdf_report* report = nullptr;
  const opdf_status st = opdf_run("check-pd", spec.c_str(), nullptr, &report);
  REQUIRE(report != nullptr);
  CHECK(st == OPDF_OK);
  CHECK(opdf_report_status(report) == OPDF_OK);
  CHECK(std::string(opdf_report_verdict(report)) == "positive-semidefinite-at-tolerance");
  const std::string json = opdf_report_json(report);
  CHECK(json.find("\"eigenvalues\"") != std::string::npos);
  opdf_report_free(report);

  opdf_report* power = nullptr;
  CHECK(opdf_run("power-pd", spec.c_str(), "{\"n\":2}", &power) == OPDF_OK);
  CHECK(std::string(opdf_report_verdict(power)) == "indefinite");
  opdf_report_free(power);
}

TEST_CASE("error reporting through the C surface") {
  opdf_report* report = nullptr;
  CHECK(opdf_run("check-pd", "{garbage", nullptr, &report) == OPDF_ERROR_PARSE);
  REQUIRE(report != nullptr);
  CHECK(std::string(opdf_report_verdict(report)) == "error");
  CHECK(std::string(opdf_report_json(report)).find("\"error\"") != std::string::npos);
  opdf_report_free(report);

  opdf_report* bad_options = nullptr;
  CHECK(opdf_run("check-pd", "{}", "{\"bogus\":1}", &bad_options) == OPDF_ERROR_PARSE);
  opdf_report_free(bad_options);

  opdf_report* missing = nullptr;
  CHECK(opdf_run("check-pd", "{}", nullptr, &missing) == OPDF_ERROR_VALIDATION);
  opdf_report_free(missing);

  // consistency class is reachable: null handles stay safe too
  CHECK(std::string(opdf_report_json(nullptr)).empty());
  CHECK(std::string(opdf_report_verdict(nullptr)).empty());
  opdf_report_free(nullptr);
}

TEST_CASE("determinism through the C surface") {
  const std::string spec = slurp("d4_commutative_rep.json");
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    opdf_report* report = nullptr;
    REQUIRE(opdf_run("rep-structure", spec.c_str(), "{\"seed\":5}", &report) == OPDF_OK);
    *out = opdf_report_json(report);
    opdf_report_free(report);
  }
  CHECK(first == second);
}
