#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispatch.hpp"

using namespace opdf;

namespace {

std::string slurp(const std::string& name) {
  const std::filesystem::path path = std::filesystem::path(OPDF_SPEC_DIR) / name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing bundled spec ", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run(const std::string& command, const std::string& spec,
              const std::string& options = "") {
  return run_command(command, spec, options_from_json(options));
}

}  // namespace

TEST_CASE("matrix round trip") {
  const Json j = Json::parse(R"([[1, [0, 1]], [[2.5, -1], 0]])");
  const CMatrix m = matrix_from_json(j);
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK(m(0, 1) == Complex(0, 1));
  CHECK(m(1, 0) == Complex(2.5, -1));
  const CMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).norm() == 0.0);

  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1],[2,3]]")), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[]")), Error);
}

TEST_CASE("group specs") {
  CHECK(group_from_json(Json::parse(R"({"type":"cyclic","n":5})")).order == 5);
  CHECK(group_from_json(Json::parse(R"({"type":"dihedral","n":4})")).order == 8);
  CHECK(group_from_json(Json::parse(R"({"type":"symmetric","n":3})")).order == 6);
  const Json prod = Json::parse(
      R"({"type":"product","factors":[{"type":"cyclic","n":2},{"type":"cyclic","n":3}]})");
  CHECK(group_from_json(prod).order == 6);
  const Json table = Json::parse(R"({"type":"table","mul":[[0,1],[1,0]]})");
  CHECK(group_from_json(table).identity == 0);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"type":"free"})")), Error);
}

TEST_CASE("bundled counterexample spec reproduces its frozen numbers") {
  const std::string spec = slurp("counterexample_z2.json");

  const RunResult pd = run("check-pd", spec);
  CHECK(pd.status == 0);
  CHECK(pd.verdict == "positive-semidefinite-at-tolerance");
  const Json report = Json::parse(pd.report_json);
  const auto eigs = report["certificates"]["eigenvalues"];
  REQUIRE(eigs.size() == 4);
  CHECK(std::abs(eigs[0].get<double>()) < 1e-9);
  CHECK(eigs[1].get<double>() == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(eigs[2].get<double>() == doctest::Approx(2.0));
  CHECK(eigs[3].get<double>() == doctest::Approx(2.0 + std::sqrt(2.0)));

  const RunResult p2 = run("power-pd", spec, R"({"n":2})");
  CHECK(p2.status == 0);
  CHECK(p2.verdict == "indefinite");
  CHECK(Json::parse(p2.report_json)["certificates"]["determinant"].get<double>() ==
        doctest::Approx(-11.0));

  const RunResult p3 = run("power-pd", spec, R"({"n":3})");
  CHECK(p3.verdict == "indefinite");
}

TEST_CASE("bundled final example spec: dilation exists, power incompatible") {
  const std::string spec = slurp("final_example_z2.json");
  CHECK(run("check-pd", spec).verdict == "positive");
  CHECK(run("dilate", spec).verdict == "constructed");
  CHECK(run("verify-dilation", spec).verdict == "valid");
  const RunResult pc = run("power-compat", spec, R"({"n":2})");
  CHECK(pc.status == 0);
  CHECK(pc.verdict == "incompatible");
}

TEST_CASE("bundled S_3 specs") {
  CHECK(run("check-pd", slurp("s3_fix1.json")).verdict == "positive-semidefinite-at-tolerance");
  const RunResult dil = run("dilate", slurp("s3_fix1.json"));
  CHECK(Json::parse(dil.report_json)["certificates"]["dilation"]["dimK"].get<int>() == 3);

  const RunResult rv = run("rep-verify", slurp("s3_permutation_rep.json"));
  CHECK(rv.verdict == "representation");
  CHECK(Json::parse(rv.report_json)["certificates"]["commutative"].get<bool>() == false);
  CHECK(run("rep-power", slurp("s3_permutation_rep.json"), R"({"n":2})").verdict ==
        "not-a-representation");

  const RunResult comp = run("compression", slurp("compression_s3_fix1.json"));
  CHECK(comp.status == 0);
  const Json cj = Json::parse(comp.report_json);
  CHECK(cj["certificates"]["psd"]["positive"].get<bool>());

  const RunResult st = run("rep-structure", slurp("s3_commutative_rep.json"));
  CHECK(st.verdict == "decomposed");
  CHECK(Json::parse(st.report_json)["certificates"]["k"].get<int>() == 2);
}

TEST_CASE("bundled dihedral and cyclic rep specs") {
  for (const char* name : {"d3_commutative_rep.json", "d4_commutative_rep.json"}) {
    const std::string spec = slurp(name);
    CHECK(run("rep-verify", spec).verdict == "representation");
    CHECK(run("rep-structure", spec).verdict == "decomposed");
    CHECK(run("rep-power", spec, R"({"n":2})").verdict == "representation");
  }
  const RunResult z4 = run("rep-structure", slurp("z4_diag_rep.json"));
  CHECK(Json::parse(z4.report_json)["certificates"]["k"].get<int>() == 4);
}

TEST_CASE("bundled matrix specs") {
  const RunResult g = run("gamma", slurp("gamma_paper_z2.json"));
  CHECK(g.status == 0);
  const Json gj = Json::parse(g.report_json);
  CHECK(gj["certificates"]["gamma_factor"]["is_contraction"].get<bool>());
  CHECK(gj["certificates"]["gamma_factor"]["norm"].get<double>() == doctest::Approx(1.0));

  CHECK(run("z2", slurp("z2_counterexample_matrices.json")).verdict == "positive-definite");
  const RunResult z2s = run("z2", slurp("z2_counterexample_matrices.json"), R"({"strict":true})");
  CHECK(z2s.status == 0);
  const Json z2j = Json::parse(z2s.report_json);
  CHECK(z2j["certificates"]["strictly_positive"].get<bool>() == false);
  CHECK(z2j["certificates"]["strict_conjugated_norm"].get<double>() == doctest::Approx(1.0));

  const RunResult hp = run("half-power", slurp("half_power_scalar.json"));
  const Json hj = Json::parse(hp.report_json);
  CHECK(hj["certificates"]["b"][0][0][0].get<double>() == doctest::Approx(0.2588).epsilon(1e-3));

  const RunResult zt = run("z-trunc", slurp("z_trunc_contraction.json"), R"({"level":6})");
  CHECK(zt.verdict == "positive up to level 6");

  const RunResult zz = run("zz-trunc", slurp("zz_brehmer_pair.json"), R"({"level":2})");
  CHECK(zz.verdict == "positive up to level 2");
  CHECK(run("brehmer", slurp("zz_brehmer_pair.json")).verdict == "passes");
  CHECK(run("doubly-commuting", slurp("zz_brehmer_pair.json")).verdict == "doubly-commuting");

  CHECK(run("klein", slurp("klein_ones.json")).verdict == "positive-definite");
  const RunResult tbt = run("three-by-three", slurp("klein_ones.json"));
  CHECK(tbt.status == 3);  // klein spec lacks the 3x3 matrix names

  const RunResult det = run("counterexample-det", "", R"({"n":5})");
  CHECK(det.verdict == "negative");
}

TEST_CASE("exit code contract") {
  CHECK(run("check-pd", "{not json").status == 2);
  CHECK(run("check-pd", "{}").status == 3);
  CHECK(run("nonsense", "{}").status == 3);
  CHECK(run("counterexample-det", "", R"({"n":1})").status == 3);
  // a negative verdict still exits 0
  const std::string spec = slurp("counterexample_z2.json");
  CHECK(run("power-pd", spec, R"({"n":2})").status == 0);
  // unsupported schema version
  CHECK(run("check-pd", R"({"schema_version":"9"})").status == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string spec = slurp("counterexample_z2.json");
  for (const char* cmd : {"check-pd", "dilate", "z2"}) {
    const std::string payload = std::string(cmd) == "z2"
                                    ? slurp("z2_counterexample_matrices.json")
                                    : spec;
    const RunResult a = run(cmd, payload, R"({"seed":42})");
    const RunResult b = run(cmd, payload, R"({"seed":42})");
    CHECK(a.report_json == b.report_json);
  }
  const RunResult s1 = run("rep-structure", slurp("d4_commutative_rep.json"), R"({"seed":7})");
  const RunResult s2 = run("rep-structure", slurp("d4_commutative_rep.json"), R"({"seed":7})");
  CHECK(s1.report_json == s2.report_json);
}

TEST_CASE("tolerance overrides flow through") {
  const std::string spec = slurp("final_example_z2.json");
  // an absurdly loose contraction tolerance should not change this verdict
  CHECK(run("check-pd", spec, R"({"tol":1e-6})").verdict == "positive");
  // spec-file tolerances are honoured
  Json doc = Json::parse(spec);
  doc["tolerances"] = {{"psd_tol", 0.75}};
  CHECK(run("check-pd", doc.dump()).verdict == "positive-semidefinite-at-tolerance");
  doc["tolerances"] = {{"psd_tol", -1.0}};
  CHECK(run("check-pd", doc.dump()).status == 3);
}
