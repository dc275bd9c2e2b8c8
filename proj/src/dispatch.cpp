#include "dispatch.hpp"

#include <algorithm>

namespace opdf {

namespace {

Json eigenvalue_list(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(hermitian));
  Json out = Json::array();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

const Json& need_field(const SpecFile& spec, const char* field) {
  if (!spec.payload.contains(field))
    fail_validation(std::string("spec file is missing the \"") + field + "\" payload");
  return spec.payload.at(field);
}

OperatorFunction need_function(const SpecFile& spec) {
  return function_from_json(need_field(spec, "function"));
}

UnitaryRep need_rep(const SpecFile& spec, const ToleranceConfig& cfg) {
  return rep_from_json(need_field(spec, "rep"), cfg);
}

CMatrix need_matrix(const SpecFile& spec, const char* name) {
  const Json& ms = need_field(spec, "matrices");
  if (!ms.is_object() || !ms.contains(name))
    fail_validation(std::string("\"matrices\" payload is missing \"") + name + "\"");
  return matrix_from_json(ms.at(name));
}

struct Ctx {
  SpecFile spec;
  ToleranceConfig cfg;
  std::uint64_t seed = 0;
  RunOptions options;
  Json certificates = Json::object();
  Json warnings = Json::array();
  std::string verdict;
};

int need_n(const Ctx& ctx) {
  if (!ctx.options.n) fail_validation("this command requires --n");
  if (*ctx.options.n < 1) fail_validation("--n must be at least 1");
  return *ctx.options.n;
}

void run_check_pd(Ctx& ctx) {
  const OperatorFunction f = need_function(ctx.spec);
  const SymmetryReport sym = check_symmetry(f, ctx.cfg);
  const PsdReport psd = is_positive_definite(f, ctx.cfg);
  ctx.verdict = psd_verdict_name(psd.verdict);
  ctx.certificates["symmetry"] = symmetry_report_to_json(sym);
  ctx.certificates["psd"] = psd_report_to_json(psd);
  ctx.certificates["eigenvalues"] = eigenvalue_list(gram_block(f).flat);
}

void run_dilate(Ctx& ctx) {
  const OperatorFunction f = need_function(ctx.spec);
  const NaimarkDilation d = naimark_dilate(f, ctx.cfg);
  ctx.verdict = "constructed";
  ctx.certificates["dilation"] = dilation_to_json(d);
}

void run_verify_dilation(Ctx& ctx) {
  const OperatorFunction f = need_function(ctx.spec);
  NaimarkDilation d;
  if (ctx.spec.payload.contains("dilation")) {
    d = dilation_from_json(ctx.spec.payload.at("dilation"));
  } else {
    d = naimark_dilate(f, ctx.cfg);
    ctx.warnings.push_back("no dilation supplied; verifying a freshly constructed one");
  }
  const DilationReport report = verify_dilation(f, d, ctx.cfg);
  ctx.verdict = report.valid ? "valid" : "invalid";
  Json res;
  res["unitarity"] = report.residuals.unitarity;
  res["identity"] = report.residuals.identity;
  res["homomorphism"] = report.residuals.homomorphism;
  res["vstarv"] = report.residuals.vstarv;
  res["compression"] = report.residuals.compression;
  res["minimality_gap"] = report.residuals.minimality_gap;
  ctx.certificates["residuals"] = std::move(res);
  ctx.certificates["converse_symmetric"] = report.converse_symmetric;
  if (report.converse_symmetric)
    ctx.certificates["converse_psd"] = psd_report_to_json(report.converse);
}

void run_compression(Ctx& ctx) {
  const UnitaryRep rep = need_rep(ctx.spec, ctx.cfg);
  if (!ctx.spec.payload.contains("v"))
    fail_validation("compression requires a \"v\" matrix in the spec file");
  const CMatrix v = matrix_from_json(ctx.spec.payload.at("v"));
  const OperatorFunction f = compression(rep, v, ctx.cfg);
  const PsdReport psd = is_positive_definite(f, ctx.cfg);
  ctx.verdict = psd_verdict_name(psd.verdict);
  Json values = Json::object();
  for (int s = 0; s < f.group.order; ++s) values[std::to_string(s)] = matrix_to_json(f.at(s));
  ctx.certificates["function"] = {{"dim", f.dim}, {"values", std::move(values)}};
  ctx.certificates["psd"] = psd_report_to_json(psd);
}

void run_power_pd(Ctx& ctx) {
  const OperatorFunction f = need_function(ctx.spec);
  const int n = need_n(ctx);
  const PowerPdReport report = power_pd_check(f, n, ctx.cfg);
  if (!report.base_positive)
    ctx.warnings.push_back("the base function is not positive definite");
  ctx.verdict = psd_verdict_name(report.hadamard_route.verdict);
  ctx.certificates["n"] = n;
  ctx.certificates["hadamard_route"] = psd_report_to_json(report.hadamard_route);
  ctx.certificates["direct_route"] = psd_report_to_json(report.direct_route);
  ctx.certificates["route_deviation"] = report.route_deviation;
  const BlockGram gram = gram_block(power_map(f, n));
  ctx.certificates["determinant"] = std::real(gram.flat.determinant());
  ctx.certificates["eigenvalues"] = eigenvalue_list(gram.flat);
}

void run_power_compat(Ctx& ctx) {
  const OperatorFunction f = need_function(ctx.spec);
  const int n = need_n(ctx);
  NaimarkDilation d;
  if (ctx.spec.payload.contains("dilation")) {
    d = dilation_from_json(ctx.spec.payload.at("dilation"));
  } else {
    d = naimark_dilate(f, ctx.cfg);
  }
  const PowerCompatReport report = power_compatibility(f, d, n, ctx.cfg);
  if (!report.preconditions_met) {
    ctx.verdict = "precondition-not-met";
    ctx.certificates["precondition_failure"] = report.precondition_failure;
  } else {
    ctx.verdict = report.compatible ? "compatible" : "incompatible";
  }
  ctx.certificates["n"] = n;
  ctx.certificates["power_function_positive"] = report.power_function_positive;
  ctx.certificates["power_rep_valid"] = report.power_rep_valid;
  ctx.certificates["dilation_route_residual"] = report.dilation_route_residual;
  ctx.certificates["function_route_residual"] = report.function_route_residual;
}

void run_gamma(Ctx& ctx) {
  const GammaFactor g = gamma_factor(need_matrix(ctx.spec, "a"), need_matrix(ctx.spec, "b"),
                                     need_matrix(ctx.spec, "c"), ctx.cfg);
  ctx.verdict = psd_verdict_name(g.block_psd.verdict);
  ctx.certificates["gamma_factor"] = gamma_factor_to_json(g);
}

void run_three_by_three(Ctx& ctx) {
  const ThreeByThreeReport report =
      factor_3x3(need_matrix(ctx.spec, "a"), need_matrix(ctx.spec, "b"),
                 need_matrix(ctx.spec, "r"), need_matrix(ctx.spec, "c"),
                 need_matrix(ctx.spec, "bp"), need_matrix(ctx.spec, "d"), ctx.cfg);
  ctx.verdict = psd_verdict_name(report.oracle.verdict);
  ctx.certificates["oracle"] = psd_report_to_json(report.oracle);
  ctx.certificates["corner_left"] = psd_report_to_json(report.corner_left);
  ctx.certificates["corner_right"] = psd_report_to_json(report.corner_right);
  if (report.failed_corner != 0) {
    ctx.certificates["failed_corner"] = report.failed_corner;
  } else {
    ctx.certificates["gamma"] = gamma_factor_to_json(report.gamma);
    ctx.certificates["gamma_prime"] = gamma_factor_to_json(report.gamma_prime);
    ctx.certificates["gamma_r"] = matrix_to_json(report.gamma_r);
    ctx.certificates["gamma_r_norm"] = report.gamma_r_norm;
    ctx.certificates["reconstruction_residual"] = report.reconstruction_residual;
  }
}

void run_z2(Ctx& ctx) {
  const Z2Report report = z2_criterion(need_matrix(ctx.spec, "t0"), need_matrix(ctx.spec, "t1"),
                                       ctx.cfg, ctx.options.strict);
  ctx.verdict = report.positive ? "positive-definite" : "not-positive-definite";
  ctx.certificates["oracle"] = psd_report_to_json(report.oracle);
  ctx.certificates["t0_psd"] = psd_report_to_json(report.t0_psd);
  ctx.certificates["gamma_route"] = report.gamma_route;
  ctx.certificates["pm_route"] = report.pm_route;
  ctx.certificates["function_route"] = report.function_route;
  ctx.certificates["t1_norm"] = report.t1_norm;
  if (report.t0_is_identity) ctx.certificates["t0_is_identity"] = true;
  if (report.strict_requested) {
    ctx.certificates["strict_conjugated_norm"] = report.strict_conjugated_norm;
    ctx.certificates["strictly_positive"] = report.strictly_positive;
  }
}

void run_z3(Ctx& ctx) {
  const Z3Report report = z3_criterion(need_matrix(ctx.spec, "t0"), need_matrix(ctx.spec, "t1"),
                                       ctx.cfg, ctx.options.strict);
  ctx.verdict = report.positive ? "positive-definite" : "not-positive-definite";
  ctx.certificates["oracle"] = psd_report_to_json(report.oracle);
  ctx.certificates["gamma_r_norm"] = report.factorization.gamma_r_norm;
  ctx.certificates["reconstruction_residual"] = report.factorization.reconstruction_residual;
  if (report.corollary_evaluated) {
    ctx.certificates["corollary_gamma_norm"] = report.corollary_gamma_norm;
    ctx.certificates["corollary_residual"] = report.corollary_residual;
  }
  if (report.strict_requested) ctx.certificates["strict_gamma_norm"] = report.strict_gamma_norm;
}

void run_z4(Ctx& ctx) {
  const Z4Report report =
      z4_criterion(need_matrix(ctx.spec, "t1"), need_matrix(ctx.spec, "t2"), ctx.cfg);
  ctx.verdict = report.positive ? "positive-definite" : "not-positive-definite";
  ctx.certificates["oracle"] = psd_report_to_json(report.oracle);
  ctx.certificates["t1_norm"] = report.t1_norm;
  ctx.certificates["i_plus_t2"] = psd_report_to_json(report.i_plus_t2);
  ctx.certificates["i_minus_t2"] = psd_report_to_json(report.i_minus_t2);
  ctx.certificates["gamma_plus"] = gamma_factor_to_json(report.gamma_plus);
  ctx.certificates["gamma_minus_norm"] = report.gamma_minus_norm;
  ctx.certificates["gamma_minus_residual"] = report.gamma_minus_residual;
  if (report.condition3_evaluated) {
    Json c3;
    c3["gamma"] = matrix_to_json(report.condition3_gamma);
    c3["gamma_norm"] = report.condition3_gamma_norm;
    c3["self_adjoint_defect"] = report.condition3_self_adjoint_defect;
    c3["eq1_residual"] = report.eq1_residual;
    c3["eq2_residual"] = report.eq2_residual;
    ctx.certificates["condition3"] = std::move(c3);
  }
}

void run_klein(Ctx& ctx) {
  const KleinReport report = klein_criterion(need_matrix(ctx.spec, "t1"),
                                             need_matrix(ctx.spec, "t2"),
                                             need_matrix(ctx.spec, "t3"), ctx.cfg);
  ctx.verdict = report.positive ? "positive-definite" : "not-positive-definite";
  ctx.certificates["oracle"] = psd_report_to_json(report.oracle);
  ctx.certificates["t1_contraction"] = report.t1_contraction;
  ctx.certificates["i_plus_t2"] = psd_report_to_json(report.i_plus_t2);
  ctx.certificates["i_minus_t2"] = psd_report_to_json(report.i_minus_t2);
  ctx.certificates["gamma_plus"] = gamma_factor_to_json(report.gamma_plus);
  ctx.certificates["gamma_minus"] = gamma_factor_to_json(report.gamma_minus);
}

void run_half_power(Ctx& ctx) {
  const HalfPowerResult result = half_power(need_matrix(ctx.spec, "t"), ctx.cfg);
  ctx.verdict = "computed";
  ctx.certificates["b"] = matrix_to_json(result.b);
  ctx.certificates["top_left_residual"] = result.top_left_residual;
  ctx.certificates["bottom_right_residual"] = result.bottom_right_residual;
  ctx.certificates["reconstruction_residual"] = result.reconstruction_residual;
}

void run_z_trunc(Ctx& ctx) {
  const int level = ctx.options.level.value_or(6);
  const ZTruncationReport report = z_truncation(need_matrix(ctx.spec, "p"), level, ctx.cfg);
  ctx.verdict = report.positive_up_to_level()
                    ? "positive up to level " + std::to_string(level)
                    : "indefinite";
  ctx.certificates["level"] = level;
  ctx.certificates["psd"] = psd_report_to_json(report.psd);
  ctx.certificates["p_norm"] = report.p_norm;
  ctx.certificates["resolvent_identity_residual"] = report.resolvent_identity_residual;
  ctx.warnings.push_back("positivity checked up to level " + std::to_string(level) +
                         " only; this is necessary, not sufficient, for positivity on Z");
}

void run_zz_trunc(Ctx& ctx) {
  const int level = ctx.options.level.value_or(3);
  const ZZTruncationReport report =
      zz_truncation(need_matrix(ctx.spec, "t1"), need_matrix(ctx.spec, "t2"), level, ctx.cfg);
  ctx.verdict = report.positive_up_to_level()
                    ? "positive up to level " + std::to_string(level)
                    : "indefinite";
  ctx.certificates["level"] = level;
  ctx.certificates["psd"] = psd_report_to_json(report.psd);
  ctx.certificates["commutator_norm"] = report.commutator_norm;
  ctx.certificates["row_structure_residual"] = report.row_structure_residual;
  ctx.warnings.push_back("positivity checked up to level " + std::to_string(level) +
                         " only; this is necessary, not sufficient, for positivity on Z+Z");
}

void run_brehmer(Ctx& ctx) {
  const BrehmerReport report = brehmer_check(need_matrix(ctx.spec, "t1"),
                                             need_matrix(ctx.spec, "t2"), ctx.cfg, ctx.seed);
  ctx.verdict = report.passes ? "passes" : "fails";
  ctx.certificates["brehmer_operator"] = matrix_to_json(report.brehmer_operator);
  ctx.certificates["psd"] = psd_report_to_json(report.psd);
  ctx.certificates["t1_contraction"] = report.t1_contraction;
  ctx.certificates["t2_contraction"] = report.t2_contraction;
  ctx.certificates["quadratic_identity_residual"] = report.quadratic_identity_residual;
}

void run_doubly_commuting(Ctx& ctx) {
  const DoublyCommutingReport report = doubly_commuting_check(
      need_matrix(ctx.spec, "t1"), need_matrix(ctx.spec, "t2"), ctx.cfg);
  ctx.verdict = report.doubly_commuting ? "doubly-commuting"
                                        : (report.commuting ? "commuting" : "neither");
  ctx.certificates["commutator_norm"] = report.commutator_norm;
  ctx.certificates["star_commutator_norm"] = report.star_commutator_norm;
}

void run_rep_verify(Ctx& ctx) {
  const UnitaryRep rep = need_rep(ctx.spec, ctx.cfg);
  const RepReport report = verify_rep(rep, ctx.cfg);
  ctx.verdict = report.valid ? "representation" : "not-a-representation";
  ctx.certificates["unitarity_defect"] = report.unitarity_defect;
  ctx.certificates["identity_defect"] = report.identity_defect;
  ctx.certificates["homomorphism_defect"] = report.homomorphism_defect;
  if (report.witness)
    ctx.certificates["witness_pair"] = Json::array({report.witness->first, report.witness->second});
  if (report.valid) {
    const RootsReport roots = spectrum_in_roots(rep, ctx.cfg);
    ctx.certificates["spectrum_in_roots"] = roots.all_in_roots;
    ctx.certificates["worst_root_distance"] = roots.worst_distance;
    const CommutativityReport comm = is_commutative(rep, ctx.cfg);
    ctx.certificates["commutative"] = comm.commutative;
  }
}

void run_rep_structure(Ctx& ctx) {
  const UnitaryRep rep = need_rep(ctx.spec, ctx.cfg);
  const StructureDecomposition s = structure_decompose(rep, ctx.cfg, ctx.seed);
  ctx.verdict = "decomposed";
  ctx.certificates["k"] = s.k;
  Json projections = Json::array();
  for (const auto& p : s.projections) projections.push_back(matrix_to_json(p));
  ctx.certificates["projections"] = std::move(projections);
  Json lambda = Json::array();
  for (const auto& row : s.lambda) {
    Json r = Json::array();
    for (const Complex& z : row) r.push_back(Json::array({z.real(), z.imag()}));
    lambda.push_back(std::move(r));
  }
  ctx.certificates["lambda"] = std::move(lambda);
  ctx.certificates["root_index"] = s.root_index;
}

void run_rep_power(Ctx& ctx) {
  const UnitaryRep rep = need_rep(ctx.spec, ctx.cfg);
  const int n = need_n(ctx);
  const PowerRepReport report = power_rep_check(rep, n, ctx.cfg);
  ctx.verdict = report.is_representation() ? "representation" : "not-a-representation";
  ctx.certificates["n"] = n;
  ctx.certificates["direct_route"] = report.direct_route;
  ctx.certificates["subgroup_route"] = report.subgroup_route;
  ctx.certificates["direct_defect"] = report.direct_defect;
  ctx.certificates["worst_on_power_subgroup"] = report.worst_on_power_subgroup;
}

void run_counterexample_det(Ctx& ctx) {
  const int n = need_n(ctx);
  const CounterexampleDet det = counterexample_det(n);
  ctx.verdict = det.value < 0 ? "negative" : "nonnegative";
  ctx.certificates["n"] = det.n;
  ctx.certificates["value"] = det.value;
  ctx.certificates["numeric_value"] = det.numeric_value;
  ctx.certificates["a_n"] = det.fibonacci_a_n;
}

}  // namespace

const std::vector<std::string>& command_list() {
  static const std::vector<std::string> commands = {
      "check-pd",      "dilate",        "verify-dilation", "compression",
      "power-pd",      "power-compat",  "gamma",           "three-by-three",
      "z2",            "z3",            "z4",              "klein",
      "half-power",    "z-trunc",       "zz-trunc",        "brehmer",
      "doubly-commuting", "rep-verify", "rep-structure",   "rep-power",
      "counterexample-det"};
  return commands;
}

RunOptions options_from_json(const std::string& options_json) {
  RunOptions options;
  if (options_json.empty()) return options;
  Json j;
  try {
    j = Json::parse(options_json);
  } catch (const nlohmann::json::exception& e) {
    fail_parse(std::string("invalid options JSON: ") + e.what());
  }
  if (!j.is_object()) fail_parse("options must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "n") options.n = val.get<int>();
    else if (key == "level") options.level = val.get<int>();
    else if (key == "strict") options.strict = val.get<bool>();
    else if (key == "seed") options.seed = val.get<std::uint64_t>();
    else if (key == "tol") options.tol = val.get<double>();
    else fail_parse("unknown option \"" + key + "\"");
  }
  return options;
}

RunResult run_command(const std::string& command, const std::string& spec_json,
                      const RunOptions& options) {
  RunResult result;
  Json report;
  report["command"] = command;
  report["schema_version"] = "1";
  try {
    Ctx ctx;
    ctx.options = options;
    const bool needs_spec = command != "counterexample-det";
    if (needs_spec || !spec_json.empty()) {
      ctx.spec = parse_spec_file(spec_json.empty() ? "{}" : spec_json);
    }
    ctx.cfg = ctx.spec.tolerances;
    if (options.tol) {
      if (*options.tol <= 0) fail_validation("--tol must be strictly positive");
      ctx.cfg.psd_tol = *options.tol;
      ctx.cfg.contraction_tol = *options.tol;
    }
    ctx.seed = options.seed.value_or(ctx.spec.seed);

    if (command == "check-pd") run_check_pd(ctx);
    else if (command == "dilate") run_dilate(ctx);
    else if (command == "verify-dilation") run_verify_dilation(ctx);
    else if (command == "compression") run_compression(ctx);
    else if (command == "power-pd") run_power_pd(ctx);
    else if (command == "power-compat") run_power_compat(ctx);
    else if (command == "gamma") run_gamma(ctx);
    else if (command == "three-by-three") run_three_by_three(ctx);
    else if (command == "z2") run_z2(ctx);
    else if (command == "z3") run_z3(ctx);
    else if (command == "z4") run_z4(ctx);
    else if (command == "klein") run_klein(ctx);
    else if (command == "half-power") run_half_power(ctx);
    else if (command == "z-trunc") run_z_trunc(ctx);
    else if (command == "zz-trunc") run_zz_trunc(ctx);
    else if (command == "brehmer") run_brehmer(ctx);
    else if (command == "doubly-commuting") run_doubly_commuting(ctx);
    else if (command == "rep-verify") run_rep_verify(ctx);
    else if (command == "rep-structure") run_rep_structure(ctx);
    else if (command == "rep-power") run_rep_power(ctx);
    else if (command == "counterexample-det") run_counterexample_det(ctx);
    else fail_validation("unknown command \"" + command + "\"");

    report["verdict"] = ctx.verdict;
    report["certificates"] = std::move(ctx.certificates);
    report["warnings"] = std::move(ctx.warnings);
    result.status = 0;
    result.verdict = report["verdict"].get<std::string>();
  } catch (const Error& e) {
    result.status = static_cast<int>(e.kind());
    result.verdict = "error";
    report["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    result.status = 1;
    result.verdict = "error";
    report["error"] = {{"kind", "internal"}, {"message", e.what()}};
  }
  result.report_json = report.dump(2) + "\n";
  return result;
}

}  // namespace opdf
