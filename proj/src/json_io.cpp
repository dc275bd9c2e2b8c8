#include "json_io.hpp"

#include <sstream>

namespace opdf {

namespace {

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail_parse("expected a number or an [re, im] pair");
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail_parse("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail_parse("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) fail_parse("matrix rows have unequal lengths");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(j[i][k]);
  }
  if (!all_finite(m)) fail_validation("matrix has non-finite entries");
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

FiniteGroup group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail_parse("group spec requires a \"type\" string");
  const std::string type = j["type"].get<std::string>();
  auto get_n = [&]() {
    if (!j.contains("n") || !j["n"].is_number_integer())
      fail_parse("group spec of type \"" + type + "\" requires an integer \"n\"");
    return j["n"].get<int>();
  };
  if (type == "cyclic") return make_cyclic(get_n());
  if (type == "dihedral") return make_dihedral(get_n());
  if (type == "symmetric") return make_symmetric(get_n());
  if (type == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2)
      fail_parse("product group spec requires a two-element \"factors\" array");
    return make_product(group_from_json(j["factors"][0]), group_from_json(j["factors"][1]));
  }
  if (type == "table") {
    if (!j.contains("mul") || !j["mul"].is_array())
      fail_parse("table group spec requires a \"mul\" array");
    std::vector<std::vector<int>> table;
    for (const auto& row : j["mul"]) {
      if (!row.is_array()) fail_parse("table rows must be arrays");
      table.emplace_back();
      for (const auto& v : row) {
        if (!v.is_number_integer()) fail_parse("table entries must be integers");
        table.back().push_back(v.get<int>());
      }
    }
    return make_from_table(table);
  }
  fail_parse("unknown group type \"" + type + "\"");
}

namespace {

std::vector<CMatrix> element_map_from_json(const Json& j, const FiniteGroup& g, int dim,
                                           const char* field) {
  if (!j.is_object()) fail_parse(std::string(field) + " must be an object keyed by element index");
  std::vector<CMatrix> values(static_cast<std::size_t>(g.order));
  std::vector<char> seen(static_cast<std::size_t>(g.order), 0);
  for (const auto& [key, val] : j.items()) {
    int idx = -1;
    try {
      idx = std::stoi(key);
    } catch (...) {
      fail_parse(std::string(field) + " keys must be element indices");
    }
    if (idx < 0 || idx >= g.order) {
      std::ostringstream os;
      os << field << " key " << idx << " is out of range for a group of order " << g.order;
      fail_validation(os.str());
    }
    CMatrix m = matrix_from_json(val);
    if (m.rows() != dim || m.cols() != dim)
      fail_validation(std::string(field) + " matrices must all be dim x dim");
    values[static_cast<std::size_t>(idx)] = std::move(m);
    seen[static_cast<std::size_t>(idx)] = 1;
  }
  for (int s = 0; s < g.order; ++s)
    if (!seen[static_cast<std::size_t>(s)]) {
      std::ostringstream os;
      os << field << " is missing element " << s;
      fail_validation(os.str());
    }
  return values;
}

}  // namespace

OperatorFunction function_from_json(const Json& j) {
  if (!j.is_object()) fail_parse("function payload must be an object");
  if (!j.contains("group")) fail_parse("function payload requires \"group\"");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail_parse("function payload requires an integer \"dim\"");
  if (!j.contains("values")) fail_parse("function payload requires \"values\"");
  OperatorFunction f;
  f.group = group_from_json(j["group"]);
  f.dim = j["dim"].get<int>();
  if (f.dim <= 0) fail_validation("function dim must be positive");
  f.values = element_map_from_json(j["values"], f.group, f.dim, "values");
  validate_function(f);
  return f;
}

UnitaryRep rep_from_json(const Json& j, const ToleranceConfig& cfg) {
  if (!j.is_object()) fail_parse("rep payload must be an object");
  if (j.contains("builder")) {
    const std::string builder = j["builder"].get<std::string>();
    auto get_n = [&]() {
      if (!j.contains("n") || !j["n"].is_number_integer())
        fail_parse("rep builder requires an integer \"n\"");
      return j["n"].get<int>();
    };
    if (builder == "cyclic") {
      if (!j.contains("u0")) fail_parse("cyclic builder requires \"u0\"");
      return build_cyclic_rep(make_cyclic(get_n()), matrix_from_json(j["u0"]), cfg);
    }
    if (builder == "symmetric_commutative") {
      if (!j.contains("u0")) fail_parse("symmetric_commutative builder requires \"u0\"");
      return build_symmetric_commutative(get_n(), matrix_from_json(j["u0"]), cfg);
    }
    if (builder == "dihedral_commutative") {
      if (!j.contains("ur") || !j.contains("us"))
        fail_parse("dihedral_commutative builder requires \"ur\" and \"us\"");
      return build_dihedral_commutative(get_n(), matrix_from_json(j["ur"]),
                                        matrix_from_json(j["us"]), cfg);
    }
    if (builder == "permutation") {
      return permutation_rep(get_n());
    }
    fail_parse("unknown rep builder \"" + builder + "\"");
  }
  if (!j.contains("group")) fail_parse("rep payload requires \"group\" or \"builder\"");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail_parse("rep payload requires an integer \"dim\"");
  if (!j.contains("U")) fail_parse("rep payload requires \"U\"");
  UnitaryRep rep;
  rep.group = group_from_json(j["group"]);
  rep.dim = j["dim"].get<int>();
  if (rep.dim <= 0) fail_validation("rep dim must be positive");
  rep.U = element_map_from_json(j["U"], rep.group, rep.dim, "U");
  validate_rep_shape(rep);
  return rep;
}

NaimarkDilation dilation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dimK") || !j.contains("V") || !j.contains("U"))
    fail_parse("dilation payload requires \"dimK\", \"V\" and \"U\"");
  NaimarkDilation d;
  d.dimK = j["dimK"].get<int>();
  d.V = matrix_from_json(j["V"]);
  if (!j["U"].is_object()) fail_parse("dilation \"U\" must be an object keyed by element index");
  const std::size_t m = j["U"].size();
  d.U.resize(m);
  std::vector<char> seen(m, 0);
  for (const auto& [key, val] : j["U"].items()) {
    int idx = -1;
    try {
      idx = std::stoi(key);
    } catch (...) {
      fail_parse("dilation \"U\" keys must be element indices");
    }
    if (idx < 0 || idx >= static_cast<int>(m)) fail_validation("dilation \"U\" key out of range");
    d.U[static_cast<std::size_t>(idx)] = matrix_from_json(val);
    seen[static_cast<std::size_t>(idx)] = 1;
  }
  for (std::size_t s = 0; s < m; ++s)
    if (!seen[s]) fail_validation("dilation \"U\" is missing an element");
  return d;
}

ToleranceConfig tolerances_from_json(const Json& j, ToleranceConfig base) {
  if (!j.is_object()) fail_parse("\"tolerances\" must be an object");
  for (const auto& [key, val] : j.items()) {
    if (!val.is_number()) fail_parse("tolerance \"" + key + "\" must be a number");
    const double v = val.get<double>();
    if (key == "psd_tol") base.psd_tol = v;
    else if (key == "rank_tol") base.rank_tol = v;
    else if (key == "cluster_tol") base.cluster_tol = v;
    else if (key == "contraction_tol") base.contraction_tol = v;
    else fail_parse("unknown tolerance \"" + key + "\"");
  }
  base.validate();
  return base;
}

Json psd_report_to_json(const PsdReport& r) {
  Json j;
  j["verdict"] = psd_verdict_name(r.verdict);
  j["positive"] = r.positive();
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["tolerance_used"] = r.tolerance_used;
  j["scale"] = r.scale;
  if (r.witness) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < r.witness->size(); ++i)
      w.push_back(Json::array({(*r.witness)(i).real(), (*r.witness)(i).imag()}));
    j["witness"] = std::move(w);
  }
  return j;
}

Json symmetry_report_to_json(const SymmetryReport& r) {
  Json j;
  j["symmetric"] = r.symmetric;
  j["worst_violation"] = r.worst_violation;
  if (!r.symmetric) j["witness_element"] = r.witness;
  return j;
}

Json dilation_to_json(const NaimarkDilation& d) {
  Json j;
  j["dimK"] = d.dimK;
  j["V"] = matrix_to_json(d.V);
  Json u = Json::object();
  for (std::size_t s = 0; s < d.U.size(); ++s) u[std::to_string(s)] = matrix_to_json(d.U[s]);
  j["U"] = std::move(u);
  Json res;
  res["unitarity"] = d.residuals.unitarity;
  res["identity"] = d.residuals.identity;
  res["homomorphism"] = d.residuals.homomorphism;
  res["vstarv"] = d.residuals.vstarv;
  res["compression"] = d.residuals.compression;
  res["minimality_gap"] = d.residuals.minimality_gap;
  j["residuals"] = std::move(res);
  return j;
}

Json gamma_factor_to_json(const GammaFactor& g) {
  Json j;
  j["gamma"] = matrix_to_json(g.gamma);
  j["norm"] = g.norm;
  j["reconstruction_residual"] = g.reconstruction_residual;
  j["is_contraction"] = g.is_contraction;
  j["factorization_ok"] = g.factorization_ok;
  j["block_psd"] = psd_report_to_json(g.block_psd);
  return j;
}

SpecFile parse_spec_file(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail_parse(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail_parse("spec file must be a JSON object");
  SpecFile spec;
  if (doc.contains("schema_version")) {
    if (!doc["schema_version"].is_string()) fail_parse("schema_version must be a string");
    spec.schema_version = doc["schema_version"].get<std::string>();
    if (spec.schema_version != "1")
      fail_validation("unsupported schema_version \"" + spec.schema_version + "\"");
  } else {
    spec.schema_version = "1";
  }
  if (doc.contains("tolerances")) spec.tolerances = tolerances_from_json(doc["tolerances"]);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) fail_parse("seed must be an integer");
    spec.seed = doc["seed"].get<std::uint64_t>();
  }
  spec.payload = std::move(doc);
  return spec;
}

}  // namespace opdf
