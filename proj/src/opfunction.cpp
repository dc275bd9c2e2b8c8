#include "opfunction.hpp"

#include <algorithm>
#include <sstream>

namespace opdf {

void validate_function(const OperatorFunction& f) {
  if (f.group.order <= 0) fail_validation("operator function: missing group");
  if (f.dim <= 0) fail_validation("operator function: dimension must be positive");
  if (static_cast<int>(f.values.size()) != f.group.order)
    fail_validation("operator function: one matrix per group element required");
  for (const auto& m : f.values) {
    if (m.rows() != f.dim || m.cols() != f.dim)
      fail_validation("operator function: matrix dimensions must all equal dim");
    if (!all_finite(m)) fail_validation("operator function: non-finite entries");
  }
}

SymmetryReport check_symmetry(const OperatorFunction& f, const ToleranceConfig& cfg) {
  cfg.validate();
  validate_function(f);
  double scale = 1.0;
  for (const auto& m : f.values) scale = std::max(scale, m.norm());
  SymmetryReport report;
  for (int s = 0; s < f.group.order; ++s) {
    const double dev = (f.at(f.group.inverse(s)) - f.at(s).adjoint()).norm();
    if (dev > report.worst_violation) {
      report.worst_violation = dev;
      report.witness = s;
    }
  }
  report.symmetric = report.worst_violation <= cfg.psd_tol * scale;
  return report;
}

BlockGram gram_block(const OperatorFunction& f, const std::vector<int>& tuple) {
  validate_function(f);
  if (tuple.empty()) fail_validation("gram_block: empty tuple");
  for (int s : tuple)
    if (s < 0 || s >= f.group.order) fail_validation("gram_block: tuple element out of range");
  const std::size_t m = tuple.size();
  BlockGram gram;
  gram.tuple = tuple;
  gram.blocks.assign(m, std::vector<CMatrix>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      gram.blocks[i][j] = f.at(f.group.op(f.group.inverse(tuple[i]), tuple[j]));
  gram.flat = block_assemble(gram.blocks);
  return gram;
}

BlockGram gram_block(const OperatorFunction& f) {
  std::vector<int> tuple(f.group.order);
  for (int i = 0; i < f.group.order; ++i) tuple[i] = i;
  return gram_block(f, tuple);
}

PsdReport is_positive_definite(const OperatorFunction& f, const ToleranceConfig& cfg) {
  const SymmetryReport sym = check_symmetry(f, cfg);
  if (!sym.symmetric) {
    std::ostringstream os;
    os << "not a symmetric function: ||T(s^-1) - T(s)*|| = " << sym.worst_violation
       << " at element " << sym.witness;
    fail_validation(os.str());
  }
  return psd_check(gram_block(f).flat, cfg);
}

OperatorFunction conjugate_by(const OperatorFunction& f, const CMatrix& v) {
  validate_function(f);
  if (v.rows() != f.dim) fail_validation("conjugate_by: V must have dim rows");
  if (!all_finite(v)) fail_validation("conjugate_by: V has non-finite entries");
  OperatorFunction out;
  out.group = f.group;
  out.dim = static_cast<int>(v.cols());
  out.values.reserve(f.values.size());
  for (const auto& m : f.values) out.values.push_back(v.adjoint() * m * v);
  return out;
}

OperatorFunction pullback(const OperatorFunction& f, const GroupMorphism& phi) {
  validate_function(f);
  if (phi.target.order != f.group.order || phi.target.mul != f.group.mul)
    fail_validation("pullback: morphism target does not match the function's group");
  const MorphismReport rep = validate_morphism(phi);
  if (!rep.homomorphism) {
    std::ostringstream os;
    os << "pullback: not a homomorphism";
    if (rep.witness) os << " (witness pair " << rep.witness->first << "," << rep.witness->second << ")";
    fail_validation(os.str());
  }
  OperatorFunction out;
  out.group = phi.source;
  out.dim = f.dim;
  out.values.reserve(phi.source.order);
  for (int s = 0; s < phi.source.order; ++s) out.values.push_back(f.at(phi.map[s]));
  return out;
}

BlockGrid hadamard_block(const BlockGrid& a, const BlockGrid& b) {
  if (a.size() != b.size()) fail_validation("hadamard_block: grid shapes differ");
  BlockGrid out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) fail_validation("hadamard_block: grid shapes differ");
    out[i].resize(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (a[i][j].cols() != b[i][j].rows())
        fail_validation("hadamard_block: block dimensions do not compose");
      out[i][j] = a[i][j] * b[i][j];
    }
  }
  return out;
}

OperatorFunction power_map(const OperatorFunction& f, int n) {
  validate_function(f);
  if (n < 1) fail_validation("power_map: n must be at least 1");
  OperatorFunction out;
  out.group = f.group;
  out.dim = f.dim;
  out.values.reserve(f.values.size());
  for (const auto& m : f.values) {
    CMatrix p = CMatrix::Identity(f.dim, f.dim);
    for (int k = 0; k < n; ++k) p = p * m;
    out.values.push_back(std::move(p));
  }
  return out;
}

PowerPdReport power_pd_check(const OperatorFunction& f, int n, const ToleranceConfig& cfg) {
  cfg.validate();
  if (n < 1) fail_validation("power_pd_check: n must be at least 1");
  PowerPdReport report;
  report.base_positive = is_positive_definite(f, cfg).positive();

  BlockGram base = gram_block(f);
  BlockGrid grid = base.blocks;
  for (int k = 1; k < n; ++k) grid = hadamard_block(grid, base.blocks);
  const CMatrix hadamard_flat = block_assemble(grid);

  const BlockGram direct = gram_block(power_map(f, n));
  report.route_deviation = (hadamard_flat - direct.flat).norm();
  const double scale = std::max(1.0, hadamard_flat.norm());
  if (report.route_deviation > cfg.psd_tol * scale) {
    std::ostringstream os;
    os << "power_pd_check: Hadamard-power and direct routes disagree ("
       << report.route_deviation << ")";
    fail_consistency(os.str());
  }
  report.hadamard_route = psd_check(hadamard_flat, cfg);
  report.direct_route = psd_check(direct.flat, cfg);
  if (report.hadamard_route.positive() != report.direct_route.positive())
    fail_consistency("power_pd_check: route verdicts disagree");
  return report;
}

}  // namespace opdf
