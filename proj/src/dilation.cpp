#include "dilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace opdf {

double DilationResiduals::worst() const {
  return std::max({unitarity, identity, homomorphism, vstarv, compression, minimality_gap});
}

namespace {

DilationResiduals measure(const OperatorFunction& f, const NaimarkDilation& d,
                          const ToleranceConfig& cfg) {
  const FiniteGroup& g = f.group;
  const int r = d.dimK;
  DilationResiduals res;
  const CMatrix idk = CMatrix::Identity(r, r);
  for (const auto& u : d.U)
    res.unitarity = std::max(res.unitarity, (u.adjoint() * u - idk).norm());
  res.identity = (d.U[static_cast<std::size_t>(g.identity)] - idk).norm();
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t)
      res.homomorphism = std::max(
          res.homomorphism,
          (d.U[static_cast<std::size_t>(g.op(s, t))] -
           d.U[static_cast<std::size_t>(s)] * d.U[static_cast<std::size_t>(t)]).norm());
  res.vstarv = (d.V.adjoint() * d.V - f.at(g.identity)).norm();
  for (int s = 0; s < g.order; ++s)
    res.compression = std::max(
        res.compression, (d.V.adjoint() * d.U[static_cast<std::size_t>(s)] * d.V - f.at(s)).norm());

  // Minimality: the columns of {U(s)V} must span C^dimK.
  if (r > 0) {
    CMatrix stacked(r, static_cast<Eigen::Index>(g.order) * f.dim);
    for (int s = 0; s < g.order; ++s)
      stacked.middleCols(static_cast<Eigen::Index>(s) * f.dim, f.dim) =
          d.U[static_cast<std::size_t>(s)] * d.V;
    res.minimality_gap = static_cast<double>(r - rank_of(stacked, cfg));
  }
  return res;
}

}  // namespace

NaimarkDilation naimark_dilate(const OperatorFunction& f, const ToleranceConfig& cfg) {
  cfg.validate();
  const PsdReport psd = is_positive_definite(f, cfg);
  if (!psd.positive()) {
    std::ostringstream os;
    os << "naimark_dilate: function is not positive definite (min eigenvalue "
       << psd.min_eigenvalue << ")";
    fail_validation(os.str());
  }

  const FiniteGroup& g = f.group;
  const int m = g.order;
  const int d = f.dim;
  const BlockGram gram = gram_block(f);
  const CMatrix delta = hermitian_part(gram.flat);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(delta);
  if (es.info() != Eigen::Success) fail_consistency("naimark_dilate: eigensolver failed");
  const Eigen::VectorXd lambda = es.eigenvalues();
  const double lambda_max = std::max(0.0, lambda(lambda.size() - 1));
  const double cutoff = cfg.rank_tol * lambda_max;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > cutoff && lambda(i) > 0.0) kept.push_back(i);
  const int r = static_cast<int>(kept.size());

  // W = Lambda_+^{1/2} Q_+*  maps C^{md} onto the dilation space; W W* is
  // the invertible diagonal Lambda_+, and W* W recovers Delta up to the
  // discarded kernel.
  CMatrix w(r, m * d);
  CMatrix w_pinv(m * d, r);
  for (int i = 0; i < r; ++i) {
    const double root = std::sqrt(lambda(kept[i]));
    w.row(i) = root * es.eigenvectors().col(kept[i]).adjoint();
    w_pinv.col(i) = es.eigenvectors().col(kept[i]) / root;
  }

  NaimarkDilation out;
  out.dimK = r;
  out.V = w.middleCols(static_cast<Eigen::Index>(g.identity) * d, d);
  out.U.resize(m);
  for (int t = 0; t < m; ++t) {
    // L(t) permutes block rows: (L(t)h)(s) = h(t^{-1}s).
    CMatrix permuted(m * d, r);
    for (int s = 0; s < m; ++s) {
      const int src = g.op(g.inverse(t), s);
      permuted.middleRows(static_cast<Eigen::Index>(s) * d, d) =
          w_pinv.middleRows(static_cast<Eigen::Index>(src) * d, d);
    }
    out.U[static_cast<std::size_t>(t)] = w * permuted;
  }

  out.residuals = measure(f, out, cfg);
  const double budget = 1e4 * cfg.psd_tol * std::max(1.0, delta.norm());
  if (out.residuals.worst() > budget) {
    std::ostringstream os;
    os << "naimark_dilate: construction failed re-verification (worst residual "
       << out.residuals.worst() << ")";
    fail_consistency(os.str());
  }
  return out;
}

DilationReport verify_dilation(const OperatorFunction& f, const NaimarkDilation& d,
                               const ToleranceConfig& cfg) {
  cfg.validate();
  validate_function(f);
  if (d.dimK != d.V.rows() || static_cast<int>(d.U.size()) != f.group.order ||
      d.V.cols() != f.dim)
    fail_validation("verify_dilation: dilation shapes do not match the function");
  for (const auto& u : d.U)
    if (u.rows() != d.dimK || u.cols() != d.dimK)
      fail_validation("verify_dilation: unitary family has inconsistent dimensions");

  DilationReport report;
  report.residuals = measure(f, d, cfg);

  OperatorFunction compressed;
  compressed.group = f.group;
  compressed.dim = f.dim;
  compressed.values.reserve(f.group.order);
  for (int s = 0; s < f.group.order; ++s)
    compressed.values.push_back(d.V.adjoint() * d.U[static_cast<std::size_t>(s)] * d.V);
  report.converse_symmetric = check_symmetry(compressed, cfg).symmetric;
  if (report.converse_symmetric) report.converse = psd_check(gram_block(compressed).flat, cfg);

  const double budget = 1e4 * cfg.psd_tol * std::max(1.0, static_cast<double>(d.dimK));
  report.valid = report.residuals.worst() <= budget && report.converse_symmetric &&
                 report.converse.positive();
  return report;
}

OperatorFunction compression(const UnitaryRep& rep, const CMatrix& v, const ToleranceConfig& cfg) {
  cfg.validate();
  const RepReport rr = verify_rep(rep, cfg);
  if (!rr.valid) fail_validation("compression: not a unitary representation");
  if (v.rows() != rep.dim) fail_validation("compression: V must have dim rows");
  OperatorFunction out;
  out.group = rep.group;
  out.dim = static_cast<int>(v.cols());
  out.values.reserve(rep.group.order);
  for (int s = 0; s < rep.group.order; ++s)
    out.values.push_back(v.adjoint() * rep.at(s) * v);
  return out;
}

PowerCompatReport power_compatibility(const OperatorFunction& f, const NaimarkDilation& d, int n,
                                      const ToleranceConfig& cfg) {
  cfg.validate();
  if (n < 1) fail_validation("power_compatibility: n must be at least 1");
  if (static_cast<int>(d.U.size()) != f.group.order || d.V.cols() != f.dim ||
      d.V.rows() != d.dimK)
    fail_validation("power_compatibility: dilation shapes do not match the function");
  PowerCompatReport report;

  const OperatorFunction fn = power_map(f, n);
  report.power_function_positive = is_positive_definite(fn, cfg).positive();

  UnitaryRep urep;
  urep.group = f.group;
  urep.dim = d.dimK;
  urep.U = d.U;
  report.power_rep_valid = verify_rep(power_rep(urep, n), cfg).valid;

  if (!report.power_function_positive || !report.power_rep_valid) {
    report.preconditions_met = false;
    report.precondition_failure = !report.power_function_positive
                                      ? "T_n is not positive definite"
                                      : "U_n is not a unitary representation";
    return report;
  }
  report.preconditions_met = true;

  const FiniteGroup& g = f.group;
  for (int s = 0; s < g.order; ++s) {
    CMatrix un = CMatrix::Identity(d.dimK, d.dimK);
    for (int k = 0; k < n; ++k) un = un * d.U[static_cast<std::size_t>(s)];
    report.dilation_route_residual =
        std::max(report.dilation_route_residual, (d.V.adjoint() * un * d.V - fn.at(s)).norm());
    report.function_route_residual = std::max(
        report.function_route_residual,
        (f.at(element_power(g, s, n)) - fn.at(s)).norm());
  }

  const double threshold = 1e4 * cfg.psd_tol * std::max(1.0, static_cast<double>(f.dim));
  const bool dilation_ok = report.dilation_route_residual <= threshold;
  const bool function_ok = report.function_route_residual <= threshold;
  if (dilation_ok != function_ok)
    fail_consistency("power_compatibility: dilation and function routes disagree");
  report.compatible = dilation_ok;
  return report;
}

}  // namespace opdf
