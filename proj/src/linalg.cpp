#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace opdf {

void ToleranceConfig::validate() const {
  if (psd_tol <= 0 || rank_tol <= 0 || cluster_tol <= 0 || contraction_tol <= 0)
    fail_validation("tolerances must be strictly positive");
}

const char* psd_verdict_name(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::Positive: return "positive";
    case PsdVerdict::PositiveSemidefiniteAtTolerance: return "positive-semidefinite-at-tolerance";
    case PsdVerdict::Indefinite: return "indefinite";
  }
  return "indefinite";
}

double frob(const CMatrix& m) { return m.norm(); }

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

CMatrix identity_like(int n) { return CMatrix::Identity(n, n); }

static void require_square(const CMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix must be square, got " << m.rows() << "x" << m.cols();
    fail_validation(os.str());
  }
  if (!all_finite(m)) fail_validation(std::string(who) + ": matrix has non-finite entries");
}

PsdReport psd_check(const CMatrix& m, const ToleranceConfig& cfg) {
  cfg.validate();
  require_square(m, "psd_check");
  const double scale = std::max(1.0, frob(m));
  const double herm_dev = (m - m.adjoint()).norm();
  if (herm_dev > cfg.psd_tol * scale) {
    std::ostringstream os;
    os << "psd_check: matrix is not hermitian (deviation " << herm_dev << " > "
       << cfg.psd_tol * scale << ")";
    fail_validation(os.str());
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  if (es.info() != Eigen::Success) fail_consistency("psd_check: eigensolver failed");

  PsdReport report;
  report.min_eigenvalue = es.eigenvalues()(0);
  report.tolerance_used = cfg.psd_tol;
  report.scale = scale;
  const double threshold = cfg.psd_tol * scale;
  if (report.min_eigenvalue > threshold) {
    report.verdict = PsdVerdict::Positive;
  } else if (report.min_eigenvalue >= -threshold) {
    report.verdict = PsdVerdict::PositiveSemidefiniteAtTolerance;
  } else {
    report.verdict = PsdVerdict::Indefinite;
    report.witness = es.eigenvectors().col(0);
  }
  return report;
}

CMatrix sqrt_psd(const CMatrix& m, const ToleranceConfig& cfg) {
  PsdReport report = psd_check(m, cfg);
  if (!report.positive()) {
    std::ostringstream os;
    os << "sqrt_psd: matrix is indefinite (min eigenvalue " << report.min_eigenvalue << ")";
    fail_validation(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  CMatrix s = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  return hermitian_part(s);
}

PsdSqrtFactors psd_sqrt_factors(const CMatrix& m, const ToleranceConfig& cfg) {
  PsdReport report = psd_check(m, cfg);
  if (!report.positive()) {
    std::ostringstream os;
    os << "psd_sqrt_factors: matrix is indefinite (min eigenvalue " << report.min_eigenvalue
       << ")";
    fail_validation(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  const Eigen::VectorXd lambda = es.eigenvalues();
  // Anything inside the PSD tolerance band is indistinguishable from zero;
  // without that floor, a matrix like I - Gamma Gamma* with unimodular
  // Gamma consists entirely of rounding noise whose "eigenvalues" would be
  // kept and inverted.
  const double cutoff = std::max(cfg.rank_tol * std::max(0.0, lambda(lambda.size() - 1)),
                                 cfg.psd_tol * report.scale);

  PsdSqrtFactors out;
  const Eigen::Index d = m.rows();
  Eigen::VectorXd roots = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd inv_roots = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd kept = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lambda(i) > cutoff && lambda(i) > 0.0) {
      roots(i) = std::sqrt(lambda(i));
      inv_roots(i) = 1.0 / roots(i);
      kept(i) = 1.0;
      ++out.rank;
    }
  }
  const CMatrix& q = es.eigenvectors();
  out.sqrt = hermitian_part(q * roots.asDiagonal() * q.adjoint());
  out.pinv_sqrt = hermitian_part(q * inv_roots.asDiagonal() * q.adjoint());
  out.range_proj = hermitian_part(q * kept.asDiagonal() * q.adjoint());
  return out;
}

CMatrix defect(const CMatrix& t, const ToleranceConfig& cfg) {
  cfg.validate();
  require_square(t, "defect");
  const double norm = op_norm(t);
  if (norm > 1.0 + cfg.contraction_tol) {
    std::ostringstream os;
    os << "defect: not a contraction, operator norm " << norm;
    fail_validation(os.str());
  }
  // I - T*T can dip a hair below zero when ||T|| = 1; clip instead of
  // re-running the PSD gate.
  CMatrix g = identity_like(static_cast<int>(t.rows())) - t.adjoint() * t;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(g));
  Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return hermitian_part(es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint());
}

CMatrix pinv(const CMatrix& m, const ToleranceConfig& cfg) {
  cfg.validate();
  if (!all_finite(m)) fail_validation("pinv: matrix has non-finite entries");
  if (m.size() == 0) return CMatrix(m.cols(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = cfg.rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

int rank_of(const CMatrix& m, const ToleranceConfig& cfg) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = cfg.rank_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++r;
  return r;
}

CMatrix range_projector(const CMatrix& m, const ToleranceConfig& cfg) {
  if (m.size() == 0) return CMatrix(m.rows(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = cfg.rank_tol * (sv.size() > 0 ? sv(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) ++r;
  CMatrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

CMatrix block_assemble(const BlockGrid& blocks) {
  if (blocks.empty() || blocks.front().empty())
    fail_validation("block_assemble: empty grid");
  const std::size_t q = blocks.front().size();
  const Eigen::Index r = blocks[0][0].rows();
  const Eigen::Index c = blocks[0][0].cols();
  for (const auto& row : blocks) {
    if (row.size() != q) fail_validation("block_assemble: ragged grid");
    for (const auto& b : row)
      if (b.rows() != r || b.cols() != c)
        fail_validation("block_assemble: blocks have mismatched shapes");
  }
  CMatrix flat(static_cast<Eigen::Index>(blocks.size()) * r, static_cast<Eigen::Index>(q) * c);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < q; ++j)
      flat.block(static_cast<Eigen::Index>(i) * r, static_cast<Eigen::Index>(j) * c, r, c) =
          blocks[i][j];
  return flat;
}

namespace {

// Recursive refinement used by joint_diagonalize. `mats` are the family
// members restricted to the current invariant subspace.
CMatrix refine(std::vector<CMatrix> mats, const ToleranceConfig& cfg, std::mt19937_64& rng,
               int depth) {
  const Eigen::Index w = mats.front().rows();
  if (w == 1) return CMatrix::Identity(1, 1);
  if (depth > 64) fail_consistency("joint_diagonalize: refinement recursion too deep");

  auto nearly_scalar = [&](const CMatrix& m) {
    const Complex mean = m.trace() / static_cast<double>(w);
    const double dev = (m - mean * CMatrix::Identity(w, w)).norm();
    return dev <= cfg.cluster_tol * std::max(1.0, m.norm());
  };

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool all_scalar = true;
    for (const auto& m : mats)
      if (!nearly_scalar(m)) { all_scalar = false; break; }
    if (all_scalar) return CMatrix::Identity(w, w);

    CMatrix h = CMatrix::Zero(w, w);
    for (const auto& m : mats) {
      const double a = gauss(rng), b = gauss(rng);
      h += a * hermitian_part(m);
      h += b * (Complex(0, -0.5) * (m - m.adjoint()));  // Hermitian part of -i*M
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) fail_consistency("joint_diagonalize: eigensolver failed");
    const Eigen::VectorXd mu = es.eigenvalues();
    const double tau = cfg.cluster_tol * std::max(1.0, h.norm());

    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [lo, hi)
    Eigen::Index lo = 0;
    for (Eigen::Index i = 1; i <= w; ++i) {
      if (i == w || mu(i) - mu(i - 1) > tau) {
        clusters.emplace_back(lo, i);
        lo = i;
      }
    }
    if (clusters.size() == 1) continue;  // combination failed to separate, redraw

    CMatrix basis = es.eigenvectors();
    for (const auto& [clo, chi] : clusters) {
      const Eigen::Index cw = chi - clo;
      if (cw == 1) continue;
      CMatrix vc = basis.middleCols(clo, cw);
      std::vector<CMatrix> sub;
      sub.reserve(mats.size());
      for (const auto& m : mats) sub.push_back(vc.adjoint() * m * vc);
      CMatrix qc = refine(std::move(sub), cfg, rng, depth + 1);
      basis.middleCols(clo, cw) = vc * qc;
    }
    return basis;
  }
  fail_consistency("joint_diagonalize: failed to split a degenerate cluster");
}

}  // namespace

JointDiagonalization joint_diagonalize(const std::vector<CMatrix>& family,
                                       const ToleranceConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (family.empty()) fail_validation("joint_diagonalize: empty family");
  const Eigen::Index d = family.front().rows();
  for (std::size_t k = 0; k < family.size(); ++k) {
    require_square(family[k], "joint_diagonalize");
    if (family[k].rows() != d) fail_validation("joint_diagonalize: mixed dimensions");
  }
  for (std::size_t k = 0; k < family.size(); ++k) {
    const CMatrix& m = family[k];
    const double s = std::max(1.0, m.norm() * m.norm());
    const double normality = (m.adjoint() * m - m * m.adjoint()).norm();
    if (normality > cfg.psd_tol * s) {
      std::ostringstream os;
      os << "joint_diagonalize: member " << k << " is not normal (||[M*,M]|| = " << normality << ")";
      fail_validation(os.str());
    }
    for (std::size_t l = k + 1; l < family.size(); ++l) {
      const double sc = std::max(1.0, m.norm() * family[l].norm());
      const double comm = (m * family[l] - family[l] * m).norm();
      if (comm > cfg.psd_tol * sc) {
        std::ostringstream os;
        os << "joint_diagonalize: members " << k << " and " << l
           << " do not commute (||[Mi,Mj]|| = " << comm << ")";
        fail_validation(os.str());
      }
    }
  }

  std::mt19937_64 rng(seed);
  CMatrix basis = refine(family, cfg, rng, 0);

  JointDiagonalization out;
  out.basis = basis;
  out.eigenvalues.reserve(family.size());
  for (const auto& m : family) {
    CMatrix diag = basis.adjoint() * m * basis;
    const double off = (diag - CMatrix(diag.diagonal().asDiagonal())).norm();
    if (off > cfg.cluster_tol * std::max(1.0, m.norm()))
      fail_consistency("joint_diagonalize: residual off-diagonal mass after refinement");
    out.eigenvalues.push_back(diag.diagonal());
  }
  return out;
}

}  // namespace opdf
