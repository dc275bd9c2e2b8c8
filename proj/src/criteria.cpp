#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "group.hpp"
#include "opfunction.hpp"

namespace opdf {

namespace {

void require_hermitian(const CMatrix& m, const ToleranceConfig& cfg, const char* who) {
  if (m.rows() != m.cols()) fail_validation(std::string(who) + ": matrix must be square");
  const double dev = (m - m.adjoint()).norm();
  if (dev > cfg.psd_tol * std::max(1.0, m.norm())) {
    std::ostringstream os;
    os << who << ": matrix is not hermitian (deviation " << dev << ")";
    fail_validation(os.str());
  }
}

double combined_scale(std::initializer_list<const CMatrix*> mats) {
  double s = 1.0;
  for (const CMatrix* m : mats) s = std::max(s, m->norm());
  return s;
}

CMatrix two_by_two(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  CMatrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.topRightCorner(b.rows(), b.cols()) = b;
  out.bottomLeftCorner(c.rows(), c.cols()) = c;
  out.bottomRightCorner(d.rows(), d.cols()) = d;
  return out;
}

CMatrix matrix_power(const CMatrix& m, int k) {
  CMatrix acc = CMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) acc = acc * m;
  return acc;
}

}  // namespace

GammaFactor gamma_factor(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                         const ToleranceConfig& cfg) {
  cfg.validate();
  if (b.rows() != a.rows() || b.cols() != c.rows())
    fail_validation("gamma_factor: B must map the C-space into the A-space");
  const PsdReport a_psd = psd_check(a, cfg);
  if (!a_psd.positive()) {
    std::ostringstream os;
    os << "gamma_factor: A is indefinite (min eigenvalue " << a_psd.min_eigenvalue << ")";
    fail_validation(os.str());
  }
  const PsdReport c_psd = psd_check(c, cfg);
  if (!c_psd.positive()) {
    std::ostringstream os;
    os << "gamma_factor: C is indefinite (min eigenvalue " << c_psd.min_eigenvalue << ")";
    fail_validation(os.str());
  }

  const PsdSqrtFactors af = psd_sqrt_factors(a, cfg);
  const PsdSqrtFactors cf = psd_sqrt_factors(c, cfg);
  GammaFactor out;
  out.gamma = af.range_proj * (af.pinv_sqrt * b * cf.pinv_sqrt) * cf.range_proj;
  out.norm = op_norm(out.gamma);
  out.reconstruction_residual = (af.sqrt * out.gamma * cf.sqrt - b).norm();
  out.is_contraction = out.norm <= 1.0 + cfg.contraction_tol;

  const double scale = combined_scale({&a, &b, &c});
  out.factorization_ok =
      out.is_contraction && out.reconstruction_residual <= cfg.psd_tol * scale;
  out.block_psd = psd_check(two_by_two(a, b, b.adjoint(), c), cfg);
  if (out.factorization_ok != out.block_psd.positive())
    fail_consistency("gamma_factor: factorization and PSD oracle disagree");
  return out;
}

PmReport pm_criterion(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg) {
  cfg.validate();
  require_hermitian(b, cfg, "pm_criterion (B)");
  require_hermitian(a, cfg, "pm_criterion (A)");
  if (a.rows() != b.rows()) fail_validation("pm_criterion: dimension mismatch");
  PmReport out;
  out.a_minus_b = psd_check(a - b, cfg);
  out.a_plus_b = psd_check(a + b, cfg);
  out.holds = out.a_minus_b.positive() && out.a_plus_b.positive();
  out.block = psd_check(two_by_two(a, b, b, a), cfg);
  if (out.holds != out.block.positive())
    fail_consistency("pm_criterion: +-B <= A and the block oracle disagree");
  return out;
}

Z2Report z2_criterion(const CMatrix& t0, const CMatrix& t1, const ToleranceConfig& cfg,
                      bool strict) {
  cfg.validate();
  require_hermitian(t0, cfg, "z2_criterion (T0)");
  require_hermitian(t1, cfg, "z2_criterion (T1)");
  if (t0.rows() != t1.rows()) fail_validation("z2_criterion: dimension mismatch");
  const int d = static_cast<int>(t0.rows());

  Z2Report out;
  out.oracle = psd_check(two_by_two(t0, t1, t1, t0), cfg);
  out.t0_psd = psd_check(t0, cfg);

  if (out.t0_psd.positive()) {
    out.gamma = gamma_factor(t0, t1, t0, cfg);
    out.gamma_route = out.gamma.factorization_ok;
  }
  const PmReport pm = pm_criterion(t0, t1, cfg);
  out.pm_route = out.t0_psd.positive() && pm.holds;

  OperatorFunction f;
  f.group = make_cyclic(2);
  f.dim = d;
  f.values = {t0, t1};
  out.function_route = is_positive_definite(f, cfg).positive();

  out.positive = out.oracle.positive();
  if (out.gamma_route != out.positive || out.pm_route != out.positive ||
      out.function_route != out.positive)
    fail_consistency("z2_criterion: the four equivalent conditions disagree");

  out.t0_is_identity = (t0 - CMatrix::Identity(d, d)).norm() <= cfg.psd_tol * std::max(1.0, t0.norm());
  out.t1_norm = op_norm(t1);
  if (out.t0_is_identity) {
    const bool reduced = out.t1_norm <= 1.0 + cfg.contraction_tol;
    if (reduced != out.positive)
      fail_consistency("z2_criterion: ||T(1)|| <= 1 reduction disagrees with the oracle");
  }

  if (strict) {
    out.strict_requested = true;
    if (out.t0_psd.verdict != PsdVerdict::Positive)
      fail_validation("z2_criterion: strict mode requires invertible T(0)");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(t0));
    const CMatrix t0_inv_half = es.eigenvectors() *
                                es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                es.eigenvectors().adjoint();
    out.strict_conjugated_norm = op_norm(t0_inv_half * t1 * t0_inv_half);
    out.strictly_positive = out.oracle.verdict == PsdVerdict::Positive;
  }
  return out;
}

ThreeByThreeReport factor_3x3(const CMatrix& a, const CMatrix& b, const CMatrix& r,
                              const CMatrix& c, const CMatrix& bp, const CMatrix& d,
                              const ToleranceConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = a.rows();
  for (const CMatrix* m : {&a, &b, &r, &c, &bp, &d})
    if (m->rows() != n || m->cols() != n)
      fail_validation("factor_3x3: all blocks must be square and equally sized");

  ThreeByThreeReport out;
  BlockGrid grid{{a, b, r}, {b.adjoint(), c, bp}, {r.adjoint(), bp.adjoint(), d}};
  out.oracle = psd_check(block_assemble(grid), cfg);
  out.corner_left = psd_check(two_by_two(a, b, b.adjoint(), c), cfg);
  out.corner_right = psd_check(two_by_two(c, bp, bp.adjoint(), d), cfg);

  if (!out.corner_left.positive() || !out.corner_right.positive()) {
    out.failed_corner = out.corner_left.positive() ? 2 : 1;
    out.positive = false;
    if (out.oracle.positive())
      fail_consistency("factor_3x3: an indefinite corner inside a PSD block");
    return out;
  }

  out.gamma = gamma_factor(a, b, c, cfg);
  out.gamma_prime = gamma_factor(c, bp, d, cfg);

  const PsdSqrtFactors af = psd_sqrt_factors(a, cfg);
  const PsdSqrtFactors df = psd_sqrt_factors(d, cfg);
  const CMatrix& g1 = out.gamma.gamma;
  const CMatrix& g2 = out.gamma_prime.gamma;
  const Eigen::Index nn = a.rows();
  const CMatrix id = CMatrix::Identity(nn, nn);
  // Defect operators D_{Gamma*} and D_{Gamma'}, with their pseudoinverse
  // square roots cut at the eigenvalue scale.
  const PsdSqrtFactors dgs = psd_sqrt_factors(id - g1 * g1.adjoint(), cfg);
  const PsdSqrtFactors dgp = psd_sqrt_factors(id - g2.adjoint() * g2, cfg);

  const CMatrix residual_target = r - af.sqrt * g1 * g2 * df.sqrt;
  out.gamma_r = dgs.range_proj *
                (dgs.pinv_sqrt * af.pinv_sqrt * residual_target * df.pinv_sqrt * dgp.pinv_sqrt) *
                dgp.range_proj;
  out.gamma_r_norm = op_norm(out.gamma_r);
  out.reconstruction_residual =
      (af.sqrt * dgs.sqrt * out.gamma_r * dgp.sqrt * df.sqrt +
       af.sqrt * g1 * g2 * df.sqrt - r).norm();

  const double scale = combined_scale({&a, &b, &r, &c, &bp, &d});
  out.positive = out.gamma_r_norm <= 1.0 + cfg.contraction_tol &&
                 out.reconstruction_residual <= cfg.psd_tol * scale;
  if (out.positive != out.oracle.positive())
    fail_consistency("factor_3x3: factorization and PSD oracle disagree");
  return out;
}

Z3Report z3_criterion(const CMatrix& t0, const CMatrix& t1, const ToleranceConfig& cfg,
                      bool strict) {
  cfg.validate();
  require_hermitian(t0, cfg, "z3_criterion (T0)");
  if (t1.rows() != t1.cols() || t0.rows() != t1.rows())
    fail_validation("z3_criterion: dimension mismatch");
  const int d = static_cast<int>(t0.rows());

  Z3Report out;
  OperatorFunction f;
  f.group = make_cyclic(3);
  f.dim = d;
  f.values = {t0, t1, t1.adjoint()};  // symmetry T(2) = T(1)* imposed
  out.oracle = is_positive_definite(f, cfg);

  out.factorization = factor_3x3(t0, t1, t1.adjoint(), t0, t1, t0, cfg);
  out.positive = out.factorization.positive;
  if (out.positive != out.oracle.positive())
    fail_consistency("z3_criterion: factorization and oracle disagree");

  out.t0_is_identity =
      (t0 - CMatrix::Identity(d, d)).norm() <= cfg.psd_tol * std::max(1.0, t0.norm());
  if (out.t0_is_identity && op_norm(t1) <= 1.0 + cfg.contraction_tol) {
    // Corollary route with Gamma_0 = T1: solve T1* = D_{T1*} Gamma D_{T1} + T1^2.
    out.corollary_evaluated = true;
    const CMatrix idd = CMatrix::Identity(d, d);
    const PsdSqrtFactors dt1 = psd_sqrt_factors(idd - t1.adjoint() * t1, cfg);
    const PsdSqrtFactors dt1s = psd_sqrt_factors(idd - t1 * t1.adjoint(), cfg);
    const CMatrix target = t1.adjoint() - t1 * t1;
    const CMatrix gamma =
        dt1s.range_proj * (dt1s.pinv_sqrt * target * dt1.pinv_sqrt) * dt1.range_proj;
    out.corollary_gamma_norm = op_norm(gamma);
    out.corollary_residual = (dt1s.sqrt * gamma * dt1.sqrt + t1 * t1 - t1.adjoint()).norm();
  }

  if (strict) {
    out.strict_requested = true;
    if (!out.t0_is_identity)
      fail_validation("z3_criterion: strict mode applies to T(0) = I only");
    const double t1_norm = op_norm(t1);
    if (t1_norm >= 1.0 - cfg.contraction_tol)
      fail_validation("z3_criterion: strict mode requires ||T1|| < 1 (defects singular)");
    const CMatrix d_t1 = defect(t1, cfg);
    const CMatrix d_t1_star = defect(t1.adjoint(), cfg);
    out.strict_gamma_norm =
        op_norm(d_t1_star.inverse() * (t1.adjoint() - t1 * t1) * d_t1.inverse());
  }
  return out;
}

HalfPowerResult half_power(const CMatrix& t, const ToleranceConfig& cfg) {
  cfg.validate();
  if (t.rows() != t.cols()) fail_validation("half_power: matrix must be square");
  const double norm = op_norm(t);
  if (norm > 1.0 + cfg.contraction_tol) {
    std::ostringstream os;
    os << "half_power: not a contraction, operator norm " << norm;
    fail_validation(os.str());
  }
  const Eigen::Index d = t.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix s = sqrt_psd(two_by_two(id, t, t.adjoint(), id), cfg);

  HalfPowerResult out;
  out.b = s.topRightCorner(d, d);
  out.top_left_residual = (s.topLeftCorner(d, d) - defect(out.b.adjoint(), cfg)).norm();
  out.bottom_right_residual = (s.bottomRightCorner(d, d) - defect(out.b, cfg)).norm();
  out.reconstruction_residual = (2.0 * out.b * defect(out.b, cfg) - t).norm();
  const double budget = 1e2 * cfg.psd_tol * std::max(1.0, t.norm());
  if (out.top_left_residual > budget || out.bottom_right_residual > budget ||
      out.reconstruction_residual > budget)
    fail_consistency("half_power: square-root block identities failed verification");
  return out;
}

Z4Report z4_criterion(const CMatrix& t1, const CMatrix& t2, const ToleranceConfig& cfg) {
  cfg.validate();
  require_hermitian(t2, cfg, "z4_criterion (T2)");
  if (t1.rows() != t1.cols() || t1.rows() != t2.rows())
    fail_validation("z4_criterion: dimension mismatch");
  const int d = static_cast<int>(t1.rows());
  const CMatrix id = CMatrix::Identity(d, d);

  Z4Report out;
  OperatorFunction f;
  f.group = make_cyclic(4);
  f.dim = d;
  f.values = {id, t1, t2, t1.adjoint()};
  out.oracle = is_positive_definite(f, cfg);

  out.t1_norm = op_norm(t1);
  out.t1_contraction = out.t1_norm <= 1.0 + cfg.contraction_tol;
  out.i_plus_t2 = psd_check(id + t2, cfg);
  out.i_minus_t2 = psd_check(id - t2, cfg);

  bool plus_ok = false, minus_ok = false;
  if (out.i_plus_t2.positive()) {
    out.gamma_plus = gamma_factor(id + t2, t1 + t1.adjoint(), id + t2, cfg);
    plus_ok = out.gamma_plus.factorization_ok;
  }
  if (out.i_minus_t2.positive()) {
    // Skew-hermitian target; same pseudoinverse conjugation, contraction
    // bound checked on the result.
    const PsdSqrtFactors sm = psd_sqrt_factors(id - t2, cfg);
    const CMatrix target = t1 - t1.adjoint();
    const CMatrix gm = sm.range_proj * (sm.pinv_sqrt * target * sm.pinv_sqrt) * sm.range_proj;
    out.gamma_minus_norm = op_norm(gm);
    out.gamma_minus_residual = (sm.sqrt * gm * sm.sqrt - target).norm();
    const double scale = combined_scale({&t1, &t2});
    out.gamma_minus_ok = out.gamma_minus_norm <= 1.0 + cfg.contraction_tol &&
                         out.gamma_minus_residual <= cfg.psd_tol * scale;
    minus_ok = out.gamma_minus_ok;
  }

  out.positive = out.t1_contraction && out.i_plus_t2.positive() && out.i_minus_t2.positive() &&
                 plus_ok && minus_ok;
  if (out.positive != out.oracle.positive())
    fail_consistency("z4_criterion: condition (4) and the PSD oracle disagree");

  // Condition (3): recover a self-adjoint Gamma from the flat and report the
  // equation residuals; no canonicity is claimed for the candidate.
  if (out.t1_contraction) {
    out.condition3_evaluated = true;
    const HalfPowerResult hp = half_power(t1, cfg);
    const CMatrix& s = hp.b;  // (T1)_{1/2}
    const CMatrix a_half =
        two_by_two(defect(s.adjoint(), cfg), s, s.adjoint(), defect(s, cfg));
    const CMatrix big_b = two_by_two(t2, t1.adjoint(), t1, t2);
    const PsdSqrtFactors a4 = psd_sqrt_factors(two_by_two(id, t1, t1.adjoint(), id), cfg);
    const CMatrix gamma =
        a4.range_proj * (a4.pinv_sqrt * big_b * a4.pinv_sqrt) * a4.range_proj;
    out.condition3_gamma = gamma;
    out.condition3_gamma_norm = op_norm(gamma);
    out.condition3_self_adjoint_defect = (gamma - gamma.adjoint()).norm();
    const CMatrix m = a_half * gamma * a_half;
    out.eq1_residual = std::max((m.topLeftCorner(d, d) - t2).norm(),
                                (m.bottomRightCorner(d, d) - t2).norm());
    out.eq2_residual = (m.bottomLeftCorner(d, d) - t1).norm();
  }
  return out;
}

KleinReport klein_criterion(const CMatrix& t1, const CMatrix& t2, const CMatrix& t3,
                            const ToleranceConfig& cfg) {
  cfg.validate();
  require_hermitian(t1, cfg, "klein_criterion (T1)");
  require_hermitian(t2, cfg, "klein_criterion (T2)");
  require_hermitian(t3, cfg, "klein_criterion (T3)");
  if (t1.rows() != t2.rows() || t1.rows() != t3.rows())
    fail_validation("klein_criterion: dimension mismatch");
  const int d = static_cast<int>(t1.rows());
  const CMatrix id = CMatrix::Identity(d, d);

  KleinReport out;
  OperatorFunction f;
  f.group = make_product(make_cyclic(2), make_cyclic(2));
  f.dim = d;
  f.values = {id, t1, t2, t3};  // a = (0,1), b = (1,0), ab = (1,1)
  out.oracle = is_positive_definite(f, cfg);

  out.t1_contraction = op_norm(t1) <= 1.0 + cfg.contraction_tol;
  out.i_plus_t2 = psd_check(id + t2, cfg);
  out.i_minus_t2 = psd_check(id - t2, cfg);

  bool plus_ok = false, minus_ok = false;
  if (out.i_plus_t2.positive()) {
    out.gamma_plus = gamma_factor(id + t2, t1 + t3, id + t2, cfg);
    plus_ok = out.gamma_plus.factorization_ok;
  }
  if (out.i_minus_t2.positive()) {
    out.gamma_minus = gamma_factor(id - t2, t1 - t3, id - t2, cfg);
    minus_ok = out.gamma_minus.factorization_ok;
  }
  out.positive = out.t1_contraction && out.i_plus_t2.positive() && out.i_minus_t2.positive() &&
                 plus_ok && minus_ok;
  if (out.positive != out.oracle.positive())
    fail_consistency("klein_criterion: condition (3) and the PSD oracle disagree");
  return out;
}

ZTruncationReport z_truncation(const CMatrix& p, int level, const ToleranceConfig& cfg,
                               int level_cap) {
  cfg.validate();
  if (p.rows() != p.cols()) fail_validation("z_truncation: matrix must be square");
  if (level < 1) fail_validation("z_truncation: level must be at least 1");
  if (level > level_cap) {
    std::ostringstream os;
    os << "z_truncation: level " << level << " exceeds the cap " << level_cap;
    fail_validation(os.str());
  }
  const int d = static_cast<int>(p.rows());
  const int blocks = level + 1;

  std::vector<CMatrix> powers(blocks);
  powers[0] = CMatrix::Identity(d, d);
  for (int k = 1; k < blocks; ++k) powers[k] = powers[k - 1] * p;

  BlockGrid grid(blocks, std::vector<CMatrix>(blocks));
  for (int i = 0; i < blocks; ++i)
    for (int j = 0; j < blocks; ++j)
      grid[i][j] = (j >= i) ? powers[j - i] : CMatrix(powers[i - j].adjoint());
  const CMatrix flat = block_assemble(grid);

  ZTruncationReport out;
  out.level = level;
  out.p_norm = op_norm(p);
  out.psd = psd_check(flat, cfg);

  // Constructive identity Delta = (I-Q)^{-1} + (I-Q*)^{-1} - I with the
  // nilpotent lower shift carrying P* blocks.
  CMatrix q = CMatrix::Zero(flat.rows(), flat.cols());
  for (int i = 0; i + 1 < blocks; ++i)
    q.block(static_cast<Eigen::Index>(i + 1) * d, static_cast<Eigen::Index>(i) * d, d, d) =
        p.adjoint();
  const CMatrix eye = CMatrix::Identity(flat.rows(), flat.cols());
  const CMatrix resolvent = (eye - q).inverse() + (eye - q.adjoint()).inverse() - eye;
  out.resolvent_identity_residual = (flat - resolvent).norm();
  if (out.resolvent_identity_residual > 1e2 * cfg.psd_tol * std::max(1.0, flat.norm()))
    fail_consistency("z_truncation: resolvent identity failed verification");
  return out;
}

namespace {

// The two-variable map for commuting (T1, T2).
CMatrix dc_map(const CMatrix& t1, const CMatrix& t2, int m, int n) {
  auto pw = [](const CMatrix& x, int k) { return matrix_power(x, k); };
  if (m >= 0 && n >= 0) return pw(t1, m) * pw(t2, n);
  if (m < 0 && n > 0) return pw(t1.adjoint(), -m) * pw(t2, n);
  if (m > 0 && n < 0) return pw(t2.adjoint(), -n) * pw(t1, m);
  return pw(t1.adjoint(), -m) * pw(t2.adjoint(), -n);
}

}  // namespace

ZZTruncationReport zz_truncation(const CMatrix& t1, const CMatrix& t2, int level,
                                 const ToleranceConfig& cfg, int level_cap) {
  cfg.validate();
  if (t1.rows() != t1.cols() || t2.rows() != t2.cols() || t1.rows() != t2.rows())
    fail_validation("zz_truncation: matrices must be square and equally sized");
  if (level < 1) fail_validation("zz_truncation: level must be at least 1");
  if (level > level_cap) {
    std::ostringstream os;
    os << "zz_truncation: level " << level << " exceeds the cap " << level_cap;
    fail_validation(os.str());
  }
  const int d = static_cast<int>(t1.rows());

  ZZTruncationReport out;
  out.level = level;
  out.commutator_norm = (t1 * t2 - t2 * t1).norm();
  const double pair_scale = std::max(1.0, t1.norm() * t2.norm());
  if (out.commutator_norm > cfg.psd_tol * pair_scale) {
    std::ostringstream os;
    os << "zz_truncation: T1 and T2 do not commute (||[T1,T2]|| = " << out.commutator_norm << ")";
    fail_validation(os.str());
  }

  const int side = level + 1;           // indices 0..level in each variable
  const int blocks = side * side;       // lexicographic pairs
  BlockGrid grid(blocks, std::vector<CMatrix>(blocks));
  for (int i1 = 0; i1 < side; ++i1)
    for (int j1 = 0; j1 < side; ++j1)
      for (int i2 = 0; i2 < side; ++i2)
        for (int j2 = 0; j2 < side; ++j2)
          grid[i1 * side + j1][i2 * side + j2] = dc_map(t1, t2, i2 - i1, j2 - j1);
  const CMatrix flat = block_assemble(grid);
  out.psd = psd_check(flat, cfg);

  // Row structure A_{1j} = A_{11} Lambda^{j-1} with Lambda = I (x) T1.
  const Eigen::Index inner = static_cast<Eigen::Index>(side) * d;
  const CMatrix a11 = flat.topLeftCorner(inner, inner);
  CMatrix lambda = CMatrix::Zero(inner, inner);
  for (int i = 0; i < side; ++i)
    lambda.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(i) * d, d, d) = t1;
  CMatrix lambda_power = CMatrix::Identity(inner, inner);
  for (int j = 0; j < side; ++j) {
    const CMatrix a1j = flat.block(0, static_cast<Eigen::Index>(j) * inner, inner, inner);
    out.row_structure_residual =
        std::max(out.row_structure_residual, (a1j - a11 * lambda_power).norm());
    lambda_power = lambda_power * lambda;
  }
  if (out.row_structure_residual > 1e2 * cfg.psd_tol * std::max(1.0, flat.norm()))
    fail_consistency("zz_truncation: row structure identity failed verification");
  return out;
}

DoublyCommutingReport doubly_commuting_check(const CMatrix& t1, const CMatrix& t2,
                                             const ToleranceConfig& cfg) {
  cfg.validate();
  if (t1.rows() != t1.cols() || t2.rows() != t2.cols() || t1.rows() != t2.rows())
    fail_validation("doubly_commuting_check: matrices must be square and equally sized");
  DoublyCommutingReport out;
  out.commutator_norm = (t1 * t2 - t2 * t1).norm();
  out.star_commutator_norm = (t1.adjoint() * t2 - t2 * t1.adjoint()).norm();
  const double scale = std::max(1.0, t1.norm() * t2.norm());
  out.commuting = out.commutator_norm <= cfg.psd_tol * scale;
  out.doubly_commuting = out.commuting && out.star_commutator_norm <= cfg.psd_tol * scale;
  return out;
}

BrehmerReport brehmer_check(const CMatrix& t1, const CMatrix& t2, const ToleranceConfig& cfg,
                            std::uint64_t seed) {
  cfg.validate();
  if (t1.rows() != t1.cols() || t2.rows() != t2.cols() || t1.rows() != t2.rows())
    fail_validation("brehmer_check: matrices must be square and equally sized");
  const double pair_scale = std::max(1.0, t1.norm() * t2.norm());
  const double comm = (t1 * t2 - t2 * t1).norm();
  if (comm > cfg.psd_tol * pair_scale) {
    std::ostringstream os;
    os << "brehmer_check: T1 and T2 do not commute (||[T1,T2]|| = " << comm << ")";
    fail_validation(os.str());
  }
  const int d = static_cast<int>(t1.rows());
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix t12 = t1 * t2;

  BrehmerReport out;
  out.brehmer_operator = id - t1.adjoint() * t1 - t2.adjoint() * t2 + t12.adjoint() * t12;
  out.psd = psd_check(out.brehmer_operator, cfg);
  out.t1_contraction = op_norm(t1) <= 1.0 + cfg.contraction_tol;
  out.t2_contraction = op_norm(t2) <= 1.0 + cfg.contraction_tol;
  out.passes = out.psd.positive() && out.t1_contraction && out.t2_contraction;

  // <Delta_2 x, x> = <(I - T1*T1 - T2*T2 + (T1T2)*T1T2) h, h> for
  // x = (T1T2h, -T1h, -T2h, h) in the lexicographic slots.
  const ZZTruncationReport trunc = zz_truncation(t1, t2, 1, cfg);
  BlockGrid delta2{{id, t2, t1, t12},
                   {t2.adjoint(), id, t2.adjoint() * t1, t1},
                   {t1.adjoint(), t1.adjoint() * t2, id, t2},
                   {t12.adjoint(), t1.adjoint(), t2.adjoint(), id}};
  const CMatrix d2 = block_assemble(delta2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CVector h(d);
    for (int i = 0; i < d; ++i) h(i) = Complex(gauss(rng), gauss(rng));
    CVector x(4 * d);
    x.segment(0, d) = t12 * h;
    x.segment(d, d) = -(t1 * h);
    x.segment(2 * d, d) = -(t2 * h);
    x.segment(3 * d, d) = h;
    const double lhs = std::real(x.dot(d2 * x));  // x.dot conjugates x
    const double rhs = std::real(h.dot(out.brehmer_operator * h));
    out.quadratic_identity_residual =
        std::max(out.quadratic_identity_residual, std::abs(lhs - rhs));
  }
  (void)trunc;  // built for its own structural verification
  return out;
}

CounterexampleDet counterexample_det(int n) {
  if (n < 3) fail_validation("counterexample_det: defined for n >= 3 (n = 2 is -11 directly)");
  if (n > 26) fail_validation("counterexample_det: n too large for exact double evaluation");
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  a[1] = 1.0;
  a[2] = 2.0;
  for (int k = 3; k <= n; ++k) a[k] = a[k - 1] + a[k - 2];

  CounterexampleDet out;
  out.n = n;
  out.fibonacci_a_n = a[n];
  out.value = (std::pow(4.0, n) - a[n] * a[n]) * (1.0 - a[n - 2] * a[n - 2]) -
              a[n - 1] * a[n - 1] *
                  (std::pow(2.0, n + 1) + 2.0 * a[n] * a[n - 2] - a[n - 1] * a[n - 1]);

  CMatrix t0(2, 2), t1(2, 2);
  t0 << 2, 0, 0, 1;
  t1 << -1, -1, -1, 0;
  const CMatrix t0n = matrix_power(t0, n);
  const CMatrix t1n = matrix_power(t1, n);
  out.numeric_value = std::real(two_by_two(t0n, t1n, t1n, t0n).determinant());
  if (std::abs(out.value - out.numeric_value) > 1e-6 * std::max(1.0, std::abs(out.value)))
    fail_consistency("counterexample_det: closed form and numeric determinant disagree");
  return out;
}

}  // namespace opdf
