#include "reps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace opdf {

void validate_rep_shape(const UnitaryRep& rep) {
  if (rep.group.order <= 0) fail_validation("unitary rep: missing group");
  if (rep.dim <= 0) fail_validation("unitary rep: dimension must be positive");
  if (static_cast<int>(rep.U.size()) != rep.group.order)
    fail_validation("unitary rep: one matrix per group element required");
  for (const auto& m : rep.U) {
    if (m.rows() != rep.dim || m.cols() != rep.dim)
      fail_validation("unitary rep: matrix dimensions must all equal dim");
    if (!all_finite(m)) fail_validation("unitary rep: non-finite entries");
  }
}

RepReport verify_rep(const UnitaryRep& rep, const ToleranceConfig& cfg) {
  cfg.validate();
  validate_rep_shape(rep);
  const CMatrix id = CMatrix::Identity(rep.dim, rep.dim);
  RepReport report;
  for (const auto& u : rep.U)
    report.unitarity_defect = std::max(report.unitarity_defect, (u.adjoint() * u - id).norm());
  report.identity_defect = (rep.at(rep.group.identity) - id).norm();
  for (int s = 0; s < rep.group.order; ++s)
    for (int t = 0; t < rep.group.order; ++t) {
      const double dev = (rep.at(rep.group.op(s, t)) - rep.at(s) * rep.at(t)).norm();
      if (dev > report.homomorphism_defect) {
        report.homomorphism_defect = dev;
        report.witness = std::make_pair(s, t);
      }
    }
  const double tol = cfg.psd_tol * std::max(1.0, static_cast<double>(rep.dim));
  report.valid = report.unitarity_defect <= tol && report.identity_defect <= tol &&
                 report.homomorphism_defect <= tol;
  if (report.valid) report.witness.reset();
  return report;
}

RootsReport spectrum_in_roots(const UnitaryRep& rep, const ToleranceConfig& cfg) {
  cfg.validate();
  validate_rep_shape(rep);
  const int m = rep.group.order;
  RootsReport report;
  for (const auto& u : rep.U) {
    Eigen::ComplexEigenSolver<CMatrix> es(u);
    if (es.info() != Eigen::Success) fail_consistency("spectrum_in_roots: eigensolver failed");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Complex z = es.eigenvalues()(i);
      double best = 2.0;
      for (int k = 0; k < m; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / m;
        best = std::min(best, std::abs(z - Complex(std::cos(angle), std::sin(angle))));
      }
      report.worst_distance = std::max(report.worst_distance, best);
    }
  }
  report.all_in_roots = report.worst_distance <= cfg.cluster_tol;
  return report;
}

CommutativityReport is_commutative(const UnitaryRep& rep, const ToleranceConfig& cfg) {
  cfg.validate();
  validate_rep_shape(rep);
  CommutativityReport report;
  for (int s = 0; s < rep.group.order; ++s)
    for (int t = s + 1; t < rep.group.order; ++t)
      report.worst_commutator = std::max(
          report.worst_commutator, (rep.at(s) * rep.at(t) - rep.at(t) * rep.at(s)).norm());
  const CMatrix id = CMatrix::Identity(rep.dim, rep.dim);
  for (int g : commutator_subgroup(rep.group))
    report.worst_on_subgroup = std::max(report.worst_on_subgroup, (rep.at(g) - id).norm());
  const double tol = cfg.psd_tol * std::max(1.0, static_cast<double>(rep.dim));
  report.pairwise_route = report.worst_commutator <= 2.0 * tol;
  report.subgroup_route = report.worst_on_subgroup <= 2.0 * tol;
  if (report.pairwise_route != report.subgroup_route)
    fail_consistency("is_commutative: pairwise and commutator-subgroup routes disagree");
  report.commutative = report.pairwise_route;
  return report;
}

namespace {

int snap_to_root(Complex z, int m, double tol, double* distance) {
  double angle = std::arg(z);
  if (angle < 0) angle += 2.0 * std::numbers::pi;
  int k = static_cast<int>(std::lround(angle * m / (2.0 * std::numbers::pi))) % m;
  if (k < 0) k += m;
  const double a = 2.0 * std::numbers::pi * k / m;
  const double dist = std::abs(z - Complex(std::cos(a), std::sin(a)));
  if (distance) *distance = dist;
  if (dist > tol) {
    std::ostringstream os;
    os << "structure_decompose: eigenvalue " << z.real() << "+" << z.imag()
       << "i is not within tolerance of a root of unity (distance " << dist << ")";
    fail_validation(os.str());
  }
  return k;
}

Complex root_of_unity(int k, int m) {
  const double a = 2.0 * std::numbers::pi * k / m;
  return Complex(std::cos(a), std::sin(a));
}

}  // namespace

StructureDecomposition structure_decompose(const UnitaryRep& rep, const ToleranceConfig& cfg,
                                           std::uint64_t seed) {
  cfg.validate();
  const RepReport rr = verify_rep(rep, cfg);
  if (!rr.valid) fail_validation("structure_decompose: input is not a unitary representation");
  if (!is_commutative(rep, cfg).commutative)
    fail_validation("structure_decompose: representation is not commutative");

  const int m = rep.group.order;
  const int d = rep.dim;
  const JointDiagonalization jd = joint_diagonalize(rep.U, cfg, seed);

  // Column j carries the joint eigenvalue vector s -> eig_s(j); cluster
  // columns whose vectors agree within cluster_tol (merging on ties keeps
  // the resolution of identity intact).
  std::vector<std::vector<int>> clusters;
  for (int j = 0; j < d; ++j) {
    bool placed = false;
    for (auto& cluster : clusters) {
      double dist = 0.0;
      for (int s = 0; s < m; ++s)
        dist = std::max(dist, std::abs(jd.eigenvalues[s](j) - jd.eigenvalues[s](cluster.front())));
      if (dist <= cfg.cluster_tol) {
        cluster.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({j});
  }

  StructureDecomposition out;
  out.group = rep.group;
  out.dim = d;
  out.k = static_cast<int>(clusters.size());
  out.projections.reserve(clusters.size());
  out.lambda.assign(clusters.size(), std::vector<Complex>(m));
  out.root_index.assign(clusters.size(), std::vector<int>(m));

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    CMatrix cols(d, static_cast<Eigen::Index>(clusters[i].size()));
    for (std::size_t c = 0; c < clusters[i].size(); ++c) cols.col(c) = jd.basis.col(clusters[i][c]);
    out.projections.push_back(cols * cols.adjoint());
    for (int s = 0; s < m; ++s) {
      Complex mean = 0.0;
      for (int j : clusters[i]) mean += jd.eigenvalues[s](j);
      mean /= static_cast<double>(clusters[i].size());
      const int k = snap_to_root(mean, m, cfg.cluster_tol, nullptr);
      out.root_index[i][s] = k;
      out.lambda[i][s] = root_of_unity(k, m);
    }
  }

  // Snapped characters must be exact homomorphisms on the root indices.
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t)
        if (out.root_index[i][rep.group.op(s, t)] !=
            (out.root_index[i][s] + out.root_index[i][t]) % m)
          fail_consistency("structure_decompose: snapped character is not a homomorphism");

  // Resolution of identity and reconstruction.
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& p : out.projections) sum += p;
  if ((sum - CMatrix::Identity(d, d)).norm() > cfg.cluster_tol * d)
    fail_consistency("structure_decompose: projections do not sum to the identity");
  for (int s = 0; s < m; ++s) {
    CMatrix u = CMatrix::Zero(d, d);
    for (int i = 0; i < out.k; ++i) u += out.lambda[i][s] * out.projections[i];
    if ((u - rep.at(s)).norm() > cfg.cluster_tol * std::max(1.0, static_cast<double>(d)))
      fail_consistency("structure_decompose: reconstruction mismatch");
  }

  // sigma(U(s)) must equal {lambda_i(s)} as sets.
  for (int s = 0; s < m; ++s) {
    Eigen::ComplexEigenSolver<CMatrix> es(rep.at(s));
    for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
      double best = 2.0;
      for (int i = 0; i < out.k; ++i)
        best = std::min(best, std::abs(es.eigenvalues()(e) - out.lambda[i][s]));
      if (best > cfg.cluster_tol)
        fail_consistency("structure_decompose: spectrum does not match the character values");
    }
  }
  return out;
}

UnitaryRep reconstruct(const StructureDecomposition& s, const ToleranceConfig& cfg) {
  cfg.validate();
  if (s.k <= 0 || static_cast<int>(s.projections.size()) != s.k)
    fail_validation("reconstruct: malformed decomposition");
  const int d = s.dim;
  const double tol = cfg.cluster_tol * std::max(1.0, static_cast<double>(d));
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& p : s.projections) {
    if ((p - p.adjoint()).norm() > tol) fail_validation("reconstruct: projection not hermitian");
    if ((p * p - p).norm() > tol) fail_validation("reconstruct: projection not idempotent");
    sum += p;
  }
  for (std::size_t i = 0; i < s.projections.size(); ++i)
    for (std::size_t j = i + 1; j < s.projections.size(); ++j)
      if ((s.projections[i] * s.projections[j]).norm() > tol)
        fail_validation("reconstruct: projections are not mutually orthogonal");
  if ((sum - CMatrix::Identity(d, d)).norm() > tol)
    fail_validation("reconstruct: projections do not resolve the identity");
  for (const auto& row : s.lambda)
    for (const Complex& z : row)
      if (std::abs(std::abs(z) - 1.0) > tol) fail_validation("reconstruct: character not unimodular");

  UnitaryRep rep;
  rep.group = s.group;
  rep.dim = d;
  rep.U.reserve(s.group.order);
  for (int e = 0; e < s.group.order; ++e) {
    CMatrix u = CMatrix::Zero(d, d);
    for (int i = 0; i < s.k; ++i) u += s.lambda[i][e] * s.projections[i];
    rep.U.push_back(std::move(u));
  }
  const RepReport rr = verify_rep(rep, cfg);
  if (!rr.valid) fail_consistency("reconstruct: assembled map is not a unitary representation");
  return rep;
}

UnitaryRep power_rep(const UnitaryRep& rep, int n) {
  validate_rep_shape(rep);
  if (n < 1) fail_validation("power_rep: n must be at least 1");
  UnitaryRep out;
  out.group = rep.group;
  out.dim = rep.dim;
  out.U.reserve(rep.U.size());
  for (const auto& u : rep.U) {
    CMatrix p = CMatrix::Identity(rep.dim, rep.dim);
    for (int k = 0; k < n; ++k) p = p * u;
    out.U.push_back(std::move(p));
  }
  return out;
}

PowerRepReport power_rep_check(const UnitaryRep& rep, int n, const ToleranceConfig& cfg) {
  cfg.validate();
  const RepReport base = verify_rep(rep, cfg);
  if (!base.valid) fail_validation("power_rep_check: input is not a unitary representation");
  if (n < 1) fail_validation("power_rep_check: n must be at least 1");

  PowerRepReport report;
  const RepReport direct = verify_rep(power_rep(rep, n), cfg);
  report.direct_route = direct.valid;
  report.direct_defect = std::max({direct.unitarity_defect, direct.identity_defect,
                                   direct.homomorphism_defect});

  const CMatrix id = CMatrix::Identity(rep.dim, rep.dim);
  for (int g : power_subgroup(rep.group, n))
    report.worst_on_power_subgroup =
        std::max(report.worst_on_power_subgroup, (rep.at(g) - id).norm());
  report.subgroup_route =
      report.worst_on_power_subgroup <= 2.0 * cfg.psd_tol * std::max(1.0, static_cast<double>(rep.dim));

  if (report.direct_route != report.subgroup_route)
    fail_consistency("power_rep_check: direct and G_n routes disagree");
  return report;
}

namespace {

void require_unitary(const CMatrix& u, double tol, const char* who) {
  if (u.rows() != u.cols()) fail_validation(std::string(who) + ": matrix must be square");
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - id).norm() > tol)
    fail_validation(std::string(who) + ": matrix is not unitary");
}

void require_self_adjoint(const CMatrix& u, double tol, const char* who) {
  if ((u - u.adjoint()).norm() > tol)
    fail_validation(std::string(who) + ": matrix is not self-adjoint");
}

}  // namespace

UnitaryRep build_cyclic_rep(const FiniteGroup& cyclic, const CMatrix& u0,
                            const ToleranceConfig& cfg) {
  cfg.validate();
  const double tol = cfg.psd_tol * std::max<double>(1.0, u0.rows());
  require_unitary(u0, tol, "build_cyclic_rep");
  // The group must actually be cyclic with generator 1 (index arithmetic).
  if (cyclic.order > 1 && element_order(cyclic, 1) != cyclic.order)
    fail_validation("build_cyclic_rep: group is not cyclic with generator 1");
  CMatrix p = CMatrix::Identity(u0.rows(), u0.cols());
  for (int k = 0; k < cyclic.order; ++k) p = p * u0;
  if ((p - CMatrix::Identity(u0.rows(), u0.cols())).norm() > tol)
    fail_validation("build_cyclic_rep: U0^n must be the identity");

  UnitaryRep rep;
  rep.group = cyclic;
  rep.dim = static_cast<int>(u0.rows());
  rep.U.resize(cyclic.order);
  CMatrix acc = CMatrix::Identity(u0.rows(), u0.cols());
  for (int k = 0; k < cyclic.order; ++k) {
    rep.U[static_cast<std::size_t>(k)] = acc;
    acc = acc * u0;
  }
  return rep;
}

UnitaryRep build_symmetric_commutative(int n, const CMatrix& u0, const ToleranceConfig& cfg) {
  cfg.validate();
  const double tol = cfg.psd_tol * std::max<double>(1.0, u0.rows());
  require_unitary(u0, tol, "build_symmetric_commutative");
  require_self_adjoint(u0, tol, "build_symmetric_commutative");
  FiniteGroup g = make_symmetric(n);
  std::vector<char> even(g.order, 0);
  for (int idx = 0; idx < g.order; ++idx) {
    const std::vector<int> perm = perm_unrank(n, idx);
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    even[idx] = inversions % 2 == 0;
  }
  UnitaryRep rep;
  rep.dim = static_cast<int>(u0.rows());
  rep.U.resize(g.order);
  const CMatrix id = CMatrix::Identity(u0.rows(), u0.cols());
  for (int s = 0; s < g.order; ++s) rep.U[static_cast<std::size_t>(s)] = even[s] ? id : u0;
  rep.group = std::move(g);
  return rep;
}

UnitaryRep build_dihedral_commutative(int n, const CMatrix& ur, const CMatrix& us,
                                      const ToleranceConfig& cfg) {
  cfg.validate();
  if (ur.rows() != us.rows() || ur.cols() != us.cols())
    fail_validation("build_dihedral_commutative: Ur and Us dimensions differ");
  const double tol = cfg.psd_tol * std::max<double>(1.0, ur.rows());
  require_unitary(ur, tol, "build_dihedral_commutative (Ur)");
  require_unitary(us, tol, "build_dihedral_commutative (Us)");
  require_self_adjoint(ur, tol, "build_dihedral_commutative (Ur)");
  require_self_adjoint(us, tol, "build_dihedral_commutative (Us)");
  if ((ur * us - us * ur).norm() > tol)
    fail_validation("build_dihedral_commutative: Ur and Us fail to commute");
  const CMatrix id = CMatrix::Identity(ur.rows(), ur.cols());
  if (n % 2 == 1 && (ur - id).norm() > tol)
    fail_validation("build_dihedral_commutative: Ur = I is forced when n is odd");

  FiniteGroup g = make_dihedral(n);
  UnitaryRep rep;
  rep.dim = static_cast<int>(ur.rows());
  rep.U.resize(g.order);
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < n; ++k) {
      CMatrix u = id;
      if (k % 2 == 1) u = u * ur;
      if (a == 1) u = us * u;
      rep.U[static_cast<std::size_t>(a * n + k)] = u;
    }
  rep.group = std::move(g);
  return rep;
}

UnitaryRep permutation_rep(int n) {
  FiniteGroup g = make_symmetric(n);
  UnitaryRep rep;
  rep.dim = n;
  rep.U.resize(g.order);
  for (int idx = 0; idx < g.order; ++idx) {
    const std::vector<int> perm = perm_unrank(n, idx);
    CMatrix u = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) u(perm[i], i) = 1.0;
    rep.U[static_cast<std::size_t>(idx)] = u;
  }
  rep.group = std::move(g);
  return rep;
}

}  // namespace opdf
