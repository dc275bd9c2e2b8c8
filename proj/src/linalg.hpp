#pragma once

// Dense complex matrix kernel: PSD certification, principal square roots,
// defect operators, pseudoinverse, operator norm, block assembly and
// simultaneous diagonalization of commuting normal families. Everything is
// a pure function of its inputs; randomness enters only through explicit
// seeds.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace opdf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Grid of equally sized blocks, row-major: blocks[i][j].
using BlockGrid = std::vector<std::vector<CMatrix>>;

struct ToleranceConfig {
  double psd_tol = 1e-9;
  double rank_tol = 1e-10;
  double cluster_tol = 1e-8;
  double contraction_tol = 1e-9;

  void validate() const;  // all must be strictly positive
};

enum class PsdVerdict {
  Positive,                          // min eigenvalue clears +psd_tol*scale
  PositiveSemidefiniteAtTolerance,   // min eigenvalue within the tolerance band
  Indefinite,
};

const char* psd_verdict_name(PsdVerdict v);

struct PsdReport {
  PsdVerdict verdict = PsdVerdict::Indefinite;
  double min_eigenvalue = 0.0;
  double tolerance_used = 0.0;  // relative; absolute threshold is tolerance_used*scale
  double scale = 1.0;           // max(1, ||M||_F)
  std::optional<CVector> witness;  // direction with negative Rayleigh quotient

  bool positive() const { return verdict != PsdVerdict::Indefinite; }
};

double frob(const CMatrix& m);
CMatrix hermitian_part(const CMatrix& m);
bool all_finite(const CMatrix& m);
CMatrix identity_like(int n);

// Verdict from the minimum eigenvalue of the Hermitian part. Throws a
// validation error for non-square input or when the Hermitian deviation
// ||M - M*||_F exceeds psd_tol*max(1, ||M||_F); that case is deliberately
// distinct from an indefinite verdict.
PsdReport psd_check(const CMatrix& m, const ToleranceConfig& cfg = {});

// Principal square root of a PSD matrix, by Hermitian eigendecomposition
// with eigenvalues inside the tolerance band clipped to zero.
CMatrix sqrt_psd(const CMatrix& m, const ToleranceConfig& cfg = {});

// Square root, its pseudoinverse and the range projector from a single
// eigendecomposition. The rank cut is taken on the eigenvalues of m
// (rank_tol * lambda_max), not on the singular values of the square root:
// inverting a computed square root directly would keep noise modes of the
// kernel and amplify them by 1/sqrt(noise).
struct PsdSqrtFactors {
  CMatrix sqrt;
  CMatrix pinv_sqrt;
  CMatrix range_proj;
  int rank = 0;
};
PsdSqrtFactors psd_sqrt_factors(const CMatrix& m, const ToleranceConfig& cfg = {});

// Defect operator D_T = (I - T*T)^{1/2} of a contraction.
CMatrix defect(const CMatrix& t, const ToleranceConfig& cfg = {});

// Moore-Penrose pseudoinverse; singular values below rank_tol*sigma_max are
// treated as exact zeros.
CMatrix pinv(const CMatrix& m, const ToleranceConfig& cfg = {});

// Largest singular value.
double op_norm(const CMatrix& m);

// Orthogonal projector onto the range of m (rank decided by rank_tol).
CMatrix range_projector(const CMatrix& m, const ToleranceConfig& cfg = {});

// Numerical rank at rank_tol*sigma_max.
int rank_of(const CMatrix& m, const ToleranceConfig& cfg = {});

// Flatten a p x q grid of uniform r x c blocks into a (p*r) x (q*c) matrix.
CMatrix block_assemble(const BlockGrid& blocks);

struct JointDiagonalization {
  CMatrix basis;                        // unitary, d x d
  std::vector<CVector> eigenvalues;     // one length-d vector per family member
};

// Simultaneous diagonalization of pairwise commuting normal matrices. A
// seeded random Hermitian combination of the family and their adjoints is
// diagonalized first; degenerate eigenvalue clusters are refined
// recursively with fresh coefficients from the same stream, so results are
// reproducible for a fixed seed.
JointDiagonalization joint_diagonalize(const std::vector<CMatrix>& family,
                                       const ToleranceConfig& cfg, std::uint64_t seed);

}  // namespace opdf
