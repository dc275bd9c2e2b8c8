#pragma once

// The explicit positivity criteria: 2x2 and 3x3 Gamma factorizations, the
// Z2/Z3/Z4/Z2+Z2 characterizations, the (T)_{1/2} half power, Z and Z+Z
// truncations, doubly-commuting and Brehmer checks, and the closed-form
// determinant of the counterexample family. Every criterion verdict is
// cross-checked against the direct PSD certificate of its assembled Gram
// block; a disagreement is a consistency error.

#include <cstdint>

#include "linalg.hpp"

namespace opdf {

struct GammaFactor {
  CMatrix gamma;
  double norm = 0.0;
  double reconstruction_residual = 0.0;
  bool is_contraction = false;
  bool factorization_ok = false;  // contraction + reconstruction within tolerance
  PsdReport block_psd;            // oracle on [[A,B],[B*,C]]
};

// Gamma = pinv(A^{1/2}) B pinv(C^{1/2}), projected range(C)->range(A). The
// block [[A,B],[B*,C]] is PSD iff the factorization holds with a
// contraction; both routes are computed and must agree.
GammaFactor gamma_factor(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                         const ToleranceConfig& cfg = {});

struct PmReport {
  bool holds = false;
  PsdReport a_minus_b;
  PsdReport a_plus_b;
  PsdReport block;  // oracle on [[A,B],[B,A]]
};

// +-B <= A for self-adjoint B, equivalent to [[A,B],[B,A]] >= 0.
PmReport pm_criterion(const CMatrix& a, const CMatrix& b, const ToleranceConfig& cfg = {});

struct Z2Report {
  bool positive = false;
  PsdReport oracle;          // Delta_T(Z_2)
  PsdReport t0_psd;
  bool gamma_route = false;  // T(1) = T(0)^{1/2} Gamma T(0)^{1/2} with a contraction
  GammaFactor gamma;
  bool pm_route = false;     // T(0) psd and +-T(1) <= T(0)
  bool function_route = false;
  bool t0_is_identity = false;
  double t1_norm = 0.0;      // the reduced criterion when T(0) = I
  // strict mode
  bool strict_requested = false;
  double strict_conjugated_norm = 0.0;  // ||T0^{-1/2} T1 T0^{-1/2}||
  bool strictly_positive = false;
};

Z2Report z2_criterion(const CMatrix& t0, const CMatrix& t1, const ToleranceConfig& cfg = {},
                      bool strict = false);

struct ThreeByThreeReport {
  bool positive = false;
  PsdReport oracle;        // full 3x3 block
  PsdReport corner_left;   // [[A,B],[B*,C]]
  PsdReport corner_right;  // [[C,B'],[B'*,D]]
  int failed_corner = 0;   // 1 or 2 when a corner is indefinite
  GammaFactor gamma;       // from (A,B,C)
  GammaFactor gamma_prime; // from (C,B',D)
  CMatrix gamma_r;
  double gamma_r_norm = 0.0;
  double reconstruction_residual = 0.0;
};

ThreeByThreeReport factor_3x3(const CMatrix& a, const CMatrix& b, const CMatrix& r,
                              const CMatrix& c, const CMatrix& bp, const CMatrix& d,
                              const ToleranceConfig& cfg = {});

struct Z3Report {
  bool positive = false;
  PsdReport oracle;  // Delta_T(Z_3)
  ThreeByThreeReport factorization;
  bool t0_is_identity = false;
  // When T(0) = I: Gamma solving T1* = D_{T1*} Gamma D_{T1} + T1^2.
  bool corollary_evaluated = false;
  double corollary_gamma_norm = 0.0;
  double corollary_residual = 0.0;
  // strict mode (T(0) = I, ||T1|| < 1)
  bool strict_requested = false;
  double strict_gamma_norm = 0.0;  // ||D_{T1*}^{-1}(T1* - T1^2) D_{T1}^{-1}||
};

Z3Report z3_criterion(const CMatrix& t0, const CMatrix& t1, const ToleranceConfig& cfg = {},
                      bool strict = false);

struct HalfPowerResult {
  CMatrix b;                        // (T)_{1/2}
  double top_left_residual = 0.0;   // vs D_{B*}
  double bottom_right_residual = 0.0;  // vs D_B
  double reconstruction_residual = 0.0;  // ||2 B D_B - T||
};

// The block B in the positive square root of [[I,T],[T*,I]], with T = 2 B D_B.
HalfPowerResult half_power(const CMatrix& t, const ToleranceConfig& cfg = {});

struct Z4Report {
  bool positive = false;
  PsdReport oracle;  // Delta_T(Z_4), 4x4 blocks
  bool t1_contraction = false;
  double t1_norm = 0.0;
  PsdReport i_plus_t2;
  PsdReport i_minus_t2;
  GammaFactor gamma_plus;         // T1+T1* = (I+T2)^{1/2} G+ (I+T2)^{1/2}
  double gamma_minus_norm = 0.0;  // skew-hermitian target T1-T1*
  double gamma_minus_residual = 0.0;
  bool gamma_minus_ok = false;
  // Condition (3) quantities, reported as residuals of the recovered Gamma.
  bool condition3_evaluated = false;
  CMatrix condition3_gamma;       // self-adjoint 2d x 2d candidate
  double condition3_gamma_norm = 0.0;
  double condition3_self_adjoint_defect = 0.0;
  double eq1_residual = 0.0;      // both expressions for T2
  double eq2_residual = 0.0;      // expression for T1
};

Z4Report z4_criterion(const CMatrix& t1, const CMatrix& t2, const ToleranceConfig& cfg = {});

struct KleinReport {
  bool positive = false;
  PsdReport oracle;  // Delta_T(Z_2 + Z_2)
  bool t1_contraction = false;
  PsdReport i_plus_t2;
  PsdReport i_minus_t2;
  GammaFactor gamma_plus;   // T1+T3 over (I+T2)^{1/2}
  GammaFactor gamma_minus;  // T1-T3 over (I-T2)^{1/2}
};

KleinReport klein_criterion(const CMatrix& t1, const CMatrix& t2, const CMatrix& t3,
                            const ToleranceConfig& cfg = {});

struct ZTruncationReport {
  int level = 0;
  PsdReport psd;
  double resolvent_identity_residual = 0.0;  // vs (I-Q)^{-1} + (I-Q*)^{-1} - I
  double p_norm = 0.0;
  bool positive_up_to_level() const { return psd.positive(); }
};

ZTruncationReport z_truncation(const CMatrix& p, int level, const ToleranceConfig& cfg = {},
                               int level_cap = 8);

struct ZZTruncationReport {
  int level = 0;
  PsdReport psd;
  double commutator_norm = 0.0;
  double row_structure_residual = 0.0;  // vs A_{1j} = A_{11} Lambda^{j-1}
  bool positive_up_to_level() const { return psd.positive(); }
};

ZZTruncationReport zz_truncation(const CMatrix& t1, const CMatrix& t2, int level,
                                 const ToleranceConfig& cfg = {}, int level_cap = 4);

struct DoublyCommutingReport {
  double commutator_norm = 0.0;       // ||T1 T2 - T2 T1||
  double star_commutator_norm = 0.0;  // ||T1* T2 - T2 T1*||
  bool commuting = false;
  bool doubly_commuting = false;
};

DoublyCommutingReport doubly_commuting_check(const CMatrix& t1, const CMatrix& t2,
                                             const ToleranceConfig& cfg = {});

struct BrehmerReport {
  CMatrix brehmer_operator;  // I - T1*T1 - T2*T2 + (T1T2)*(T1T2)
  PsdReport psd;
  bool t1_contraction = false;
  bool t2_contraction = false;
  double quadratic_identity_residual = 0.0;  // <Delta_2 x, x> vs <Bh, h> on random h
  bool passes = false;
};

BrehmerReport brehmer_check(const CMatrix& t1, const CMatrix& t2, const ToleranceConfig& cfg = {},
                            std::uint64_t seed = 0);

struct CounterexampleDet {
  int n = 0;
  double value = 0.0;          // closed form
  double numeric_value = 0.0;  // determinant of the assembled 4x4
  double fibonacci_a_n = 0.0;
};

// Closed-form determinant of Delta_{T_n} for the fixed counterexample
// T(0) = diag(2,1), T(1) = [[-1,-1],[-1,0]] on Z_2, cross-checked against
// the numeric determinant. Defined for n >= 3 (n = 2 is handled by the
// direct determinant, -11).
CounterexampleDet counterexample_det(int n);

}  // namespace opdf
