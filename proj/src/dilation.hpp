#pragma once

// Constructive Naimark dilation on finite groups in its generalized form
// V*V = T(e), together with verification of the dilation identities,
// minimality, and power compatibility.
//
// The dilation space is the column space of Delta^{1/2} (rank truncated on
// rank_tol); U(t) is induced from left translation, which works because the
// (i,j) block of Delta depends only on s_i^{-1} s_j.

#include <vector>

#include "opfunction.hpp"
#include "reps.hpp"

namespace opdf {

struct DilationResiduals {
  double unitarity = 0.0;      // max_s ||U(s)*U(s) - I||
  double identity = 0.0;       // ||U(e) - I||
  double homomorphism = 0.0;   // max_{s,t} ||U(st) - U(s)U(t)||
  double vstarv = 0.0;         // ||V*V - T(e)||
  double compression = 0.0;    // max_s ||V* U(s) V - T(s)||
  double minimality_gap = 0.0; // dimK - rank of [U(s)V : s in G]
  double worst() const;
};

struct NaimarkDilation {
  int dimK = 0;
  CMatrix V;               // dimK x d
  std::vector<CMatrix> U;  // per element, dimK x dimK
  DilationResiduals residuals;
};

// Requires is_positive_definite(T); the construction is re-verified
// numerically and a construction failure raises a consistency error with
// the worst residual.
NaimarkDilation naimark_dilate(const OperatorFunction& f, const ToleranceConfig& cfg = {});

struct DilationReport {
  DilationResiduals residuals;
  bool converse_symmetric = false;
  PsdReport converse;  // positivity of s -> V* U(s) V, when symmetric
  bool valid = false;
};

// Independent re-check of every dilation invariant plus the converse
// direction.
DilationReport verify_dilation(const OperatorFunction& f, const NaimarkDilation& d,
                               const ToleranceConfig& cfg = {});

// s -> V* U(s) V for a verified unitary representation.
OperatorFunction compression(const UnitaryRep& rep, const CMatrix& v,
                             const ToleranceConfig& cfg = {});

struct PowerCompatReport {
  bool preconditions_met = false;
  std::string precondition_failure;      // empty when preconditions hold
  bool power_function_positive = false;  // T_n positive definite
  bool power_rep_valid = false;          // s -> U(s)^n a unitary representation
  bool compatible = false;
  double dilation_route_residual = 0.0;  // max_s ||V U(s)^n V - T(s)^n||  (via V*)
  double function_route_residual = 0.0;  // max_s ||T(s^n) - T(s)^n||
};

// Whether V* U(s)^n V = T(s)^n, decided along two routes that the final
// proposition proves equivalent; disagreement raises a consistency error.
PowerCompatReport power_compatibility(const OperatorFunction& f, const NaimarkDilation& d, int n,
                                      const ToleranceConfig& cfg = {});

}  // namespace opdf
