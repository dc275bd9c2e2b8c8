#pragma once

// Operator-valued functions on finite groups: symmetry checks, Gram blocks,
// positivity certificates, pushforwards, block Hadamard products and power
// maps.

#include <vector>

#include "group.hpp"
#include "linalg.hpp"

namespace opdf {

struct OperatorFunction {
  FiniteGroup group;
  int dim = 0;
  std::vector<CMatrix> values;  // one d x d matrix per element

  const CMatrix& at(int s) const { return values[static_cast<std::size_t>(s)]; }
};

void validate_function(const OperatorFunction& f);

struct SymmetryReport {
  bool symmetric = false;
  double worst_violation = 0.0;
  int witness = -1;  // element with the worst ||T(s^-1) - T(s)*||
};

SymmetryReport check_symmetry(const OperatorFunction& f, const ToleranceConfig& cfg = {});

// Gram block Delta_T over an ordered element tuple: block (i,j) = T(s_i^{-1} s_j).
struct BlockGram {
  std::vector<int> tuple;
  BlockGrid blocks;
  CMatrix flat;
};

BlockGram gram_block(const OperatorFunction& f, const std::vector<int>& tuple);
BlockGram gram_block(const OperatorFunction& f);  // full group in native order

// Positivity of Delta_T(G). Symmetry violations are rejected before the
// eigensolve with a distinct error.
PsdReport is_positive_definite(const OperatorFunction& f, const ToleranceConfig& cfg = {});

// s -> V* T(s) V; V must have d rows, the result lives in cols(V) dimensions.
OperatorFunction conjugate_by(const OperatorFunction& f, const CMatrix& v);

// T∘phi on phi's source; phi.target must be f.group.
OperatorFunction pullback(const OperatorFunction& f, const GroupMorphism& phi);

// Blockwise composition [A_ij B_ij] of equally shaped grids.
BlockGrid hadamard_block(const BlockGrid& a, const BlockGrid& b);

// s -> T(s)^n.
OperatorFunction power_map(const OperatorFunction& f, int n);

struct PowerPdReport {
  PsdReport hadamard_route;   // psd of the n-fold block Hadamard power of Delta_T
  PsdReport direct_route;     // psd of Delta_{T_n}
  double route_deviation = 0.0;
  bool base_positive = true;  // warning flag: was T itself positive definite
  bool positive() const { return hadamard_route.positive(); }
};

// Both the Hadamard-power route and the direct power_map route, cross-checked.
PowerPdReport power_pd_check(const OperatorFunction& f, int n, const ToleranceConfig& cfg = {});

}  // namespace opdf
