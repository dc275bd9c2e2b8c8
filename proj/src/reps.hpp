#pragma once

// Unitary representations on finite groups: verification, spectra inside
// the roots of unity, commutativity via the commutator subgroup, the
// structure decomposition into spectral projections with unimodular
// characters, and the power-representation criterion through G_n.

#include <cstdint>
#include <optional>
#include <vector>

#include "group.hpp"
#include "linalg.hpp"

namespace opdf {

struct UnitaryRep {
  FiniteGroup group;
  int dim = 0;
  std::vector<CMatrix> U;  // one d x d matrix per element

  const CMatrix& at(int s) const { return U[static_cast<std::size_t>(s)]; }
};

void validate_rep_shape(const UnitaryRep& rep);

struct RepReport {
  double unitarity_defect = 0.0;    // max_s ||U(s)*U(s) - I||
  double identity_defect = 0.0;     // ||U(e) - I||
  double homomorphism_defect = 0.0; // max_{s,t} ||U(st) - U(s)U(t)||
  std::optional<std::pair<int, int>> witness;
  bool valid = false;
};

RepReport verify_rep(const UnitaryRep& rep, const ToleranceConfig& cfg = {});

struct RootsReport {
  bool all_in_roots = false;
  double worst_distance = 0.0;  // to the nearest |G|-th root of unity
};

RootsReport spectrum_in_roots(const UnitaryRep& rep, const ToleranceConfig& cfg = {});

struct CommutativityReport {
  bool commutative = false;
  double worst_commutator = 0.0;          // route (a): pairwise commutators
  double worst_on_subgroup = 0.0;         // route (b): ||U(g) - I|| on [G,G]
  bool pairwise_route = false;
  bool subgroup_route = false;
};

// Two independent routes, asserted equal.
CommutativityReport is_commutative(const UnitaryRep& rep, const ToleranceConfig& cfg = {});

struct StructureDecomposition {
  FiniteGroup group;
  int dim = 0;
  int k = 0;                                   // number of projections
  std::vector<CMatrix> projections;            // d x d, mutually orthogonal, sum to I
  std::vector<std::vector<Complex>> lambda;    // k x m snapped unimodular characters
  std::vector<std::vector<int>> root_index;    // lambda[i][s] = exp(2*pi*i*root_index/m)
};

StructureDecomposition structure_decompose(const UnitaryRep& rep, const ToleranceConfig& cfg,
                                           std::uint64_t seed);

UnitaryRep reconstruct(const StructureDecomposition& s, const ToleranceConfig& cfg = {});

struct PowerRepReport {
  bool direct_route = false;    // s -> U(s)^n passes verify_rep
  bool subgroup_route = false;  // U trivial on G_n
  double direct_defect = 0.0;
  double worst_on_power_subgroup = 0.0;
  bool is_representation() const { return direct_route; }
};

// Direct and G_n routes, asserted equal.
PowerRepReport power_rep_check(const UnitaryRep& rep, int n, const ToleranceConfig& cfg = {});

UnitaryRep power_rep(const UnitaryRep& rep, int n);  // s -> U(s)^n (no validation)

// The worked representation families.
UnitaryRep build_cyclic_rep(const FiniteGroup& cyclic, const CMatrix& u0,
                            const ToleranceConfig& cfg = {});
UnitaryRep build_symmetric_commutative(int n, const CMatrix& u0, const ToleranceConfig& cfg = {});
UnitaryRep build_dihedral_commutative(int n, const CMatrix& ur, const CMatrix& us,
                                      const ToleranceConfig& cfg = {});

// The S_n permutation representation U(sigma) e_i = e_{sigma(i)}.
UnitaryRep permutation_rep(int n);

}  // namespace opdf
