#pragma once

// Finite groups as explicit multiplication tables over indexed elements,
// with subgroup machinery (closures, commutator and power subgroups) and
// morphisms. Elements are canonical integer indices; labels are cosmetic.

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace opdf {

struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;     // order*order, row-major: mul[s*order + t] = s*t
  std::vector<int> inv;     // per element
  int identity = 0;
  std::vector<std::string> labels;  // empty or one per element
  bool fully_validated = true;      // false when only sampled validation ran

  int op(int s, int t) const { return mul[static_cast<std::size_t>(s) * order + t]; }
  int inverse(int s) const { return inv[static_cast<std::size_t>(s)]; }
  bool is_abelian() const;
};

FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);     // order 2n; r^k at k, s*r^k at n+k
FiniteGroup make_symmetric(int n);    // 1 <= n <= 8; lexicographic permutations
FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h);

// Validates the group axioms (exhaustively up to order 256, sampled above)
// and derives the identity and inverse table. Axiom violations name a
// witness.
FiniteGroup make_from_table(const std::vector<std::vector<int>>& table);

// Runs the full axiom check on an already-built group; used by tests.
void validate_group_exhaustive(const FiniteGroup& g);

int element_power(const FiniteGroup& g, int s, long long k);  // k may be negative
int element_order(const FiniteGroup& g, int s);

// Smallest subgroup containing gens, as a sorted index set.
std::vector<int> closure(const FiniteGroup& g, std::vector<int> gens);
std::vector<int> commutator_subgroup(const FiniteGroup& g);

// Subgroup generated by s^{-(n-1)} (ts)^{n-1} t^{-(n-1)} over all pairs.
std::vector<int> power_subgroup(const FiniteGroup& g, int n);

// Builds the subgroup table on a sorted element set closed under the group
// operation.
FiniteGroup restrict_to(const FiniteGroup& g, const std::vector<int>& elements);

struct GroupMorphism {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<int> map;  // one target index per source element
};

struct MorphismReport {
  bool homomorphism = false;
  bool injective = false;
  bool surjective = false;
  std::optional<std::pair<int, int>> witness;  // pair violating map(st) = map(s)map(t)
  bool isomorphism() const { return homomorphism && injective && surjective; }
};

MorphismReport validate_morphism(const GroupMorphism& phi);

// Brute-force isomorphism search; intended for tiny orders only.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);

// Lexicographic unrank of a permutation of {0..n-1}.
std::vector<int> perm_unrank(int n, long long index);

}  // namespace opdf
