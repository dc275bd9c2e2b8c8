#include <doctest.h>

#include <algorithm>
#include <set>

#include "group.hpp"
#include "test_helpers.hpp"

using namespace opdf;

TEST_CASE("cyclic groups") {
  const FiniteGroup g1 = make_cyclic(1);
  CHECK(g1.order == 1);
  CHECK(g1.op(0, 0) == 0);

  const FiniteGroup g4 = make_cyclic(4);
  CHECK(g4.inverse(1) == 3);
  CHECK(g4.inverse(2) == 2);

  const FiniteGroup g6 = make_cyclic(6);
  // brute-force order of element 2
  int acc = 2, order = 1;
  while (acc != g6.identity) {
    acc = g6.op(acc, 2);
    ++order;
  }
  CHECK(order == 3);
  CHECK(element_order(g6, 2) == 3);

  CHECK_THROWS_AS(make_cyclic(0), Error);
}

TEST_CASE("dihedral groups satisfy the defining relations") {
  const FiniteGroup d3 = make_dihedral(3);
  CHECK(d3.order == 6);
  const int r = 1, s = 3;  // r^1 and s r^0
  CHECK(d3.op(r, s) != d3.op(s, r));  // nonabelian
  const int sr = d3.op(s, r);
  CHECK(d3.op(sr, sr) == d3.identity);            // (sr)^2 = e
  CHECK(element_power(d3, r, 3) == d3.identity);  // r^3 = e
  CHECK(d3.op(s, s) == d3.identity);              // s^2 = e

  const FiniteGroup d4 = make_dihedral(4);
  const std::vector<int> comm = commutator_subgroup(d4);
  CHECK(comm == std::vector<int>{0, 2});  // {e, r^2}

  CHECK_THROWS_AS(make_dihedral(0), Error);
}

TEST_CASE("symmetric groups") {
  const FiniteGroup s3 = make_symmetric(3);
  CHECK(s3.order == 6);
  const std::vector<int> a3 = commutator_subgroup(s3);
  CHECK(a3.size() == 3);
  // Independent parity oracle: A_3 = even permutations.
  for (int idx : a3) {
    const std::vector<int> perm = perm_unrank(3, idx);
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    CHECK(inversions % 2 == 0);
  }

  const FiniteGroup s4 = make_symmetric(4);
  CHECK(commutator_subgroup(s4).size() == 12);

  CHECK_THROWS_AS(make_symmetric(9), Error);
}

TEST_CASE("products") {
  const FiniteGroup k4 = make_product(make_cyclic(2), make_cyclic(2));
  for (int s = 1; s < k4.order; ++s) CHECK(element_order(k4, s) == 2);

  const FiniteGroup g = make_cyclic(5);
  const FiniteGroup gt = make_product(g, make_cyclic(1));
  CHECK(find_isomorphism(gt, g).has_value());

  const FiniteGroup z6 = make_product(make_cyclic(2), make_cyclic(3));
  // cyclic of order 6: some element has order 6
  bool has6 = false;
  for (int s = 0; s < z6.order; ++s) has6 = has6 || element_order(z6, s) == 6;
  CHECK(has6);
  CHECK(find_isomorphism(z6, make_cyclic(6)).has_value());
}

TEST_CASE("make_from_table validates the axioms") {
  const FiniteGroup z2 = make_from_table({{0, 1}, {1, 0}});
  CHECK(z2.identity == 0);
  CHECK(z2.inverse(1) == 1);

  CHECK_THROWS_WITH_AS(static_cast<void>(make_from_table({{0, 1}, {1, 1}})),
                       doctest::Contains("no inverse"), Error);

  // D_3 rebuilt as a raw table under a relabeling permutation.
  const FiniteGroup d3 = make_dihedral(3);
  const std::vector<int> pi{3, 5, 0, 2, 4, 1};
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) table[pi[i]][pi[j]] = pi[d3.op(i, j)];
  const FiniteGroup relabeled = make_from_table(table);
  CHECK(find_isomorphism(relabeled, d3).has_value());
}

TEST_CASE("constructed groups satisfy the axioms exhaustively") {
  for (const FiniteGroup& g :
       {make_cyclic(7), make_dihedral(5), make_symmetric(4),
        make_product(make_cyclic(3), make_cyclic(4))})
    CHECK_NOTHROW(validate_group_exhaustive(g));
}

TEST_CASE("closure") {
  const FiniteGroup s3 = make_symmetric(3);
  CHECK(closure(s3, {s3.identity}) == std::vector<int>{0});
  CHECK(closure(s3, {}) == std::vector<int>{0});

  // a 3-cycle generates a subgroup of order 3
  int three_cycle = -1;
  for (int s = 0; s < 6; ++s)
    if (element_order(s3, s) == 3) { three_cycle = s; break; }
  CHECK(closure(s3, {three_cycle}).size() == 3);

  const FiniteGroup d4 = make_dihedral(4);
  CHECK(closure(d4, {2}) == std::vector<int>{0, 2});  // <r^2>

  // idempotent and monotone
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> pick(0, d4.order - 1);
    std::vector<int> gens{pick(rng)};
    const std::vector<int> c1 = closure(d4, gens);
    CHECK(closure(d4, c1) == c1);
    gens.push_back(pick(rng));
    const std::vector<int> c2 = closure(d4, gens);
    CHECK(std::includes(c2.begin(), c2.end(), c1.begin(), c1.end()));
  }
}

TEST_CASE("commutator subgroup") {
  CHECK(commutator_subgroup(make_cyclic(8)) == std::vector<int>{0});
  CHECK(commutator_subgroup(make_symmetric(3)).size() == 3);
  const FiniteGroup d5 = make_dihedral(5);
  const std::vector<int> c = commutator_subgroup(d5);
  CHECK(c.size() == 5);  // <r> when n is odd
  for (int x : c) CHECK(x < 5);

  // abelian iff the table is symmetric iff [G,G] = {e}
  for (const FiniteGroup& g : {make_cyclic(6), make_dihedral(3), make_symmetric(4),
                               make_product(make_cyclic(2), make_cyclic(2))}) {
    const bool trivial = commutator_subgroup(g) == std::vector<int>{g.identity};
    CHECK(trivial == g.is_abelian());
  }
}

TEST_CASE("power subgroup") {
  const FiniteGroup s3 = make_symmetric(3);
  CHECK(power_subgroup(s3, 1) == std::vector<int>{s3.identity});
  CHECK(power_subgroup(s3, 2) == commutator_subgroup(s3));
  CHECK(power_subgroup(s3, 2).size() == 3);

  const FiniteGroup d4 = make_dihedral(4);
  CHECK(power_subgroup(d4, 2) == commutator_subgroup(d4));
  CHECK(power_subgroup(make_product(make_cyclic(2), make_cyclic(2)), 3) ==
        std::vector<int>{0});
}

TEST_CASE("restrict_to builds subgroup tables") {
  const FiniteGroup s3 = make_symmetric(3);
  const FiniteGroup a3 = restrict_to(s3, commutator_subgroup(s3));
  CHECK(a3.order == 3);
  CHECK_NOTHROW(validate_group_exhaustive(a3));
  CHECK(find_isomorphism(a3, make_cyclic(3)).has_value());

  CHECK_THROWS_AS(restrict_to(s3, std::vector<int>{1, 2}), Error);
}

TEST_CASE("morphisms") {
  const FiniteGroup z4 = make_cyclic(4);
  const FiniteGroup z2 = make_cyclic(2);

  GroupMorphism identity{z4, z4, {0, 1, 2, 3}};
  CHECK(validate_morphism(identity).isomorphism());

  GroupMorphism mod2{z4, z2, {0, 1, 0, 1}};
  const MorphismReport r = validate_morphism(mod2);
  CHECK(r.homomorphism);
  CHECK_FALSE(r.injective);
  CHECK(r.surjective);

  GroupMorphism broken{z4, z2, {0, 1, 1, 0}};
  const MorphismReport b = validate_morphism(broken);
  CHECK_FALSE(b.homomorphism);
  CHECK(b.witness.has_value());

  // natural Z2 x Z3 -> Z6
  const FiniteGroup prod = make_product(make_cyclic(2), make_cyclic(3));
  const auto iso = find_isomorphism(prod, make_cyclic(6));
  REQUIRE(iso.has_value());
  GroupMorphism nat{prod, make_cyclic(6), *iso};
  CHECK(validate_morphism(nat).isomorphism());
}
