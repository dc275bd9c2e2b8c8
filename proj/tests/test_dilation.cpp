#include <doctest.h>

#include <cmath>

#include "dilation.hpp"
#include "test_helpers.hpp"

using namespace opdf;
using namespace opdf::testing;

namespace {

OperatorFunction s3_fix_first() {
  OperatorFunction f;
  f.group = make_symmetric(3);
  f.dim = 1;
  f.values.resize(6);
  for (int s = 0; s < 6; ++s) {
    const std::vector<int> perm = perm_unrank(3, s);
    f.values[static_cast<std::size_t>(s)] = CMatrix::Constant(1, 1, perm[0] == 0 ? 1.0 : 0.0);
  }
  return f;
}

}  // namespace

TEST_CASE("dilating the constant identity on Z_2") {
  const ToleranceConfig cfg;
  OperatorFunction f;
  f.group = make_cyclic(2);
  f.dim = 2;
  f.values = {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)};
  const NaimarkDilation d = naimark_dilate(f, cfg);
  CHECK(d.dimK == 2);  // all-ones pattern (x) I has rank d
  CHECK((d.U[1] - CMatrix::Identity(2, 2)).norm() < 1e-9);
  CHECK((d.V.adjoint() * d.V - CMatrix::Identity(2, 2)).norm() < 1e-9);  // V unitary
  CHECK(d.residuals.worst() < 1e-9);
}

TEST_CASE("dilating the fix-first function on S_3 gives dimK 3") {
  const ToleranceConfig cfg;
  const OperatorFunction f = s3_fix_first();

  // independent rank oracle on the 6x6 0/1 gram
  const CMatrix flat = gram_block(f).flat;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(flat));
  int rank = 0;
  for (int i = 0; i < 6; ++i)
    if (es.eigenvalues()(i) > 1e-9) ++rank;
  CHECK(rank == 3);

  const NaimarkDilation d = naimark_dilate(f, cfg);
  CHECK(d.dimK == 3);
  CHECK(d.residuals.worst() < 1e-9);
  for (const auto& u : d.U) CHECK(u.rows() == 3);
}

TEST_CASE("the final example dilation has an isometric V") {
  const ToleranceConfig cfg;
  OperatorFunction f;
  f.group = make_cyclic(2);
  f.dim = 2;
  CMatrix t1(2, 2);
  t1 << 0, 0.5, 0.5, 0;
  f.values = {CMatrix::Identity(2, 2), t1};
  const NaimarkDilation d = naimark_dilate(f, cfg);
  CHECK((d.V.adjoint() * d.V - CMatrix::Identity(2, 2)).norm() < 1e-9);
  CHECK(d.residuals.worst() < 1e-9);
  CHECK(d.dimK == 4);  // Delta is strictly positive here, dimK = |G| d
}

TEST_CASE("the zero function dilates to a zero-dimensional space") {
  const ToleranceConfig cfg;
  OperatorFunction f;
  f.group = make_cyclic(3);
  f.dim = 2;
  f.values.assign(3, CMatrix::Zero(2, 2));
  const NaimarkDilation d = naimark_dilate(f, cfg);
  CHECK(d.dimK == 0);
  CHECK(d.residuals.worst() == 0.0);
  CHECK(verify_dilation(f, d, cfg).valid);
}

TEST_CASE("dilation requires a positive definite input") {
  const ToleranceConfig cfg;
  OperatorFunction f;
  f.group = make_cyclic(2);
  f.dim = 1;
  f.values = {CMatrix::Constant(1, 1, 1.0), CMatrix::Constant(1, 1, 2.0)};
  CHECK_THROWS_WITH_AS(static_cast<void>(naimark_dilate(f, cfg)),
                       doctest::Contains("not positive definite"), Error);
}

TEST_CASE("random dilation round trips") {
  const ToleranceConfig cfg;
  std::mt19937_64 rng(29);
  const std::vector<FiniteGroup> pool = {
      make_cyclic(2), make_cyclic(3), make_cyclic(5), make_cyclic(8),
      make_dihedral(3), make_dihedral(4), make_symmetric(3),
      make_product(make_cyclic(2), make_cyclic(2))};
  for (int trial = 0; trial < 120; ++trial) {
    const FiniteGroup& g = pool[trial % pool.size()];
    const int dim = 1 + trial % 3;
    const OperatorFunction f = random_pd_function(rng, g, dim);
    const NaimarkDilation d = naimark_dilate(f, cfg);
    CHECK(d.residuals.worst() <= 1e-7);
    CHECK(d.dimK <= g.order * dim);

    // round trip through compression
    UnitaryRep rep;
    rep.group = g;
    rep.dim = d.dimK;
    rep.U = d.U;
    const OperatorFunction back = compression(rep, d.V, cfg);
    for (int s = 0; s < g.order; ++s) CHECK((back.at(s) - f.at(s)).norm() < 1e-7);

    const DilationReport vr = verify_dilation(f, d, cfg);
    CHECK(vr.valid);
    CHECK(vr.converse.positive());
  }
}

TEST_CASE("dimK equals |G| d exactly when the gram is strictly positive") {
  const ToleranceConfig cfg;
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteGroup g = trial % 2 == 0 ? make_cyclic(3) : make_dihedral(2);
    const OperatorFunction f = random_pd_function(rng, g, 2, 2);
    const PsdReport psd = is_positive_definite(f, cfg);
    REQUIRE(psd.positive());
    const NaimarkDilation d = naimark_dilate(f, cfg);
    if (psd.verdict == PsdVerdict::Positive) CHECK(d.dimK == g.order * 2);
  }
}

TEST_CASE("verify_dilation flags perturbations") {
  const ToleranceConfig cfg;
  std::mt19937_64 rng(37);
  const OperatorFunction f = random_pd_function(rng, make_cyclic(3), 2);
  NaimarkDilation d = naimark_dilate(f, cfg);
  d.U[1](0, 0) += 1e-3;
  const DilationReport r = verify_dilation(f, d, cfg);
  CHECK_FALSE(r.valid);
  CHECK(std::max(r.residuals.unitarity, r.residuals.homomorphism) > 1e-4);
}

TEST_CASE("hand-built dilation of the fix-first function verifies") {
  const ToleranceConfig cfg;
  const OperatorFunction f = s3_fix_first();
  // permutation representation with V z = (z, 0, 0)
  UnitaryRep perm = permutation_rep(3);
  CMatrix v = CMatrix::Zero(3, 1);
  v(0, 0) = 1.0;
  const OperatorFunction compressed = compression(perm, v, cfg);
  for (int s = 0; s < 6; ++s) CHECK((compressed.at(s) - f.at(s)).norm() < 1e-12);

  NaimarkDilation d;
  d.dimK = 3;
  d.V = v;
  d.U = perm.U;
  const DilationReport r = verify_dilation(f, d, cfg);
  CHECK(r.residuals.unitarity < 1e-12);
  CHECK(r.residuals.homomorphism < 1e-12);
  CHECK(r.residuals.vstarv < 1e-12);
  CHECK(r.residuals.compression < 1e-12);
  CHECK(r.residuals.minimality_gap == 0.0);  // the orbit of e_1 spans C^3
  CHECK(r.valid);
}

TEST_CASE("compression of any unitary representation is positive definite") {
  const ToleranceConfig cfg;
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    UnitaryRep rep = random_regular_rep(rng, make_dihedral(3));
    const CMatrix v = random_complex(rng, rep.dim, 1 + trial % 3);
    CHECK(is_positive_definite(compression(rep, v, cfg), cfg).positive());
  }
}

TEST_CASE("power compatibility") {
  const ToleranceConfig cfg;

  SUBCASE("compressing with V = I is compatible for every n") {
    std::mt19937_64 rng(43);
    UnitaryRep rep = random_regular_rep(rng, make_cyclic(4));
    const OperatorFunction f = compression(rep, CMatrix::Identity(4, 4), cfg);
    NaimarkDilation d;
    d.dimK = 4;
    d.V = CMatrix::Identity(4, 4);
    d.U = rep.U;
    for (int n = 1; n <= 4; ++n) {
      const PowerCompatReport r = power_compatibility(f, d, n, cfg);
      CHECK(r.preconditions_met);
      CHECK(r.compatible);
    }
  }

  SUBCASE("the final example is incompatible at n = 2") {
    OperatorFunction f;
    f.group = make_cyclic(2);
    f.dim = 2;
    CMatrix t1(2, 2);
    t1 << 0, 0.5, 0.5, 0;
    f.values = {CMatrix::Identity(2, 2), t1};
    REQUIRE(is_positive_definite(f, cfg).positive());
    REQUIRE(is_positive_definite(power_map(f, 2), cfg).positive());

    const NaimarkDilation d = naimark_dilate(f, cfg);
    const PowerCompatReport r = power_compatibility(f, d, 2, cfg);
    CHECK(r.preconditions_met);
    CHECK_FALSE(r.compatible);
    // T(1)^2 != T(0): the exact defect is ||I - (1/4)I|| = 0.75 entrywise trace norm..
    CHECK(r.function_route_residual == doctest::Approx((f.at(0) - t1 * t1).norm()));
  }

  SUBCASE("constant identity is compatible") {
    OperatorFunction f;
    f.group = make_cyclic(3);
    f.dim = 2;
    f.values.assign(3, CMatrix::Identity(2, 2));
    const NaimarkDilation d = naimark_dilate(f, cfg);
    const PowerCompatReport r = power_compatibility(f, d, 3, cfg);
    CHECK(r.preconditions_met);
    CHECK(r.compatible);
  }
}
