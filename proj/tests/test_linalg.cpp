#include <doctest.h>

#include <cmath>

#include "linalg.hpp"
#include "test_helpers.hpp"

using namespace opdf;
using namespace opdf::testing;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("psd_check basics") {
  const ToleranceConfig cfg;
  const PsdReport id4 = psd_check(CMatrix::Identity(4, 4), cfg);
  CHECK(id4.verdict == PsdVerdict::Positive);
  CHECK(id4.min_eigenvalue == doctest::Approx(1.0));

  CMatrix indef = CMatrix::Zero(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  const PsdReport r = psd_check(indef, cfg);
  CHECK(r.verdict == PsdVerdict::Indefinite);
  REQUIRE(r.witness.has_value());
  const CVector& w = *r.witness;
  CHECK(std::real(w.dot(indef * w)) < -r.tolerance_used * r.scale);

  CHECK_THROWS_AS(psd_check(CMatrix::Zero(2, 3), cfg), Error);
  CMatrix nonherm(2, 2);
  nonherm << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_WITH_AS(static_cast<void>(psd_check(nonherm, cfg)),
                       doctest::Contains("not hermitian"), Error);
}

TEST_CASE("psd_check on the counterexample flat") {
  CMatrix delta(4, 4);
  delta << 2, 0, -1, -1,
           0, 1, -1, 0,
          -1, -1, 2, 0,
          -1, 0, 0, 1;
  const PsdReport r = psd_check(delta);
  CHECK(r.positive());
  CHECK(r.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(delta);
  CHECK(es.eigenvalues()(1) == doctest::Approx(2.0 - kSqrt2));
  CHECK(es.eigenvalues()(2) == doctest::Approx(2.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(2.0 + kSqrt2));
}

TEST_CASE("psd_check agrees with the principal-minor oracle") {
  std::mt19937_64 rng(11);
  const ToleranceConfig cfg;
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    CMatrix m = trial % 2 == 0 ? CMatrix(random_psd(rng, d)) : CMatrix(random_hermitian(rng, d));
    const PsdReport r = psd_check(m, cfg);
    const bool oracle = psd_by_minors(m, 1e-7);
    if (r.positive()) ++positives;
    CHECK(r.positive() == oracle);
  }
  CHECK(positives >= 100);  // every X X* instance is PSD
}

TEST_CASE("sqrt_psd") {
  const ToleranceConfig cfg;
  CHECK((sqrt_psd(CMatrix::Identity(3, 3), cfg) - CMatrix::Identity(3, 3)).norm() < 1e-12);

  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 4.0;
  diag(1, 1) = 9.0;
  const CMatrix s = sqrt_psd(diag, cfg);
  CHECK(std::abs(s(0, 0) - Complex(2.0, 0)) < 1e-12);
  CHECK(std::abs(s(1, 1) - Complex(3.0, 0)) < 1e-12);

  // [[I,T],[T*,I]] with T = 0 is the identity
  BlockGrid grid{{CMatrix::Identity(2, 2), CMatrix::Zero(2, 2)},
                 {CMatrix::Zero(2, 2), CMatrix::Identity(2, 2)}};
  CHECK((sqrt_psd(block_assemble(grid), cfg) - CMatrix::Identity(4, 4)).norm() < 1e-12);

  CMatrix indef = CMatrix::Zero(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  CHECK_THROWS_AS(static_cast<void>(sqrt_psd(indef, cfg)), Error);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 8);
    const CMatrix m = random_psd(rng, d);
    const CMatrix r = sqrt_psd(m, cfg);
    CHECK((r * r - m).norm() <= 1e-10 * std::max(1.0, m.norm()));
    CHECK(psd_check(r, cfg).positive());
  }
}

TEST_CASE("defect operators") {
  const ToleranceConfig cfg;
  CHECK((defect(CMatrix::Zero(3, 3), cfg) - CMatrix::Identity(3, 3)).norm() < 1e-12);

  std::mt19937_64 rng(17);
  const CMatrix u = random_unitary(rng, 3);
  CHECK(defect(u, cfg).norm() < 1e-7);

  CMatrix t(2, 2);
  t << 0.0, 0.5, 0.5, 0.0;
  const CMatrix d = defect(t, cfg);
  const double expected = std::sqrt(3.0) / 2.0;  // direct 2x2: I - T*T = (3/4) I
  CHECK(std::abs(d(0, 0) - Complex(expected, 0)) < 1e-12);
  CHECK(std::abs(d(1, 1) - Complex(expected, 0)) < 1e-12);
  CHECK(std::abs(d(0, 1)) < 1e-12);

  CMatrix big = 2.0 * CMatrix::Identity(2, 2);
  CHECK_THROWS_WITH_AS(static_cast<void>(defect(big, cfg)),
                       doctest::Contains("not a contraction"), Error);

  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 5);
    const CMatrix c = random_contraction(rng, dim);
    const CMatrix dc = defect(c, cfg);
    CHECK(op_norm(dc) <= 1.0 + 1e-9);
    CHECK((dc * dc - (CMatrix::Identity(dim, dim) - c.adjoint() * c)).norm() < 1e-9);
  }
}

TEST_CASE("pinv satisfies the Moore-Penrose identities") {
  const ToleranceConfig cfg;
  std::mt19937_64 rng(19);

  const CMatrix zero = CMatrix::Zero(3, 2);
  CHECK(pinv(zero, cfg).norm() == 0.0);

  // projections are their own pseudoinverse
  const CMatrix q = random_unitary(rng, 3).col(0);
  const CMatrix p = q * q.adjoint();
  CHECK((pinv(p, cfg) - p).norm() < 1e-10);

  for (int trial = 0; trial < 100; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    const CMatrix m = random_complex(rng, rows, cols);
    const CMatrix mp = pinv(m, cfg);
    const double scale = std::max(1.0, m.norm());
    CHECK((m * mp * m - m).norm() < 1e-9 * scale);
    CHECK((mp * m * mp - mp).norm() < 1e-9 * std::max(1.0, mp.norm()));
    CHECK(((m * mp).adjoint() - m * mp).norm() < 1e-9);
    CHECK(((mp * m).adjoint() - mp * m).norm() < 1e-9);
    if (rows == cols) {
      // generically invertible
      const CMatrix id = CMatrix::Identity(rows, rows);
      if (op_norm(m * mp - id) < 1e-6) CHECK((mp - m.inverse()).norm() < 1e-6 * scale);
    }
  }
}

TEST_CASE("op_norm") {
  CHECK(op_norm(CMatrix::Identity(5, 5)) == doctest::Approx(1.0));
  CMatrix t(2, 2);
  t << -1, -1, -1, 0;
  CHECK(op_norm(t) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 1.0;
  CHECK(op_norm(diag) == doctest::Approx(2.0));
}

TEST_CASE("block_assemble") {
  CMatrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << 1;
  b << 2;
  c << 3;
  d << 4;
  const CMatrix flat = block_assemble({{a, b}, {c, d}});
  CHECK(flat(0, 0) == Complex(1, 0));
  CHECK(flat(0, 1) == Complex(2, 0));
  CHECK(flat(1, 0) == Complex(3, 0));
  CHECK(flat(1, 1) == Complex(4, 0));

  const CMatrix single = block_assemble({{a}});
  CHECK(single.rows() == 1);

  CHECK_THROWS_AS(block_assemble({{a, b}, {c}}), Error);
  CHECK_THROWS_AS(block_assemble({{a, CMatrix::Zero(2, 2)}}), Error);
}

TEST_CASE("joint_diagonalize") {
  const ToleranceConfig cfg;
  std::mt19937_64 rng(23);

  SUBCASE("identity family") {
    const JointDiagonalization jd = joint_diagonalize({CMatrix::Identity(3, 3)}, cfg, 1);
    CHECK((jd.basis.adjoint() * jd.basis - CMatrix::Identity(3, 3)).norm() < 1e-10);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(jd.eigenvalues[0](i) - Complex(1, 0)) < 1e-10);
  }

  SUBCASE("commuting diagonal matrices keep a diagonal basis") {
    CMatrix d1 = CMatrix::Zero(3, 3), d2 = CMatrix::Zero(3, 3);
    d1.diagonal() << 1.0, 2.0, 3.0;
    d2.diagonal() << -1.0, 5.0, 0.5;
    const JointDiagonalization jd = joint_diagonalize({d1, d2}, cfg, 7);
    // basis must diagonalize both; columns are permuted standard vectors
    for (const auto& m : {d1, d2}) {
      const CMatrix t = jd.basis.adjoint() * m * jd.basis;
      CHECK((t - CMatrix(t.diagonal().asDiagonal())).norm() < 1e-9);
    }
  }

  SUBCASE("random commuting normal family reconstructs") {
    for (int trial = 0; trial < 50; ++trial) {
      const int d = 2 + static_cast<int>(rng() % 5);
      const CMatrix q = random_unitary(rng, d);
      std::vector<CMatrix> family;
      for (int k = 0; k < 3; ++k) {
        CMatrix diag = CMatrix::Zero(d, d);
        for (int i = 0; i < d; ++i)
          diag(i, i) = Complex(static_cast<double>(rng() % 5), static_cast<double>(rng() % 3));
        family.push_back(q * diag * q.adjoint());
      }
      const JointDiagonalization jd = joint_diagonalize(family, cfg, 1000 + trial);
      CHECK((jd.basis.adjoint() * jd.basis - CMatrix::Identity(d, d)).norm() < 1e-9);
      for (std::size_t k = 0; k < family.size(); ++k) {
        CMatrix rebuilt = jd.basis * jd.eigenvalues[k].asDiagonal() * jd.basis.adjoint();
        CHECK((rebuilt - family[k]).norm() < 1e-8 * std::max(1.0, family[k].norm()));
      }
    }
  }

  SUBCASE("two commuting self-adjoint unitaries have +-1 joint eigenvalues") {
    CMatrix ur = CMatrix::Zero(2, 2), us = CMatrix::Zero(2, 2);
    ur.diagonal() << 1.0, -1.0;
    us.diagonal() << -1.0, 1.0;
    const CMatrix q = random_unitary(rng, 2);
    const JointDiagonalization jd =
        joint_diagonalize({q * ur * q.adjoint(), q * us * q.adjoint()}, cfg, 99);
    for (const auto& eigs : jd.eigenvalues)
      for (int i = 0; i < 2; ++i)
        CHECK(std::min(std::abs(eigs(i) - Complex(1, 0)), std::abs(eigs(i) + Complex(1, 0))) <
              1e-9);
  }

  SUBCASE("non-commuting input is rejected with a witness") {
    CMatrix a(2, 2), b(2, 2);
    a << 0, 1, 1, 0;
    b << 1, 0, 0, -1;
    CHECK_THROWS_WITH_AS(static_cast<void>(joint_diagonalize({a, b}, cfg, 1)),
                         doctest::Contains("do not commute"), Error);
  }

  SUBCASE("non-normal input is rejected") {
    CMatrix j(2, 2);
    j << 0, 1, 0, 0;
    CHECK_THROWS_WITH_AS(static_cast<void>(joint_diagonalize({j}, cfg, 1)),
                         doctest::Contains("not normal"), Error);
  }
}
